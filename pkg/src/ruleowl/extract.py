"""Recover canonical rules from a generated ontology graph.

Inverse of the administrative mapping, so that converting the extracted
rules rebuilds the same graph. subClassOf always comes back as a
``part_of`` rule: subsumption rules and part_of rules produce the same link,
and the rule-level distinction is not recoverable.
"""

from __future__ import annotations

from .ontology import LinkKind, OntologyGraph
from .rules import (
    NOT,
    PART_OF,
    Equivalence,
    Fact,
    Membership,
    Relation,
    RelationKeyword,
    Rule,
    RuleKind,
    canonical_form,
)


def _rule(premise, conclusion, kind: RuleKind) -> Rule:
    rule = Rule(tuple(premise), conclusion, kind)
    text = canonical_form(rule)
    return Rule(rule.premise, conclusion, kind, source_text=text)


def extract_rules(graph: OntologyGraph) -> list[Rule]:
    """Rules whose conversion reproduces ``graph``, sorted by canonical form."""
    out: list[Rule] = []
    covered: set[tuple[str, str]] = set()
    prop_ids = {c: sorted({d.id for d in graph.properties_of(c)}) for c in graph.class_ids}

    for link in graph.links_of_kind(LinkKind.EQUIVALENT_CLASS):
        a, b = link.source, link.target
        shared = sorted(set(prop_ids[a]) & set(prop_ids[b]))
        if not shared:
            continue  # only reachable on refined graphs; nothing expressible
        members = tuple(Fact(m) for m in shared)
        out.append(_rule(
            (Equivalence(Fact(a), Fact(b)), Membership(members, Fact(a))),
            Membership(members, Fact(b)),
            RuleKind.EQUIVALENCE,
        ))
        covered.update((m, c) for m in shared for c in (a, b))

    for cls in sorted(graph.class_ids):
        props = prop_ids[cls]
        remaining = [p for p in props if (p, cls) not in covered]
        if not remaining:
            continue
        if len(remaining) >= 2:
            premise = remaining
        elif len(props) >= 2:
            # re-stating covered properties is harmless and keeps the premise >= 2
            premise = props
        else:
            # one lone property: a doubled conjunct keeps the rule a
            # class-with-properties rule instead of a subsumption
            premise = remaining * 2
        out.append(_rule([Fact(p) for p in premise], Fact(cls), RuleKind.CLASS_WITH_PROPERTIES))

    for link in sorted(graph.links):
        subject, target = Fact(link.source), Fact(link.target)
        if link.kind is LinkKind.OBJECT_PROPERTY:
            out.append(_rule([subject], Relation(RelationKeyword.named(link.name), target), RuleKind.OBJECT_RELATION))
        elif link.kind is LinkKind.SUB_CLASS_OF:
            out.append(_rule([subject], Relation(PART_OF, target), RuleKind.PART_OF))
        elif link.kind is LinkKind.COMPLEMENT_OF:
            out.append(_rule([subject], Relation(NOT, target), RuleKind.COMPLEMENT))

    unique = {canonical_form(r): r for r in out}
    return [unique[k] for k in sorted(unique)]
