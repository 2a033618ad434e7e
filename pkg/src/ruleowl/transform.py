"""Rule classification and rule-to-fragment mapping.

The administrative mapping pins exactly one fragment per rule kind:

=====================  =====================================================
kind                   fragment
=====================  =====================================================
CLASS_WITH_PROPERTIES  class(conclusion); premise facts as datatype properties
EQUIVALENCE            both classes, shared datatype properties, equivalentClass
OBJECT_RELATION        both classes, objectProperty(name) premise -> target
PART_OF                both classes, subClassOf premise -> target
COMPLEMENT             both classes, complementOf
BARE_SUBSUMPTION       both classes, subClassOf premise -> conclusion
=====================  =====================================================

The evolutionary mode re-runs :func:`refine` after every merge.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .diagnostics import Diagnostic, DiagnosticError, error
from .ontology import (
    EMPTY,
    ClassDecl,
    DatatypePropertyDecl,
    FragmentDelta,
    LinkKind,
    MergeConflict,
    OntologyGraph,
    complement_of,
    equivalent_class,
    merge_delta,
    object_property,
    sub_class_of,
)
from .parser import RuleSyntaxError, normalize_notation
from .rules import (
    Equivalence,
    Fact,
    Membership,
    Relation,
    RelationKind,
    Rule,
    RuleKind,
    canonical_form,
    render,
)


class Mode(enum.Enum):
    ADMINISTRATIVE = "administrative"
    EVOLUTIONARY = "evolutionary"


@dataclass(frozen=True)
class TransformConfig:
    mode: Mode = Mode.ADMINISTRATIVE


class UnmappableRule(DiagnosticError):
    pass


def _unmappable(rule: Rule, why: str) -> UnmappableRule:
    return UnmappableRule(error(
        f"unmappable rule ({why}): {rule.source_text or render(rule, sort=False)}",
        line=rule.line, source_text=rule.source_text, code="UNMAPPABLE",
    ))


def _classify_equivalence(rule: Rule) -> RuleKind:
    eqs = [t for t in rule.premise if isinstance(t, Equivalence)]
    mems = [t for t in rule.premise if isinstance(t, Membership)]
    if len(eqs) != 1 or len(mems) != 1 or len(rule.premise) != 2:
        raise _unmappable(rule, "equivalence needs one equivalence pair and one membership group")
    eq, mem, concl = eqs[0], mems[0], rule.conclusion
    if not isinstance(concl, Membership):
        raise _unmappable(rule, "equivalence conclusion must be a membership group")
    if eq.left == eq.right:
        raise _unmappable(rule, "a class cannot be equivalent to itself")
    pair = {eq.left, eq.right}
    if mem.container not in pair:
        raise _unmappable(rule, f"premise members must belong to {eq.left} or {eq.right}")
    other = (pair - {mem.container}).pop()
    if concl.container != other:
        raise _unmappable(rule, f"conclusion members must belong to {other}")
    if set(mem.members) != set(concl.members):
        raise _unmappable(rule, "premise and conclusion member sets differ")
    return RuleKind.EQUIVALENCE


def classify(rule: Rule) -> RuleKind:
    """Return the rule's kind; raises UnmappableRule when no kind fits."""
    premise, concl = rule.premise, rule.conclusion
    if any(isinstance(t, Equivalence) for t in premise):
        return _classify_equivalence(rule)
    if not all(isinstance(t, Fact) for t in premise):
        raise _unmappable(rule, "premise mixes plain facts with other terms")
    if len(premise) >= 2:
        if isinstance(concl, Fact):
            return RuleKind.CLASS_WITH_PROPERTIES
        raise _unmappable(rule, "a multi-fact premise needs a single plain conclusion")
    subject = premise[0]
    if isinstance(concl, Fact):
        kind, target = RuleKind.BARE_SUBSUMPTION, concl
    elif isinstance(concl, Relation):
        target = concl.target
        kind = {
            RelationKind.NAMED: RuleKind.OBJECT_RELATION,
            RelationKind.PART_OF: RuleKind.PART_OF,
            RelationKind.NOT: RuleKind.COMPLEMENT,
        }.get(concl.keyword.kind)
        if kind is None:
            raise _unmappable(rule, f"unsupported relation {concl.keyword.render()}")
    else:
        raise _unmappable(rule, "a single-fact premise cannot conclude a membership group")
    if target == subject:
        raise _unmappable(rule, f"{subject} cannot be linked to itself")
    return kind


def transform(rule: Rule) -> FragmentDelta:
    """Administrative fragment for a classified rule."""
    kind = rule.kind
    if kind is RuleKind.UNCLASSIFIED:
        raise ValueError("transform needs a classified rule")
    provenance = dict(provenance=canonical_form(rule), line=rule.line)
    if kind is RuleKind.CLASS_WITH_PROPERTIES:
        owner = rule.conclusion.name
        props = {DatatypePropertyDecl(f.name, owner) for f in rule.premise}
        return FragmentDelta({ClassDecl(owner)}, props, **provenance)
    if kind is RuleKind.EQUIVALENCE:
        eq = next(t for t in rule.premise if isinstance(t, Equivalence))
        a, b = eq.left.name, eq.right.name
        members = {m.name for m in rule.conclusion.members}
        props = {DatatypePropertyDecl(m, c) for m in members for c in (a, b)}
        return FragmentDelta({ClassDecl(a), ClassDecl(b)}, props, {equivalent_class(a, b)}, **provenance)
    subject = rule.premise[0].name
    concl = rule.conclusion
    target = concl.name if isinstance(concl, Fact) else concl.target.name
    if kind is RuleKind.OBJECT_RELATION:
        link = object_property(concl.keyword.name, subject, target)
    elif kind is RuleKind.COMPLEMENT:
        link = complement_of(subject, target)
    else:  # PART_OF, BARE_SUBSUMPTION
        link = sub_class_of(subject, target)
    return FragmentDelta({ClassDecl(subject), ClassDecl(target)}, (), {link}, **provenance)


def prepare(rule: Rule) -> Rule:
    """Normalize notation and classify; raises DiagnosticError subclasses."""
    rule = normalize_notation(rule)
    return rule.with_kind(classify(rule))


# -- evolutionary refinement -------------------------------------------------

def _promote_properties(g: OntologyGraph) -> OntologyGraph:
    ids = g.class_ids
    drop = {d for d in g.datatype_properties if d.id in ids and d.id != d.domain}
    if not drop:
        return g
    links = set(g.links)
    for d in drop:
        links.add(object_property("has" + d.id, d.domain, d.id))
    return OntologyGraph(g.classes, g.datatype_properties - drop, links)


def _share_equivalent_properties(g: OntologyGraph) -> OntologyGraph:
    added = set()
    have = {d.key for d in g.datatype_properties}
    for link in g.links_of_kind(LinkKind.EQUIVALENT_CLASS):
        for src, dst in ((link.source, link.target), (link.target, link.source)):
            for d in g.properties_of(src):
                if (d.id, dst) not in have:
                    added.add(DatatypePropertyDecl(d.id, dst, d.range))
                    have.add((d.id, dst))
    if not added:
        return g
    return OntologyGraph(g.classes, g.datatype_properties | added, g.links)


def _reachable(edges: set[tuple[str, str]], start: str, goal: str) -> bool:
    stack, seen = [start], {start}
    while stack:
        node = stack.pop()
        for a, b in edges:
            if a == node and b not in seen:
                if b == goal:
                    return True
                seen.add(b)
                stack.append(b)
    return False


def _reduce_subsumption(g: OntologyGraph) -> OntologyGraph:
    subs = g.links_of_kind(LinkKind.SUB_CLASS_OF)
    edges = {l.pair for l in subs}
    removed = set()
    for link in subs:
        rest = edges - {link.pair}
        if _reachable(rest, link.source, link.target):
            edges = rest
            removed.add(link)
    if not removed:
        return g
    return OntologyGraph(g.classes, g.datatype_properties, g.links - removed)


def refine(graph: OntologyGraph) -> OntologyGraph:
    """Apply the three correction passes, in order, until nothing changes."""
    while True:
        nxt = _reduce_subsumption(_share_equivalent_properties(_promote_properties(graph)))
        if nxt == graph:
            return graph
        graph = nxt


# -- pipeline ----------------------------------------------------------------

def convert(
    rules: Iterable[Rule],
    config: TransformConfig = TransformConfig(),
    graph: OntologyGraph = EMPTY,
) -> tuple[OntologyGraph, list[Diagnostic]]:
    """normalize -> classify -> transform -> merge for each rule.

    Problem rules are skipped with a diagnostic; the batch never aborts.
    """
    diagnostics: list[Diagnostic] = []
    for rule in rules:
        try:
            delta = transform(prepare(rule))
            graph = merge_delta(graph, delta, diagnostics)
        except (RuleSyntaxError, UnmappableRule, MergeConflict) as exc:
            diagnostics.append(exc.diagnostic)
            continue
        if config.mode is Mode.EVOLUTIONARY:
            graph = refine(graph)
    return graph, diagnostics


def classify_all(rules: Sequence[Rule]) -> tuple[list[Rule], list[Diagnostic]]:
    """Classify without building a graph (the CLI ``validate`` command)."""
    ok, diagnostics = [], []
    for rule in rules:
        try:
            ok.append(prepare(rule))
        except (RuleSyntaxError, UnmappableRule) as exc:
            diagnostics.append(exc.diagnostic)
    return ok, diagnostics
