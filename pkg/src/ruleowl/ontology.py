"""Ontology graph: classes, datatype properties and typed class links.

Components follow the "new categorization": concepts are classes,
properties are datatype properties of a class, and relations are links
between classes (an object property or one of the standard links
equivalentClass, subClassOf, complementOf). Instances are never created;
every named object is a class.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .diagnostics import Diagnostic, DiagnosticError, error, warning
from .rules import identifier_problem

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"


class LinkKind(enum.Enum):
    OBJECT_PROPERTY = "objectProperty"
    EQUIVALENT_CLASS = "equivalentClass"
    SUB_CLASS_OF = "subClassOf"
    COMPLEMENT_OF = "complementOf"

    @property
    def symmetric(self) -> bool:
        return self in (LinkKind.EQUIVALENT_CLASS, LinkKind.COMPLEMENT_OF)

    @property
    def rank(self) -> int:
        return _LINK_RANK[self]


_LINK_RANK = {kind: i for i, kind in enumerate(LinkKind)}


@dataclass(frozen=True, order=True)
class ClassDecl:
    id: str


@dataclass(frozen=True, order=True)
class DatatypePropertyDecl:
    id: str
    domain: str
    range: str = XSD_STRING

    @property
    def key(self) -> tuple[str, str]:
        return (self.id, self.domain)


@dataclass(frozen=True)
class LinkDecl:
    kind: LinkKind
    source: str
    target: str
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.kind is LinkKind.OBJECT_PROPERTY) != (self.name is not None):
            raise ValueError("only object-property links carry a name")
        if self.source == self.target:
            raise ValueError(f"{self.kind.value} link from {self.source!r} to itself")
        if self.kind.symmetric and self.target < self.source:
            src, tgt = self.target, self.source
            object.__setattr__(self, "source", src)
            object.__setattr__(self, "target", tgt)

    @property
    def sort_key(self) -> tuple:
        return (self.kind.rank, self.source, self.target, self.name or "")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)

    def __lt__(self, other: "LinkDecl") -> bool:
        return self.sort_key < other.sort_key


def object_property(name: str, source: str, target: str) -> LinkDecl:
    return LinkDecl(LinkKind.OBJECT_PROPERTY, source, target, name)


def equivalent_class(a: str, b: str) -> LinkDecl:
    return LinkDecl(LinkKind.EQUIVALENT_CLASS, a, b)


def sub_class_of(sub: str, sup: str) -> LinkDecl:
    return LinkDecl(LinkKind.SUB_CLASS_OF, sub, sup)


def complement_of(a: str, b: str) -> LinkDecl:
    return LinkDecl(LinkKind.COMPLEMENT_OF, a, b)


class GraphError(ValueError):
    pass


class MergeConflict(DiagnosticError):
    pass


def _conflicting_pairs(links: Iterable[LinkDecl]) -> set[tuple[str, str]]:
    eq = {l.pair for l in links if l.kind is LinkKind.EQUIVALENT_CLASS}
    comp = {l.pair for l in links if l.kind is LinkKind.COMPLEMENT_OF}
    return eq & comp


@dataclass(frozen=True)
class OntologyGraph:
    classes: frozenset[ClassDecl] = frozenset()
    datatype_properties: frozenset[DatatypePropertyDecl] = frozenset()
    links: frozenset[LinkDecl] = frozenset()

    def __post_init__(self) -> None:
        for name in ("classes", "datatype_properties", "links"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        problems = self.problems()
        if problems:
            raise GraphError("; ".join(problems))

    def problems(self) -> list[str]:
        """Invariant violations; empty for a valid graph."""
        out = []
        ids = self.class_ids
        for c in self.classes:
            p = identifier_problem(c.id)
            if p:
                out.append(f"class: {p}")
        seen: dict[tuple[str, str], DatatypePropertyDecl] = {}
        for d in self.datatype_properties:
            p = identifier_problem(d.id)
            if p:
                out.append(f"datatype property: {p}")
            if d.domain not in ids:
                out.append(f"datatype property {d.id!r} has undeclared domain {d.domain!r}")
            if not d.range:
                out.append(f"datatype property {d.id!r} has an empty range")
            if d.key in seen:
                out.append(f"datatype property {d.id!r} on {d.domain!r} declared with two ranges")
            seen[d.key] = d
        for l in self.links:
            if l.name is not None:
                p = identifier_problem(l.name)
                if p:
                    out.append(f"object property: {p}")
            for end in (l.source, l.target):
                if end not in ids:
                    out.append(f"{l.kind.value} link references undeclared class {end!r}")
        for a, b in sorted(_conflicting_pairs(self.links)):
            out.append(f"classes {a!r} and {b!r} are both equivalent and complementary")
        return out

    @property
    def class_ids(self) -> frozenset[str]:
        return frozenset(c.id for c in self.classes)

    def properties_of(self, class_id: str) -> frozenset[DatatypePropertyDecl]:
        return frozenset(d for d in self.datatype_properties if d.domain == class_id)

    def links_of_kind(self, kind: LinkKind) -> list[LinkDecl]:
        return sorted(l for l in self.links if l.kind is kind)

    def is_empty(self) -> bool:
        return not (self.classes or self.datatype_properties or self.links)

    def describe(self) -> list[str]:
        """One sorted line per declaration; used for diff reports."""
        lines = [f"class {c.id}" for c in sorted(self.classes)]
        lines += [
            f"datatypeProperty {d.id} domain={d.domain} range={d.range}"
            for d in sorted(self.datatype_properties)
        ]
        for l in sorted(self.links):
            label = f"objectProperty {l.name}" if l.name else l.kind.value
            lines.append(f"{label} {l.source} -> {l.target}")
        return lines


EMPTY = OntologyGraph()


@dataclass(frozen=True)
class FragmentDelta:
    """Graph additions produced by transforming one rule."""

    classes: frozenset[ClassDecl] = frozenset()
    datatype_properties: frozenset[DatatypePropertyDecl] = frozenset()
    links: frozenset[LinkDecl] = frozenset()
    provenance: str = field(default="", compare=False)
    line: int = field(default=1, compare=False)

    def __post_init__(self) -> None:
        for name in ("classes", "datatype_properties", "links"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def as_graph(self) -> OntologyGraph:
        return OntologyGraph(self.classes, self.datatype_properties, self.links)


def merge_delta(
    graph: OntologyGraph,
    delta: FragmentDelta,
    diagnostics: Optional[list[Diagnostic]] = None,
) -> OntologyGraph:
    """Union ``delta`` into ``graph``; identical declarations are no-ops.

    Raises MergeConflict (CONFLICT) if the union would make a class pair both
    equivalent and complementary, or give one property two ranges. A property
    id arriving with a new domain is kept under its (id, domain) identity and
    reported as a DOMAIN_CLASH warning into ``diagnostics``.
    """
    where = dict(line=delta.line, source_text=delta.provenance)
    links = graph.links | delta.links
    clash = _conflicting_pairs(links) - _conflicting_pairs(graph.links)
    if clash:
        a, b = sorted(clash)[0]
        raise MergeConflict(error(
            f"conflict: {a} and {b} would be both equivalentClass and complementOf",
            code="CONFLICT", **where,
        ))
    ranges = {d.key: d.range for d in graph.datatype_properties}
    domains: dict[str, set[str]] = {}
    for d in graph.datatype_properties:
        domains.setdefault(d.id, set()).add(d.domain)
    for d in sorted(delta.datatype_properties - graph.datatype_properties):
        if d.key in ranges and ranges[d.key] != d.range:
            raise MergeConflict(error(
                f"conflict: property {d.id} on {d.domain} has range {ranges[d.key]}, not {d.range}",
                code="CONFLICT", **where,
            ))
        others = domains.get(d.id, set()) - {d.domain}
        if others and diagnostics is not None:
            diagnostics.append(warning(
                f"domain clash: property {d.id} declared on {d.domain} and {', '.join(sorted(others))}",
                code="DOMAIN_CLASH", **where,
            ))
    return OntologyGraph(
        graph.classes | delta.classes,
        graph.datatype_properties | delta.datatype_properties,
        links,
    )


def graph_isomorphic(a: OntologyGraph, b: OntologyGraph) -> bool:
    # ids are global names, so isomorphism is plain set equality
    return (
        a.classes == b.classes
        and a.datatype_properties == b.datatype_properties
        and a.links == b.links
    )
