"""OWL output (RDF/XML, Turtle), a reader for the emitted RDF/XML subset,
and a structural comparator for golden tests.

Declaration order: classes by id, datatype properties by (id, domain),
links by (kind, source, target). Class links are emitted as separate
``owl:Class rdf:about`` blocks so every element is a flat sibling.

A datatype property or object-property name that is not unique in the
document (or collides with a class id) is written with a qualified ID:
``<id>__<domain>`` for datatype properties and ``<name>__<domain>__<range>``
for object properties. Identifiers never contain ``__``, so the reader can
strip the qualifier using the declared domain/range.
"""

from __future__ import annotations

import enum
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import quoteattr

from .diagnostics import DiagnosticError, error
from .ontology import (
    XSD_STRING,
    ClassDecl,
    DatatypePropertyDecl,
    GraphError,
    LinkDecl,
    LinkKind,
    OntologyGraph,
    object_property,
)

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

PREFIXES = (("rdf", RDF), ("rdfs", RDFS), ("owl", OWL), ("xsd", XSD))
DEFAULT_BASE = "http://example.org/ontology"

_LINK_ELEMENT = {
    LinkKind.EQUIVALENT_CLASS: "owl:equivalentClass",
    LinkKind.SUB_CLASS_OF: "rdfs:subClassOf",
    LinkKind.COMPLEMENT_OF: "owl:complementOf",
}


class Format(enum.Enum):
    RDFXML = "rdfxml"
    TURTLE = "turtle"


@dataclass(frozen=True)
class SerializationConfig:
    format: Format = Format.RDFXML
    pretty: bool = True
    base: str = DEFAULT_BASE


class OntologyParseError(DiagnosticError):
    pass


# -- ID allocation -----------------------------------------------------------

def _allocate_ids(graph: OntologyGraph) -> tuple[dict, dict]:
    uses = Counter(c.id for c in graph.classes)
    uses.update(d.id for d in graph.datatype_properties)
    uses.update(l.name for l in graph.links if l.kind is LinkKind.OBJECT_PROPERTY)
    dp_ids = {
        d: d.id if uses[d.id] == 1 else f"{d.id}__{d.domain}"
        for d in graph.datatype_properties
    }
    op_ids = {
        l: l.name if uses[l.name] == 1 else f"{l.name}__{l.source}__{l.target}"
        for l in graph.links
        if l.kind is LinkKind.OBJECT_PROPERTY
    }
    return dp_ids, op_ids


def emitted_ids(graph: OntologyGraph) -> list[str]:
    """Every rdf:ID value serialize() writes for ``graph``."""
    dp_ids, op_ids = _allocate_ids(graph)
    return sorted([c.id for c in graph.classes] + list(dp_ids.values()) + list(op_ids.values()))


# -- RDF/XML -----------------------------------------------------------------

def _to_rdfxml(graph: OntologyGraph, config: SerializationConfig) -> str:
    nl, ind = ("\n", "  ") if config.pretty else ("", "")
    dp_ids, op_ids = _allocate_ids(graph)
    out = ['<?xml version="1.0" encoding="UTF-8"?>', nl]
    ns = " ".join(f'xmlns:{p}="{uri}"' for p, uri in PREFIXES)
    out.append(f"<rdf:RDF {ns} xml:base={quoteattr(config.base)}>")
    if graph.is_empty():
        out.append("</rdf:RDF>")
        return "".join(out) + "\n"
    out.append(nl)

    def ref(name: str) -> str:
        return quoteattr("#" + name)

    for c in sorted(graph.classes):
        out += [ind, f"<owl:Class rdf:ID={quoteattr(c.id)}/>", nl]
    for d in sorted(graph.datatype_properties):
        out += [
            ind, f"<owl:DatatypeProperty rdf:ID={quoteattr(dp_ids[d])}>", nl,
            ind * 2, f"<rdfs:domain rdf:resource={ref(d.domain)}/>", nl,
            ind * 2, f"<rdfs:range rdf:resource={quoteattr(d.range)}/>", nl,
            ind, "</owl:DatatypeProperty>", nl,
        ]
    for l in sorted(graph.links):
        if l.kind is LinkKind.OBJECT_PROPERTY:
            out += [
                ind, f"<owl:ObjectProperty rdf:ID={quoteattr(op_ids[l])}>", nl,
                ind * 2, f"<rdfs:domain rdf:resource={ref(l.source)}/>", nl,
                ind * 2, f"<rdfs:range rdf:resource={ref(l.target)}/>", nl,
                ind, "</owl:ObjectProperty>", nl,
            ]
        else:
            out += [
                ind, f"<owl:Class rdf:about={ref(l.source)}>", nl,
                ind * 2, f"<{_LINK_ELEMENT[l.kind]} rdf:resource={ref(l.target)}/>", nl,
                ind, "</owl:Class>", nl,
            ]
    out.append("</rdf:RDF>")
    return "".join(out) + "\n"


# -- Turtle ------------------------------------------------------------------

def _ttl_range(uri: str) -> str:
    if uri.startswith(XSD) and uri[len(XSD):].isidentifier():
        return "xsd:" + uri[len(XSD):]
    return f"<{uri}>"


def _to_turtle(graph: OntologyGraph, config: SerializationConfig) -> str:
    dp_ids, op_ids = _allocate_ids(graph)
    lines = [f"@prefix {p}: <{uri}> ." for p, uri in PREFIXES]
    lines.append(f"@prefix : <{config.base}#> .")
    lines.append("")
    sep = " ;\n    " if config.pretty else " ; "
    for c in sorted(graph.classes):
        lines.append(f":{c.id} a owl:Class .")
    for d in sorted(graph.datatype_properties):
        lines.append(sep.join([
            f":{dp_ids[d]} a owl:DatatypeProperty",
            f"rdfs:domain :{d.domain}",
            f"rdfs:range {_ttl_range(d.range)}",
        ]) + " .")
    for l in sorted(graph.links):
        if l.kind is LinkKind.OBJECT_PROPERTY:
            lines.append(sep.join([
                f":{op_ids[l]} a owl:ObjectProperty",
                f"rdfs:domain :{l.source}",
                f"rdfs:range :{l.target}",
            ]) + " .")
        else:
            lines.append(f":{l.source} {_LINK_ELEMENT[l.kind]} :{l.target} .")
    return "\n".join(lines) + "\n"


def serialize(graph: OntologyGraph, config: SerializationConfig = SerializationConfig()) -> str:
    if config.format is Format.TURTLE:
        return _to_turtle(graph, config)
    return _to_rdfxml(graph, config)


# -- reader ------------------------------------------------------------------

def _q(ns: str, local: str) -> str:
    return f"{{{ns}}}{local}"


_CLASS = _q(OWL, "Class")
_DTP = _q(OWL, "DatatypeProperty")
_OBP = _q(OWL, "ObjectProperty")
_DOMAIN = _q(RDFS, "domain")
_RANGE = _q(RDFS, "range")
_RDF_ID = _q(RDF, "ID")
_RDF_ABOUT = _q(RDF, "about")
_RDF_RESOURCE = _q(RDF, "resource")
_XML_BASE = _q(XML_NS, "base")
_CLASS_LINKS = {
    _q(OWL, "equivalentClass"): LinkKind.EQUIVALENT_CLASS,
    _q(RDFS, "subClassOf"): LinkKind.SUB_CLASS_OF,
    _q(OWL, "complementOf"): LinkKind.COMPLEMENT_OF,
}
_PREFIX_OF = {uri: p for p, uri in PREFIXES}
_DATATYPE_SHORTHAND = {"xs:string": XSD_STRING, "xsd:string": XSD_STRING}


def _pretty_tag(tag: str) -> str:
    if tag.startswith("{"):
        ns, local = tag[1:].split("}", 1)
        return f"{_PREFIX_OF[ns]}:{local}" if ns in _PREFIX_OF else local
    return tag


class _Reader:
    def __init__(self, base: str):
        self.base = base
        self.classes: set[str] = set()
        self.referenced: dict[str, str] = {}
        self.dtps: list[tuple[str, str, str]] = []
        self.links: list[LinkDecl] = []

    def fail(self, message: str) -> OntologyParseError:
        return OntologyParseError(error(message))

    def check_attrs(self, el: ET.Element, allowed: set[str]) -> None:
        for attr in el.attrib:
            if attr not in allowed:
                raise self.fail(f"unsupported attribute {_pretty_tag(attr)} on {_pretty_tag(el.tag)}")
        if el.text and el.text.strip():
            raise self.fail(f"unexpected text inside {_pretty_tag(el.tag)}")

    def local_ref(self, value: str, where: str) -> str:
        for prefix in ("#", self.base + "#"):
            if value.startswith(prefix) and len(value) > len(prefix):
                name = value[len(prefix):]
                self.referenced.setdefault(name, where)
                return name
        raise self.fail(f"reference {value!r} in {where} is not local to this ontology")

    def element(self, el: ET.Element) -> Optional[str]:
        """Handle one declaration element; returns the class id for owl:Class."""
        if el.tag == _CLASS:
            return self.owl_class(el)
        if el.tag in (_DTP, _OBP):
            self.property(el)
            return None
        raise self.fail(f"unsupported construct: {_local(el.tag)}")

    def owl_class(self, el: ET.Element) -> str:
        self.check_attrs(el, {_RDF_ID, _RDF_ABOUT})
        if _RDF_ID in el.attrib and _RDF_ABOUT in el.attrib:
            raise self.fail("owl:Class has both rdf:ID and rdf:about")
        if _RDF_ID in el.attrib:
            cid = el.attrib[_RDF_ID].lstrip("#")
            self.classes.add(cid)
        elif _RDF_ABOUT in el.attrib:
            cid = self.local_ref(el.attrib[_RDF_ABOUT], "owl:Class rdf:about")
        else:
            raise self.fail("owl:Class without rdf:ID or rdf:about")
        for child in _elements(el):
            if child.tag in (_DTP, _OBP):
                self.property(child)
                continue
            kind = _CLASS_LINKS.get(child.tag)
            if kind is None:
                raise self.fail(f"unsupported construct: {_local(child.tag)}")
            target = self.link_target(child)
            try:
                self.links.append(LinkDecl(kind, cid, target))
            except ValueError as exc:
                raise self.fail(str(exc)) from exc
        return cid

    def link_target(self, el: ET.Element) -> str:
        self.check_attrs(el, {_RDF_RESOURCE})
        nested = list(_elements(el))
        if _RDF_RESOURCE in el.attrib:
            if nested:
                raise self.fail(f"{_pretty_tag(el.tag)} has both rdf:resource and content")
            return self.local_ref(el.attrib[_RDF_RESOURCE], _pretty_tag(el.tag))
        if len(nested) != 1 or nested[0].tag != _CLASS:
            raise self.fail(f"{_pretty_tag(el.tag)} must reference exactly one class")
        return self.owl_class(nested[0])

    def property(self, el: ET.Element) -> None:
        self.check_attrs(el, {_RDF_ID})
        if _RDF_ID not in el.attrib:
            raise self.fail(f"{_pretty_tag(el.tag)} without rdf:ID")
        pid = el.attrib[_RDF_ID].lstrip("#")
        domains, ranges = [], []
        for child in _elements(el):
            if child.tag not in (_DOMAIN, _RANGE):
                raise self.fail(f"unsupported construct: {_local(child.tag)}")
            self.check_attrs(child, {_RDF_RESOURCE})
            if _RDF_RESOURCE not in child.attrib or list(_elements(child)):
                raise self.fail(f"{_pretty_tag(child.tag)} needs an rdf:resource")
            (domains if child.tag == _DOMAIN else ranges).append(child.attrib[_RDF_RESOURCE])
        if len(domains) != 1 or len(ranges) > 1:
            raise self.fail(f"property {pid} needs exactly one rdfs:domain and at most one rdfs:range")
        domain = self.local_ref(domains[0], f"domain of {pid}")
        if el.tag == _DTP:
            rng = ranges[0] if ranges else XSD_STRING
            rng = _DATATYPE_SHORTHAND.get(rng, rng)
            name = _unqualify(pid, [domain], self)
            self.dtps.append((name, domain, rng))
        else:
            if not ranges:
                raise self.fail(f"object property {pid} needs an rdfs:range")
            target = self.local_ref(ranges[0], f"range of {pid}")
            name = _unqualify(pid, [domain, target], self)
            try:
                self.links.append(object_property(name, domain, target))
            except ValueError as exc:
                raise self.fail(str(exc)) from exc

    def graph(self) -> OntologyGraph:
        for name, where in sorted(self.referenced.items()):
            if name not in self.classes:
                raise self.fail(f"dangling reference to undeclared class {name!r} in {where}")
        dtps = {}
        for name, domain, rng in self.dtps:
            if dtps.setdefault((name, domain), rng) != rng:
                raise self.fail(f"property {name} on {domain} declared with two ranges")
        try:
            return OntologyGraph(
                {ClassDecl(c) for c in self.classes},
                {DatatypePropertyDecl(n, d, r) for (n, d), r in dtps.items()},
                set(self.links),
            )
        except (GraphError, ValueError) as exc:
            raise self.fail(f"invalid ontology: {exc}") from exc


def _unqualify(pid: str, parts: list[str], reader: _Reader) -> str:
    if "__" not in pid:
        return pid
    suffix = "".join("__" + p for p in parts)
    if pid.endswith(suffix) and len(pid) > len(suffix):
        return pid[: -len(suffix)]
    raise reader.fail(f"qualified property ID {pid!r} does not match its domain/range")


def _local(tag: str) -> str:
    return tag.split("}", 1)[1] if tag.startswith("{") else tag


def _elements(el: ET.Element):
    return (c for c in el if isinstance(c.tag, str))


def parse_subset(text: str) -> OntologyGraph:
    """Read RDF/XML limited to the vocabulary :func:`serialize` emits.

    Raises OntologyParseError naming the first unsupported element or
    attribute, a dangling class reference, or malformed XML.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise OntologyParseError(error(f"malformed XML: {exc}")) from exc
    if root.tag != _q(RDF, "RDF"):
        raise OntologyParseError(error(f"root element must be rdf:RDF, not {_pretty_tag(root.tag)}"))
    reader = _Reader(root.attrib.get(_XML_BASE, DEFAULT_BASE))
    reader.check_attrs(root, {_XML_BASE})
    for el in _elements(root):
        reader.element(el)
    return reader.graph()


# -- structural comparison ---------------------------------------------------

_DECLARATIONS = {_CLASS, _DTP, _OBP}


def _canon_id(value: str, base: str) -> str:
    value = "".join(value.split())
    value = _DATATYPE_SHORTHAND.get(value, value)
    for prefix in (base + "#" if base else None, "#"):
        if prefix and value.startswith(prefix):
            return value[len(prefix):]
    return value


def _flatten(doc: str) -> frozenset:
    root = ET.fromstring(doc)
    base = root.attrib.get(_XML_BASE, "")
    fragments = list(_elements(root)) if root.tag == _q(RDF, "RDF") else [root]
    classes: dict[str, set] = {}
    others: set = set()

    def subject(el: ET.Element) -> str:
        for attr in (_RDF_ID, _RDF_ABOUT):
            if attr in el.attrib:
                return _canon_id(el.attrib[attr], base)
        return ""

    def visit(el: ET.Element) -> str:
        subj = subject(el)
        children = set()
        for child in _elements(el):
            if child.tag in _DECLARATIONS:
                visit(child)
                continue
            attrs = tuple(sorted(
                (k, _canon_id(v, base)) for k, v in child.attrib.items() if k != _RDF_RESOURCE
            ))
            if _RDF_RESOURCE in child.attrib:
                children.add((child.tag, _canon_id(child.attrib[_RDF_RESOURCE], base), attrs))
            else:
                nested = tuple(sorted(visit(g) for g in _elements(child)))
                children.add((child.tag, nested[0] if len(nested) == 1 else nested, attrs))
        if el.tag == _CLASS:
            classes.setdefault(subj, set()).update(children)
        else:
            if el.tag in (_DTP, _OBP) and "__" in subj:
                wanted = (_DOMAIN, _RANGE) if el.tag == _OBP else (_DOMAIN,)
                ends = [next((c[1] for c in children if c[0] == t), "") for t in wanted]
                suffix = "".join(f"__{e}" for e in ends)
                if all(isinstance(e, str) and e for e in ends) and subj.endswith(suffix):
                    subj = subj[: -len(suffix)]
            others.add((el.tag, subj, frozenset(children)))
        return subj

    for frag in fragments:
        visit(frag)
    # symmetric links are attached to the lexicographically smaller class
    for subj in sorted(classes):
        for child in list(classes[subj]):
            tag, target = child[0], child[1]
            if tag in (_q(OWL, "equivalentClass"), _q(OWL, "complementOf")) and isinstance(target, str) and target < subj:
                classes[subj].discard(child)
                classes.setdefault(target, set()).add((tag, subj, child[2]))
    return frozenset(others) | frozenset((_CLASS, s, frozenset(c)) for s, c in classes.items())


def structural_equal(a: str, b: str) -> bool:
    """Compare two RDF/XML documents as flattened declaration sets.

    Ignores attribute order, whitespace, prefix spelling, root attributes and
    nesting. Canonicalizes IDs (whitespace and a leading '#' removed),
    ``xs:string`` to the XSD string URI, qualified property IDs, and the
    direction of equivalentClass/complementOf. Raises ET.ParseError.
    """
    return _flatten(a) == _flatten(b)
