from pathlib import Path
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from ruleowl.ontology import EMPTY, ClassDecl, DatatypePropertyDecl, OntologyGraph, object_property
from ruleowl.parser import parse_line, parse_lines
from ruleowl.rules import is_ncname
from ruleowl.serializer import (
    Format,
    OntologyParseError,
    SerializationConfig,
    emitted_ids,
    parse_subset,
    serialize,
    structural_equal,
)
from ruleowl.transform import convert

from oracle import EXAMPLE_RULES
from strategies import graphs

GOLDEN = Path(__file__).parent / "golden"
TURTLE = SerializationConfig(Format.TURTLE)


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


def owl_for(*lines):
    g, diags = convert([parse_line(l) for l in lines])
    assert not any(d.is_error for d in diags)
    return serialize(g)


@pytest.mark.parametrize("fixture,rule", [
    ("plane.xml", "IF Wings and Engine THEN Plane"),
    ("car_properties.xml", "IF Wheel and Engine THEN Car"),
    ("bike.xml", "IF (Bike equivalent Bicycle) and (Wheel, Rudder ∈ Bike) THEN (Wheel, Rudder ∈ Bicycle)"),
    ("driver.xml", "IF Driver THEN has Vechicle Car"),
    ("part_of.xml", "IF Wings THEN part_of Plane"),
    ("complement.xml", "IF Car THEN not Plane"),
])
def test_golden_fragments(fixture, rule):
    assert structural_equal(owl_for(rule), golden(fixture))


def test_union_fragment_is_not_the_administrative_choice():
    out = owl_for("IF Wheel and Engine THEN Car")
    assert structural_equal(out, golden("car_properties.xml"))
    assert not structural_equal(out, golden("car_union.xml"))


def test_structural_equal_distinguishes_fragments():
    assert not structural_equal(golden("plane.xml"), golden("car_properties.xml"))
    assert not structural_equal(golden("part_of.xml"), golden("complement.xml"))
    # a changed domain must be noticed
    assert not structural_equal(golden("plane.xml"), golden("plane.xml").replace('"#Plane"/>\n    <rdfs:range', '"#Car"/>\n    <rdfs:range', 1))


def test_structural_equal_ignores_layout():
    doc = owl_for(*EXAMPLE_RULES)
    compact = serialize(convert([parse_line(l) for l in EXAMPLE_RULES])[0], SerializationConfig(pretty=False))
    assert compact != doc
    assert structural_equal(doc, compact)
    reprefixed = doc.replace("owl:", "o:").replace("xmlns:owl=", "xmlns:o=")
    assert structural_equal(doc, reprefixed)


def test_structural_equal_raises_on_bad_xml():
    with pytest.raises(ET.ParseError):
        structural_equal("<a>", "<a/>")


def test_empty_graph_document():
    text = serialize(EMPTY)
    root = ET.fromstring(text)
    assert root.tag == "{http://www.w3.org/1999/02/22-rdf-syntax-ns#}RDF"
    assert len(root) == 0
    for prefix in ("rdf", "rdfs", "owl", "xsd"):
        assert f"xmlns:{prefix}=" in text
    assert parse_subset(text) == EMPTY


def test_serialize_deterministic_and_ordered():
    text = owl_for(*EXAMPLE_RULES)
    assert text == owl_for(*reversed(EXAMPLE_RULES))
    order = [line.strip().split()[0] for line in text.splitlines()[2:-1] if not line.strip().startswith("</") and "rdf:resource" not in line]
    assert order == ["<owl:Class"] * 6 + ["<owl:DatatypeProperty"] * 6 + ["<owl:ObjectProperty"] + ["<owl:Class"] * 3


def test_example_driver_fragment_reads():
    g = parse_subset(golden("driver.xml").replace("has Vechicle", "hasVechicle"))
    assert g == OntologyGraph({ClassDecl("Driver"), ClassDecl("Car")}, links={object_property("hasVechicle", "Driver", "Car")})


def test_example_nested_fragments_read():
    g = parse_subset(golden("bike.xml"))
    assert len(g.datatype_properties) == 4
    assert parse_subset(golden("part_of.xml")).describe() == ["class Plane", "class Wings", "subClassOf Wings -> Plane"]


def test_union_of_rejected():
    with pytest.raises(OntologyParseError, match="unsupported construct: unionOf"):
        parse_subset(golden("car_union.xml"))


@pytest.mark.parametrize("body,message", [
    ('<owl:Class rdf:about="#Ghost"><rdfs:subClassOf rdf:resource="#Car"/></owl:Class><owl:Class rdf:ID="Car"/>', "dangling"),
    ('<owl:Restriction/>', "unsupported construct: Restriction"),
    ('<owl:Class rdf:ID="Car" rdfs:label="x"/>', "unsupported attribute rdfs:label"),
    ('<owl:Class rdf:ID="Car"/><owl:DatatypeProperty rdf:ID="W"/>', "exactly one rdfs:domain"),
    ('<owl:Class rdf:ID="Car"/><owl:DatatypeProperty rdf:ID="W__Bike"><rdfs:domain rdf:resource="#Car"/></owl:DatatypeProperty>', "qualified"),
    ('<owl:Class rdf:ID="Car"/><owl:Class rdf:about="#Car"><owl:complementOf rdf:resource="#Car"/></owl:Class>', "itself"),
])
def test_parse_subset_errors(body, message):
    doc = ('<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#" '
           'xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#" xmlns:owl="http://www.w3.org/2002/07/owl#">'
           f"{body}</rdf:RDF>")
    with pytest.raises(OntologyParseError, match=message):
        parse_subset(doc)


def test_parse_subset_malformed_xml():
    with pytest.raises(OntologyParseError, match="malformed XML"):
        parse_subset("<rdf:RDF")


def test_qualified_ids_only_when_needed():
    g = OntologyGraph(
        {ClassDecl("Car"), ClassDecl("Bike"), ClassDecl("Wheel")},
        {DatatypePropertyDecl("Engine", "Car"), DatatypePropertyDecl("Rudder", "Bike"), DatatypePropertyDecl("Rudder", "Car"),
         DatatypePropertyDecl("Wheel", "Car")},
        {object_property("has", "Car", "Wheel"), object_property("has", "Bike", "Wheel")},
    )
    assert emitted_ids(g) == sorted([
        "Bike", "Car", "Wheel", "Engine", "Rudder__Bike", "Rudder__Car", "Wheel__Car", "has__Bike__Wheel", "has__Car__Wheel",
    ])
    assert parse_subset(serialize(g)) == g


@settings(max_examples=200)
@given(graphs)
def test_serialize_parse_round_trip(g):
    text = serialize(g)
    assert parse_subset(text) == g
    assert serialize(parse_subset(text)) == text
    assert all(is_ncname(i) for i in emitted_ids(g))
    assert len(set(emitted_ids(g))) == len(emitted_ids(g))


rdflib = pytest.importorskip("rdflib")


def _triples(text, fmt):
    graph = rdflib.Graph()
    graph.parse(data=text, format=fmt, publicID="http://example.org/ontology")
    return set(graph)


@settings(max_examples=50, deadline=None)
@given(graphs)
def test_rdfxml_and_turtle_carry_the_same_triples(g):
    # rdflib is an independent reader for both syntaxes
    xml_triples = _triples(serialize(g), "xml")
    assert xml_triples == _triples(serialize(g, TURTLE), "turtle")
    n_links = len([l for l in g.links if l.name is None])
    assert len(xml_triples) == len(g.classes) + 3 * len(g.datatype_properties) + 3 * (len(g.links) - n_links) + n_links


def test_rdflib_reads_example_ontology():
    rules, _ = parse_lines("\n".join(EXAMPLE_RULES))
    g, _ = convert(rules)
    triples = _triples(serialize(g), "xml")
    ns = "http://example.org/ontology#"
    owl = rdflib.Namespace("http://www.w3.org/2002/07/owl#")
    assert (rdflib.URIRef(ns + "Car"), owl.complementOf, rdflib.URIRef(ns + "Plane")) in triples
    assert (rdflib.URIRef(ns + "hasVechicle"), rdflib.RDF.type, owl.ObjectProperty) in triples
