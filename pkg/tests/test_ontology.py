import pytest
from hypothesis import given, strategies as st

from ruleowl.diagnostics import Severity
from ruleowl.ontology import (
    EMPTY,
    XSD_STRING,
    ClassDecl,
    DatatypePropertyDecl,
    FragmentDelta,
    GraphError,
    LinkKind,
    MergeConflict,
    OntologyGraph,
    complement_of,
    equivalent_class,
    graph_isomorphic,
    merge_delta,
    object_property,
    sub_class_of,
)
from ruleowl.parser import parse_line
from ruleowl.transform import prepare, transform

from strategies import graphs, mappable_rules


def delta_of(line):
    return transform(prepare(parse_line(line)))


def test_merge_into_empty():
    g = merge_delta(EMPTY, delta_of("IF Wheel and Engine THEN Car"))
    assert g.classes == {ClassDecl("Car")}
    assert g.datatype_properties == {DatatypePropertyDecl("Wheel", "Car"), DatatypePropertyDecl("Engine", "Car")}
    assert all(d.range == XSD_STRING for d in g.datatype_properties)
    assert not g.links


def test_merge_subset_delta_is_noop():
    d = delta_of("IF Wheel and Engine THEN Car")
    g = merge_delta(EMPTY, d)
    assert merge_delta(g, d) == g
    assert merge_delta(g, FragmentDelta({ClassDecl("Car")})) == g


def test_symmetric_links_are_direction_normalized():
    assert equivalent_class("Bike", "Bicycle") == equivalent_class("Bicycle", "Bike")
    assert complement_of("Plane", "Car").pair == ("Car", "Plane")
    assert sub_class_of("Wings", "Plane") != sub_class_of("Plane", "Wings")


def test_link_rejects_self_loop():
    with pytest.raises(ValueError):
        sub_class_of("A", "A")


def test_conflict_between_equivalent_and_complement():
    g = merge_delta(EMPTY, delta_of("IF Car THEN not Plane"))
    with pytest.raises(MergeConflict) as exc:
        merge_delta(g, delta_of("IF (Car equivalent Plane) and (Wheel in Car) THEN (Wheel in Plane)"))
    assert exc.value.diagnostic.code == "CONFLICT"
    assert exc.value.diagnostic.severity is Severity.ERROR


def test_conflict_detected_in_either_order():
    g = merge_delta(EMPTY, delta_of("IF (Plane equivalent Car) and (Wheel in Plane) THEN (Wheel in Car)"))
    with pytest.raises(MergeConflict):
        merge_delta(g, delta_of("IF Plane THEN not Car"))


def test_domain_clash_is_a_warning_and_keeps_both():
    diags = []
    g = merge_delta(EMPTY, delta_of("IF Wheel and Engine THEN Car"))
    g = merge_delta(g, delta_of("IF Wheel and Rudder THEN Bike"), diags)
    assert [d.code for d in diags] == ["DOMAIN_CLASH"]
    assert diags[0].severity is Severity.WARNING
    assert {d.domain for d in g.datatype_properties if d.id == "Wheel"} == {"Car", "Bike"}


def test_range_clash_is_a_conflict():
    g = OntologyGraph({ClassDecl("Car")}, {DatatypePropertyDecl("Wheel", "Car")})
    d = FragmentDelta({ClassDecl("Car")}, {DatatypePropertyDecl("Wheel", "Car", "urn:other")})
    with pytest.raises(MergeConflict):
        merge_delta(g, d)


@pytest.mark.parametrize("build", [
    lambda: OntologyGraph(datatype_properties={DatatypePropertyDecl("Wheel", "Car")}),
    lambda: OntologyGraph({ClassDecl("A")}, links={sub_class_of("A", "B")}),
    lambda: OntologyGraph({ClassDecl("A"), ClassDecl("B")}, links={equivalent_class("A", "B"), complement_of("B", "A")}),
    lambda: OntologyGraph({ClassDecl("not")}),
])
def test_graph_invariants_enforced(build):
    with pytest.raises(GraphError):
        build()


def test_graph_isomorphic_examples():
    g = merge_delta(EMPTY, delta_of("IF Driver THEN hasVechicle Car"))
    assert graph_isomorphic(g, g)
    bigger = OntologyGraph(g.classes | {ClassDecl("Truck")}, g.datatype_properties, g.links)
    assert not graph_isomorphic(g, bigger)
    other_name = OntologyGraph(g.classes, links={object_property("drives", "Driver", "Car")})
    assert not graph_isomorphic(g, other_name)


@given(graphs, st.lists(mappable_rules, max_size=3))
def test_merge_idempotent(g, rules):
    for d in (transform(prepare(r)) for r in rules):
        try:
            once = merge_delta(g, d)
        except MergeConflict:
            continue
        assert merge_delta(once, d) == once
        g = once


@given(mappable_rules, mappable_rules)
def test_merge_commutative_for_conflict_free(r1, r2):
    d1, d2 = transform(prepare(r1)), transform(prepare(r2))
    try:
        a = merge_delta(merge_delta(EMPTY, d1), d2)
        b = merge_delta(merge_delta(EMPTY, d2), d1)
    except MergeConflict:
        return
    assert graph_isomorphic(a, b)


@given(graphs)
def test_random_graphs_are_valid(g):
    assert g.problems() == []
    for link in g.links:
        assert {link.source, link.target} <= g.class_ids
    assert all(l.kind in LinkKind for l in g.links)
