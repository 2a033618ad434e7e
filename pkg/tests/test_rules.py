import pytest
from hypothesis import given, strategies as st

from ruleowl.parser import parse_line
from ruleowl.rules import (
    PART_OF,
    Fact,
    Relation,
    RelationKeyword,
    RelationKind,
    Rule,
    RuleKind,
    canonical_form,
    is_ncname,
    normalize,
)
from ruleowl.transform import classify

from strategies import classified_rules


def test_fact_normalizes_whitespace():
    assert Fact("has Vechicle") == Fact("hasVechicle")
    assert Fact("  Car ").name == "Car"


def test_fact_is_case_sensitive():
    assert Fact("Car") != Fact("car")


@pytest.mark.parametrize("bad", ["", "   ", "and", "AND", "Not", "part_of", "in", "3D", "a-b", "a__b", "x.y"])
def test_fact_rejects(bad):
    with pytest.raises(ValueError):
        Fact(bad)


def test_named_relation_rejects_reserved_words():
    for word in ("and", "equivalent", "part_of", "not"):
        with pytest.raises(ValueError):
            RelationKeyword.named(word)
    assert RelationKeyword.named("has Vechicle").name == "hasVechicle"


def test_plain_keywords_carry_no_name():
    with pytest.raises(ValueError):
        RelationKeyword(RelationKind.NOT, "x")


@given(st.text(max_size=30))
def test_normalize_idempotent(s):
    assert normalize(normalize(s)) == normalize(s)


def test_canonical_form_sorts_premise():
    rule = Rule((Fact("Wheel"), Fact("Engine")), Fact("Car"), RuleKind.CLASS_WITH_PROPERTIES)
    assert canonical_form(rule) == "IF Engine and Wheel THEN Car"


def test_canonical_form_part_of():
    rule = Rule((Fact("Wings"),), Relation(PART_OF, Fact("Plane")), RuleKind.PART_OF)
    assert canonical_form(rule) == "IF Wings THEN part_of Plane"


def test_canonical_form_renders_membership_with_in():
    rule = parse_line("IF (Bike equivalent Bicycle) and (Wheel, Rudder ∈ Bike) THEN (Wheel, Rudder ∈ Bicycle)")
    assert canonical_form(rule.with_kind(classify(rule))) == (
        "IF (Bicycle equivalent Bike) and (Rudder, Wheel in Bicycle) THEN (Rudder, Wheel in Bike)"
    )


def test_canonical_equivalence_ignores_orientation():
    forms = set()
    for a, b in (("Bike", "Bicycle"), ("Bicycle", "Bike")):
        for p, c in ((a, b), (b, a)):
            rule = parse_line(f"IF ({a} equivalent {b}) and (Wheel in {p}) THEN (Wheel in {c})")
            forms.add(canonical_form(rule.with_kind(classify(rule))))
    assert len(forms) == 1


def test_canonical_form_rejects_unclassified():
    rule = Rule((Fact("A"),), Fact("B"))
    with pytest.raises(ValueError, match="cannot canonicalize unclassified rule"):
        canonical_form(rule)


def test_rule_requires_premise():
    with pytest.raises(ValueError):
        Rule((), Fact("B"))


@given(classified_rules)
def test_canonical_form_is_a_parser_fixed_point(rule):
    text = canonical_form(rule)
    reparsed = parse_line(text)
    reparsed = reparsed.with_kind(classify(reparsed))
    assert reparsed.kind is rule.kind
    assert canonical_form(reparsed) == text


@given(classified_rules, st.randoms())
def test_canonical_form_ignores_conjunct_order(rule, rnd):
    premise = list(rule.premise)
    rnd.shuffle(premise)
    assert canonical_form(Rule(tuple(premise), rule.conclusion, rule.kind)) == canonical_form(rule)


@pytest.mark.parametrize("text,ok", [("Car", True), ("_x", True), ("Ünïcode", True), ("a-b", True),
                                     ("1a", False), ("a b", False), ("a:b", False), ("", False)])
def test_is_ncname(text, ok):
    assert is_ncname(text) is ok
