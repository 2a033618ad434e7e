"""Convert the five worked example rules in both modes and print the result.

    python3 scripts/worked_examples.py [--format turtle]
"""

import argparse

from ruleowl import Format, Mode, SerializationConfig, TransformConfig, convert, extract_rules, parse_lines, serialize
from ruleowl.rules import canonical_form

RULES = """\
IF Wings and Engine THEN Plane
IF (Bike equivalent Bicycle) and (Wheel, Rudder ∈ Bike) THEN (Wheel, Rudder ∈ Bicycle)
IF Driver THEN has Vechicle Car
IF Wings THEN part_of Plane
IF Car THEN not Plane
"""


def main():
    ap = argparse.ArgumentParser(description="Convert the worked example rules in both modes.")
    ap.add_argument("--format", choices=[f.value for f in Format], default=Format.RDFXML.value)
    args = ap.parse_args()
    config = SerializationConfig(Format(args.format))

    rules, diags = parse_lines(RULES)
    assert not diags, diags
    for mode in Mode:
        graph, diags = convert(rules, TransformConfig(mode))
        print(f"### {mode.value} mode")
        for d in diags:
            print(d.format())
        print("\n".join(graph.describe()))
        print()
        print(serialize(graph, config))
        print("extracted rules:")
        for rule in extract_rules(graph):
            print("  " + canonical_form(rule))
        print()


if __name__ == "__main__":
    main()
