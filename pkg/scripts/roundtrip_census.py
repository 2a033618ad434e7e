"""Exhaustive round-trip census over small rule sets.

Enumerates every rule set of size 1..K drawn from a fixed vocabulary,
converts it, extracts rules back, reconverts, and tallies outcomes.

    python3 scripts/roundtrip_census.py --max-size 3
"""

import argparse
import collections
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracle import rule_text, rule_universe  # noqa: E402

from ruleowl import convert, extract_rules, graph_isomorphic, parse_line  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description="Exhaustive round-trip census over small rule sets.")
    ap.add_argument("--max-size", type=int, default=3)
    args = ap.parse_args()

    universe = rule_universe()
    parsed = {spec: parse_line(rule_text(spec)) for spec in universe}
    print(f"vocabulary rules: {len(universe)}")
    for size in range(1, args.max_size + 1):
        tally = collections.Counter()
        start = time.perf_counter()
        for subset in itertools.combinations(universe, size):
            g, diags = convert([parsed[s] for s in subset])
            tally["conflicted" if any(d.is_error for d in diags) else "clean"] += 1
            again, _ = convert(extract_rules(g))
            tally["round-trip ok" if graph_isomorphic(again, g) else "round-trip FAIL"] += 1
        elapsed = time.perf_counter() - start
        print(f"size {size}: " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())) + f" ({elapsed:.1f}s)")


if __name__ == "__main__":
    main()
