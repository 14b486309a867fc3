#!/usr/bin/env python3
"""
Print every term of the defining sum for one pair, next to the hook swaps
the fast path uses, and say whether the two totals agree.

    python scripts/diagnose_jantzen.py "3" "1,1,1" --e 3
    python scripts/diagnose_jantzen.py "1|" "|1" --case 4 --p 2
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.api.config import RunConfig
from src.core.jantzen import hook_swaps, jantzen_bruteforce, jantzen_fast, jantzen_terms, swap_value
from src.core.partition import parse_multipartition


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("lam")
    parser.add_argument("mu")
    parser.add_argument("--case", default="auto")
    parser.add_argument("--e")
    parser.add_argument("--p")
    parser.add_argument("--charges")
    parser.add_argument("--zero", action="store_true")
    args = parser.parse_args()

    lam = parse_multipartition(args.lam)
    mu = parse_multipartition(args.mu, r=lam.r)
    regime = RunConfig("jantzen", args.e, args.p, lam.r, lam.size, args.charges, args.case, args.zero).regime()
    print(f"Regime: {regime.describe()}")
    print(f"lambda = {lam}, mu = {mu}\n")

    print("Defining sum:")
    for term in jantzen_terms(lam, mu, regime):
        flag = "" if term.feet_residues_match else "  (feet residues differ)"
        print(f"  x={tuple(term.x)} y={tuple(term.y)} sign={term.sign:+d} valuation={term.valuation}{flag}")

    print("\nHook swaps:")
    for swap in hook_swaps(lam, mu):
        print(
            f"  components {swap.comp_x}->{swap.comp_y} feet {swap.foot_x},{swap.foot_y} "
            f"legs={swap.legs} value={swap_value(regime, lam.size, swap):+d}"
        )

    oracle = jantzen_bruteforce(lam, mu, regime)
    fast = jantzen_fast(lam, mu, regime)
    print(f"\nJ = {fast} (fast), {oracle} (defining sum)")
    if fast == oracle:
        print("✅ PASS: fast path agrees")
        return 0
    print("❌ FAIL: fast path disagrees")
    return 1


if __name__ == "__main__":
    sys.exit(main())
