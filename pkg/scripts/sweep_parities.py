"""Sweep every admissible parity assumption for a parametric plan.

The cable parities are not determined by the matrix, so (k, d) can move
with them while the pigeonhole bound cannot. This prints one row per
assumption and a summary of the (k, d) values seen.

    python3 scripts/sweep_parities.py --matrix "[[2,1],[1,3]]"
"""

import argparse
import itertools
from collections import Counter

from derealize.exactmat import Mod2RowVector, parse_matrix
from derealize.planner import PARAMETRIC, realize, verify_plan


def admissible_parities(p):
    # axis i has a forced 0 at position i; the other p-1 bits are free
    per_axis = []
    for i in range(p):
        choices = []
        for bits in itertools.product((0, 1), repeat=p - 1):
            v = list(bits)
            v.insert(i, 0)
            choices.append(Mod2RowVector(tuple(v)))
        per_axis.append(choices)
    return itertools.product(*per_axis)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--matrix", required=True, help="matrix, text or JSON")
    ap.add_argument("--limit", type=int, default=4096, help="stop after this many assumptions")
    args = ap.parse_args()
    a = parse_matrix(args.matrix)
    seen = Counter()
    for n, pars in enumerate(admissible_parities(a.p)):
        if n >= args.limit:
            break
        plan = realize(a, PARAMETRIC, pars)
        ok = verify_plan(plan)
        states = " ".join(t.bits() for t in plan.trace.states)
        print(f"{','.join(v.bits() for v in pars):<24} k={plan.k} d={plan.d} verified={ok} states={states}")
        seen[(plan.k, plan.d)] += 1
    print("summary:", ", ".join(f"(k={k}, d={d}) x{c}" for (k, d), c in sorted(seen.items())))
    print(f"bound: d <= {2 ** a.p - 1}")


if __name__ == "__main__":
    main()
