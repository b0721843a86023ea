"""Tabulate modular types: orbit size, SL(p, Z/2) index and coset representatives.

    python3 scripts/index_table.py --max-p 6
"""

import argparse
import time

from derealize.extend import coset_table, generated_subgroup_mod2, orbit_of_standard, sl_mod2, stabilizer_mod2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=6)
    ap.add_argument("--group-max-p", type=int, default=3, help="largest p for full SL(p, Z/2) enumeration")
    ap.add_argument("--show-reps", action="store_true")
    args = ap.parse_args()

    print(f"{'p':>3} {'orbit':>7} {'2^p-1':>7} {'seconds':>8}")
    for p in range(1, args.max_p + 1):
        t0 = time.perf_counter()
        n = len(orbit_of_standard(p))
        print(f"{p:>3} {n:>7} {2 ** p - 1:>7} {time.perf_counter() - t0:>8.3f}")

    print()
    print(f"{'p':>3} {'|SL|':>7} {'|stab|':>7} {'index':>6} {'generated = stab':>17}")
    for p in range(1, args.group_max_p + 1):
        g, s = sl_mod2(p), stabilizer_mod2(p)
        same = generated_subgroup_mod2(p) == s
        print(f"{p:>3} {len(g):>7} {len(s):>7} {len(g) // len(s):>6} {str(same):>17}")

    if args.show_reps:
        for p in range(2, min(args.max_p, 4) + 1):
            print(f"\np = {p}")
            for t, w in coset_table(p):
                print(f"  {t.bits()}  {[list(r) for r in w.rows]}")


if __name__ == "__main__":
    main()
