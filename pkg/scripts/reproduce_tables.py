"""Enumerate every value and weight distribution at one parameter set and compare
each with its closed-form table.  Routes that exceed the budget are reported
and skipped.

    python3 scripts/reproduce_tables.py --p 3 --m 3 --k 1
"""

import argparse
import time

from kasami import codes, sequences as sq, sums
from kasami.errors import BudgetExceeded
from kasami.field import build_tower


def compare(name, make, reference):
    t0 = time.perf_counter()
    try:
        got = make()
    except BudgetExceeded as exc:
        print(f"{name:<34} skipped ({exc})")
        return
    status = "agree" if got == reference else "DISAGREE"
    print(f"{name:<34} {status:<9} {time.perf_counter() - t0:7.2f} s  mass {got.mass}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--show", action="store_true", help="print the closed-form tables")
    a = ap.parse_args()
    P, ctx = build_tower(a.p, a.m, a.k, a.t)
    print(f"p={P.p} m={P.m} k={P.k} t={P.t}  n={P.n} d={P.d} d'={P.dprime} q={P.q}")

    T_th = sums.t_distribution(ctx, P, "theorem")
    S_th = sums.s_distribution(ctx, P, "theorem")
    compare("T enumeration", lambda: sums.t_distribution(ctx, P, "brute", a.workers), T_th)
    compare("S enumeration", lambda: sums.s_distribution(ctx, P, "brute", a.workers), S_th)
    compare("S rank + gamma fibers", lambda: sums.s_distribution(ctx, P, "hybrid", a.workers), S_th)
    for code in codes.CODES:
        spec = codes.CodeSpec(P, code)
        ref = codes.weight_distribution(ctx, spec, "theorem")
        compare(f"{code} weights (sum tables)",
                lambda: codes.weight_distribution(ctx, spec, "brute", a.workers), ref)
        if P.t == 1:
            compare(f"{code} weights (pushforward)",
                    lambda: codes.weight_distribution(ctx, spec, "pushforward", a.workers), ref)
    C_th = sq.correlation_distribution(ctx, P, "theorem")
    compare("correlation enumeration",
            lambda: sq.correlation_distribution(ctx, P, "brute", workers=a.workers), C_th)
    if a.show:
        for dist in (T_th, S_th, C_th):
            print()
            print(dist.to_table())


if __name__ == "__main__":
    main()
