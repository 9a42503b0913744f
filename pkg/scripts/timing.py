"""Wall-clock cost of the enumeration routes as the field grows.

    python3 scripts/timing.py --workers 1 2 4
"""

import argparse
import time

from kasami import sums
from kasami.field import FieldCtx, TowerParams

CASES = [(3, 2, 1), (3, 2, 0), (5, 2, 1), (3, 3, 1), (3, 3, 2), (3, 2, 3), (7, 2, 1)]


def timed(fn) -> str:
    t0 = time.perf_counter()
    try:
        fn()
    except sums.BudgetExceeded:
        return f"{'budget':>10}"
    return f"{time.perf_counter() - t0:10.2f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--workers", type=int, nargs="+", default=[1])
    a = ap.parse_args()
    print(f"{'params':<12}{'q':>7}{'workers':>9}{'T table':>10}{'S table':>10}{'S hybrid':>10}")
    for p, m, k in CASES:
        P = TowerParams(p, m, k)
        for w in a.workers:
            ctx = FieldCtx(p, P.n)  # fresh, so nothing is cached between rows
            t_T = timed(lambda: sums.t_table(ctx, P, w))
            t_S = timed(lambda: sums.s_table(ctx, P, w))
            t_H = timed(lambda: sums.s_distribution(ctx, P, "hybrid", w))
            print(f"{str((p, m, k)):<12}{P.q:>7}{w:>9}{t_T}{t_S}{t_H}")


if __name__ == "__main__":
    main()
