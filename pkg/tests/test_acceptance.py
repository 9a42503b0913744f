"""Acceptance gate: twelve criteria, exact equality throughout.

Each test prints one ``criterion N: PASS|FAIL`` line (collected again in the
terminal summary).  Field contexts are built fresh per criterion so that
cached tables from other tests do not hide the cost being timed.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from kasami import codes, curves, quadform as qf, sequences as sq, sums, tables
from kasami.cyclo import CyclotomicInteger as C
from kasami.field import FieldCtx, TowerParams

from conftest import ACCEPTANCE_LINES

RNG_SEED = 20240601


def fresh(p, m, k, t=1):
    P = TowerParams(p, m, k, t)
    return P, FieldCtx(p, P.n)


def report(num, ok, elapsed, limit, detail=""):
    ok = bool(ok) and elapsed < limit
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  ({elapsed:.1f} s, limit {limit} s) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def counts_of(dist):
    return {v: c for v, c in dist.counts.items() if c}


def R(p, x):
    return C.rational(p, x)


def test_criterion_01_t_distribution_dprime_d():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    brute = sums.t_distribution(ctx, P, "brute")
    elapsed = time.perf_counter() - t0
    w = C.zeta(3) * 9 - C.zeta(3, 2) * 9
    expected = {R(3, 9): 300, R(3, -9): 168, w: 120, -w: 120, R(3, -27): 20, R(3, 81): 1}
    ok = counts_of(brute) == expected and brute == sums.t_distribution(ctx, P, "theorem")
    report(1, ok, elapsed, 1)


def test_criterion_02_t_distribution_dprime_2d():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 3, 1)
    brute = sums.t_distribution(ctx, P, "brute", workers=1)
    elapsed = time.perf_counter() - t0
    expected = {R(3, -27): 14040, R(3, 81): 5460, R(3, -243): 182, R(3, 729): 1}
    ok = counts_of(brute) == expected and brute == sums.t_distribution(ctx, P, "theorem")
    report(2, ok, elapsed, 30)


def test_criterion_03_moments():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    brute = [sums.moments_T(ctx, P, r, "brute") for r in (1, 2, 3)]
    elapsed = time.perf_counter() - t0
    closed = [sums.moments_T(ctx, P, r, "closed") for r in (1, 2, 3)]
    ok = brute == [729, 729, 234009] and closed == brute
    report(3, ok, elapsed, 1, f"brute {[b.to_int() for b in brute]}")


def test_criterion_04_s_distribution_case_i():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    brute = sums.s_distribution(ctx, P, "brute", workers=1)
    elapsed = time.perf_counter() - t0
    ok = (brute == sums.s_distribution(ctx, P, "theorem")
          and brute.multiplicity(9) == 9900 and brute.multiplicity(0) == 14480
          and brute.multiplicity(81) == 1 and brute.mass == 3**10)
    report(4, ok, elapsed, 120)


def test_criterion_05_s_distribution_case_ii():
    t0 = time.perf_counter()
    ok = True
    for t in (1, 2):
        P, ctx = fresh(3, 2, 0, t)
        ok &= sums.s_distribution(ctx, P, "brute") == sums.s_distribution(ctx, P, "theorem")
    report(5, ok, time.perf_counter() - t0, 120)


def test_criterion_06_s_distribution_case_iii():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 3, 1)
    ok = sums.s_distribution(ctx, P, "hybrid") == sums.s_distribution(ctx, P, "theorem")
    rng = np.random.default_rng(RNG_SEED)
    alphas = sums.alpha_domain(ctx, P)
    pairs = set()
    while len(pairs) < 200:
        pr = (int(rng.choice(alphas)), int(rng.integers(ctx.q)))
        if pr != (0, 0):
            pairs.add(pr)
    bad = 0
    for a, b in sorted(pairs):
        fib = sums.gamma_fibers(ctx, P, a, b)
        for x in ctx.subfield(P.t).tolist():
            brute = sum(1 for v in fib.values() if v == x)
            bad += brute != sums.count_gamma_trace(ctx, P, a, b, x, "closed")
    report(6, ok and bad == 0, time.perf_counter() - t0, 300, f"gamma-count mismatches {bad}")


def test_criterion_07_artin_schreier():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 3, 1)
    hist = sums.t_table(ctx, P)
    canon = hist - hist[..., -1:]
    rational = not canon[..., 1:].any()
    res = curves.identity_check(ctx, P, canon[..., 0])
    elapsed = time.perf_counter() - t0
    ok = rational and res == {"pairs": 19682, "identity": 19682, "congruence": 19682}
    assert (P.q0**2 - 1, P.q0) == (8, 3)
    report(7, ok, elapsed, 120, str(res))


def test_criterion_08_c1_weights():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    spec = codes.CodeSpec(P, "C1")
    dist = codes.weight_distribution(ctx, spec, "brute")
    elapsed = time.perf_counter() - t0
    expected = {0: 1, 48: 300, 54: 240, 60: 168, 72: 20}
    ok = dict(dist.entries()) == expected
    ok &= dist == codes.weight_distribution(ctx, spec, "theorem")
    words = codes.all_codewords(ctx, spec)
    ok &= len({tuple(w) for w in words.tolist()}) == 729 == 3 ** (3 * P.n0 // 2)
    rng = np.random.default_rng(RNG_SEED)
    alphas = sums.alpha_domain(ctx, P)
    bad = 0
    for _ in range(50):
        a, b = int(rng.choice(alphas)), int(rng.integers(ctx.q))
        bad += (codes.codeword_weight(ctx, spec, a, b, mode="direct")
                != codes.codeword_weight(ctx, spec, a, b, mode="sum"))
    report(8, ok and bad == 0, elapsed, 5, f"direct-oracle mismatches {bad}")


def test_criterion_09_c2_weights():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    spec = codes.CodeSpec(P, "C2")
    dist = codes.weight_distribution(ctx, spec, "brute")
    elapsed = time.perf_counter() - t0
    ok = dist == codes.weight_distribution(ctx, spec, "theorem")
    ok &= dist.counts.get(48) == 9900 and dist.mass == 59049
    report(9, ok, elapsed, 30)


def test_criterion_10_correlation():
    t0 = time.perf_counter()
    P, ctx = fresh(3, 2, 1)
    brute = sq.correlation_distribution(ctx, P, "brute")
    ok = brute == sq.correlation_distribution(ctx, P, "theorem", "corrected")
    ok &= (brute.multiplicity(80) == 729 and brute.multiplicity(-1) == 10423971
           and brute.mass == 42515280)
    readings = sq.reading_report(ctx, P, brute)
    ok &= readings == {"corrected": True, "printed": False}
    rng = np.random.default_rng(RNG_SEED)
    alphas = sums.alpha_domain(ctx, P)
    bad = 0
    for _ in range(500):
        p1 = (int(rng.choice(alphas)), int(rng.integers(ctx.q)))
        p2 = (int(rng.choice(alphas)), int(rng.integers(ctx.q)))
        tau = int(rng.integers(ctx.order))
        bad += (sq.correlation(ctx, P, p1, p2, tau, "direct")
                != sq.correlation(ctx, P, p1, p2, tau, "via_S"))
    report(10, ok and bad == 0, time.perf_counter() - t0, 60,
           f"readings {readings}, direct mismatches {bad}")


def _random_form(ctx, rng):
    deg = int(rng.integers(1, 3))  # q0 = 3 or 9
    s = int(rng.integers(1, 5))
    sub = ctx.subfield(deg)
    H = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(i, s):
            H[i][j] = H[j][i] = int(rng.choice(sub))
    A = tuple(int(rng.choice(sub)) for _ in range(s))
    return qf.SymMatrix(ctx, deg, tuple(map(tuple, H))), A


def test_criterion_11_property_suite():
    t0 = time.perf_counter()
    failures = {}
    rng = np.random.default_rng(RNG_SEED)
    F = FieldCtx(3, 4)
    bad = 0
    for _ in range(200):
        H, A = _random_form(F, rng)
        bad += qf.quad_char_sum(H, A, "closed") != qf.quad_char_sum(H, A, "brute")
    failures["forms"] = bad

    for args in ((3, 2, 1), (3, 3, 1)):
        P, ctx = fresh(*args)
        Rt = qf.rank_tables(ctx, P)
        failures[f"rank{args}"] = int(np.count_nonzero(Rt["rank"] != Rt["kernel_rank"]))
        allowed = {0, 1, 2, P.p**P.dprime + 1}
        bad = 0
        for a in Rt["alphas"].tolist():
            if a:
                bad += sum(qf.psi_solution_count(ctx, P, a, b) not in allowed
                           for b in range(1, ctx.q))
        failures[f"psi{args}"] = bad

        if args == (3, 2, 1):
            hist = sums.t_table(ctx, P)
            alphas = Rt["alphas"]
            T = {}
            for i, a in enumerate(alphas.tolist()):
                for b in range(ctx.q):
                    T[a, b] = C(P.p, hist[i, b].tolist())
            bad = 0
            for i, a in enumerate(alphas.tolist()):
                for b in range(ctx.q):
                    v = T[a, b]
                    for w in ctx.subfield(P.d).tolist()[1:]:
                        sign = int(ctx.quadratic_character(w, P.d)) ** int(Rt["rank"][i, b])
                        bad += T[ctx.mul(w, a), ctx.mul(w, b)] != v * sign
                    for u in range(1, P.p):
                        bad += v.galois(u) != T[ctx.mul(u, a), ctx.mul(u, b)]
            failures["scaling+galois"] = bad
    ok = not any(failures.values())
    report(11, ok, time.perf_counter() - t0, 120, str(failures))


def test_criterion_12_determinism(tmp_path):
    t0 = time.perf_counter()
    outs = []
    for workers in (1, 8):
        target = tmp_path / f"sdist_{workers}.json"
        subprocess.run([sys.executable, "-m", "kasami", "sdist", "--p", "3", "--m", "2",
                        "--k", "1", "--mode", "brute", "--workers", str(workers),
                        "--output", str(target)], check=True)
        outs.append(target.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    report(12, ok, time.perf_counter() - t0, 600, f"{len(outs[0])} bytes each")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
