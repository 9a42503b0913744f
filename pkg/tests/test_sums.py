import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kasami import sums
from kasami.cyclo import CyclotomicInteger as C, classify_value
from kasami.errors import AlphaNotInSubfield, BudgetExceeded, ZeroPair
from kasami.field import FieldCtx, TowerParams, build_tower


def naive_T(ctx, P, a, b, g=0):
    """Character sum straight from the definition, one x at a time."""
    counts = [0] * P.p
    for x in range(ctx.q):
        y = ctx.mul(a, ctx.pow(x, P.p**P.m + 1))
        e = ctx.trace(y, P.m, 1)
        z = ctx.add(ctx.mul(b, ctx.pow(x, P.p**P.k + 1)), ctx.mul(g, x))
        counts[(e + ctx.trace(z, P.n, 1)) % P.p] += 1
    return C(P.p, counts)


P321, CTX321 = build_tower(3, 2, 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CTX321.subfield(2).tolist()), st.integers(0, 80), st.integers(0, 80))
def test_evaluations_match_definition(a, b, g):
    assert sums.eval_T(CTX321, P321, a, b) == naive_T(CTX321, P321, a, b)
    assert sums.eval_S(CTX321, P321, a, b, g) == naive_T(CTX321, P321, a, b, g)


def test_alpha_outside_subfield_rejected(t321):
    P, ctx = t321
    bad = next(x for x in range(ctx.q) if not ctx.in_subfield(x, P.m))
    with pytest.raises(AlphaNotInSubfield):
        sums.eval_T(ctx, P, bad, 0)


@pytest.mark.parametrize("which", ["t321", "t320"])
def test_tables_match_direct_evaluation(which, request):
    P, ctx = request.getfixturevalue(which)
    T = sums.t_table(ctx, P)
    S = sums.s_table(ctx, P)
    alphas = sums.alpha_domain(ctx, P).tolist()
    rng = np.random.default_rng(0)
    for _ in range(30):
        i, b, g = int(rng.integers(len(alphas))), int(rng.integers(ctx.q)), int(rng.integers(ctx.q))
        assert C(P.p, T[i, b].tolist()) == sums.eval_T(ctx, P, alphas[i], b)
        assert C(P.p, S[i, b, g].tolist()) == sums.eval_S(ctx, P, alphas[i], b, g)


@pytest.mark.parametrize("args", [(3, 2, 1), (3, 2, 0), (3, 2, 3), (5, 2, 1), (3, 3, 1)])
def test_t_distribution_enumeration_matches_table(args):
    P, ctx = build_tower(*args)
    assert sums.t_distribution(ctx, P, "brute") == sums.t_distribution(ctx, P, "theorem")


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 1), (3, 2, 0, 2), (3, 2, 3, 1)])
def test_s_distribution_three_routes(args):
    P, ctx = build_tower(*args)
    th = sums.s_distribution(ctx, P, "theorem")
    assert sums.s_distribution(ctx, P, "brute") == th
    assert sums.s_distribution(ctx, P, "hybrid") == th


def test_magnitudes(t321):
    P, ctx = t321
    for v in sums.t_distribution(ctx, P, "brute").counts:
        lab = classify_value(v, P)
        if lab.kind not in ("Zero", "FullSum"):
            assert v * v.conj() == P.p ** (P.n + lab.i * P.d)


def test_moments(t321):
    P, ctx = t321
    for order, expected in ((1, 729), (2, 729), (3, 234009)):
        assert sums.moments_T(ctx, P, order, "brute") == expected
        assert sums.moments_T(ctx, P, order, "closed") == expected


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 2), (3, 2, 0, 1), (5, 2, 1, 1)])
def test_gamma_counts_closed_vs_enumeration(args):
    P, ctx = build_tower(*args)
    rng = np.random.default_rng(3)
    alphas = sums.alpha_domain(ctx, P)
    sub = ctx.subfield(P.t).tolist()
    for _ in range(25):
        a, b = int(rng.choice(alphas)), int(rng.integers(ctx.q))
        if a == b == 0:
            continue
        for x in sub:
            assert (sums.count_gamma_trace(ctx, P, a, b, x, "closed")
                    == sums.count_gamma_trace(ctx, P, a, b, x, "brute"))


def test_gamma_count_zero_pair(t321):
    P, ctx = t321
    with pytest.raises(ZeroPair):
        sums.count_gamma_trace(ctx, P, 0, 0, 0)


def test_budget_guard():
    P = TowerParams(3, 3, 1)
    ctx = FieldCtx(3, 6)  # fresh: cached tables are returned without a budget check
    with pytest.raises(BudgetExceeded):
        sums.s_table(ctx, P)
    with pytest.raises(BudgetExceeded):
        sums.t_table(ctx, P, budget=1000)


def test_s_multiset_does_not_depend_on_gamma(t321):
    P, ctx = t321
    hist = sums.s_table(ctx, P)
    ref = sums.histogram_counts(hist[:, :, 1], P.p)
    for g in range(2, ctx.q):
        assert sums.histogram_counts(hist[:, :, g], P.p) == ref


def test_omega_sum_rational(t321):
    P, ctx = t321
    R = sums.omega_sum(ctx, P, sums.t_table(ctx, P), 1)
    alphas = sums.alpha_domain(ctx, P).tolist()
    for i, b in ((3, 5), (0, 17), (8, 80)):
        v = sums.eval_T(ctx, P, alphas[i], b)
        assert R[i, b] == (v + v.galois(2)).to_int()
