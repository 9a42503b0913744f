import numpy as np
import pytest

from kasami import curves, sums
from kasami.errors import ParameterError


def test_fiber_rule_matches_double_loop(t321):
    P, ctx = t321
    rng = np.random.default_rng(2)
    alphas = ctx.subfield(P.m)
    for _ in range(15):
        a, b = int(rng.choice(alphas)), int(rng.integers(ctx.q))
        assert curves.count_points(ctx, P, a, b) == curves.count_points_naive(ctx, P, a, b)


def test_naive_count_refuses_large_fields(t331):
    P, ctx = t331
    with pytest.raises(ParameterError):
        curves.count_points_naive(ctx, P, 1, 1)


@pytest.mark.parametrize("which", ["t321", "t320"])
def test_count_is_q_plus_scaled_sums(which, request):
    """N = q + sum over omega in F_(p^d)^* of T(omega alpha, omega beta), every pair."""
    P, ctx = request.getfixturevalue(which)
    R = sums.omega_sum(ctx, P, sums.t_table(ctx, P), P.d)
    assert (curves.count_points_table(ctx, P) == P.q + R).all()


def test_identity_and_congruence_when_dprime_is_2d(t331):
    P, ctx = t331
    assert P.dprime == 2 * P.d
    T = sums.omega_sum(ctx, P, sums.t_table(ctx, P), P.d) // (P.q0 - 1)
    res = curves.identity_check(ctx, P, T)
    assert res == {"pairs": 19682, "identity": 19682, "congruence": 19682}


def test_single_pair_report(t331, t321):
    P, ctx = t331
    c = curves.artin_schreier_count(ctx, P, 1, 5)
    assert c.identity_holds is True
    assert c.N % 8 == 3
    P, ctx = t321
    assert curves.artin_schreier_count(ctx, P, 1, 5).identity_holds is None


def test_table_rows_match_single_counts(t321):
    P, ctx = t321
    N = curves.count_points_table(ctx, P)
    alphas = ctx.subfield(P.m).tolist()
    for i, b in ((0, 0), (2, 7), (8, 80)):
        assert N[i, b] == curves.count_points(ctx, P, alphas[i], b)
