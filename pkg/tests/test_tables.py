"""Closed-form tables: masses, internal consistency, and the two readings."""

import pytest

from kasami import tables
from kasami.cyclo import CyclotomicInteger as C
from kasami.errors import MassMismatch, Order3NotCovered
from kasami.field import TowerParams

# (p, m, k, t), mixing d' = d and d' = 2d, d = 1, 2, 3 and p = 3, 5, 7
PARAMS = [
    (3, 2, 1, 1), (3, 2, 0, 1), (3, 2, 0, 2), (3, 2, 3, 1), (3, 3, 1, 1), (3, 3, 2, 1),
    (3, 4, 1, 1), (3, 4, 2, 1), (3, 4, 2, 2), (3, 4, 0, 2), (3, 6, 2, 2), (3, 6, 3, 3),
    (5, 2, 1, 1), (5, 3, 1, 1), (7, 2, 1, 1), (3, 5, 1, 1), (5, 4, 2, 2),
]


def mass(rows):
    return sum(tables.rows_to_counts(rows).values())


@pytest.mark.parametrize("args", PARAMS)
def test_value_table_masses(args):
    P = TowerParams(*args)
    assert mass(tables.t_rows(P)) == P.p**P.m * P.q
    assert mass(tables.s_rows(P)) == P.p**P.m * P.q**2
    assert mass(tables.corr_rows(P)) == P.p ** (6 * P.m) * (P.q - 1)


@pytest.mark.parametrize("args", PARAMS)
def test_weight_table_masses(args):
    P = TowerParams(*args)
    assert mass(tables.c1_rows(P)) == P.p ** (P.t * 3 * P.n0 // 2)
    assert mass(tables.c2_rows(P)) == P.p ** (P.t * 5 * P.n0 // 2)


@pytest.mark.parametrize("args", PARAMS)
def test_correlation_table_is_combining_rule(args):
    P = TowerParams(*args)
    s = tables.rows_to_counts(tables.s_rows(P))
    t = tables.rows_to_counts(tables.t_rows(P))
    assert tables.combine_corr(s, t, P) == tables.rows_to_counts(tables.corr_rows(P))


@pytest.mark.parametrize("args", [a for a in PARAMS if a[3] == 1])
def test_weight_tables_are_pushforwards(args):
    """With t = 1 the weight is read from the Galois trace of the sum value."""
    P = TowerParams(*args)
    zero = tables.rows_to_counts([])
    for rows, wrows in ((tables.t_rows(P), tables.c1_rows(P)),
                        (tables.s_rows(P), tables.c2_rows(P))):
        push = dict(zero)
        for v, c in tables.rows_to_counts(rows).items():
            R = sum((v.galois(u) for u in range(1, P.p)), v * 0).to_int()
            w = (P.p ** (P.n - 1) * (P.p - 1) * P.p - R) // P.p
            push[w] = push.get(w, 0) + c
        assert push == tables.rows_to_counts(wrows)


def test_printed_readings_fail_where_corrected_hold():
    # at (3,2,1) the printed correlation rows still have the right mass but other values
    P = TowerParams(3, 2, 1)
    printed = tables.rows_to_counts(tables.corr_rows(P, "printed"))
    corrected = tables.rows_to_counts(tables.corr_rows(P, "corrected"))
    assert sum(printed.values()) == sum(corrected.values())
    assert printed != corrected
    # at (3,2,0) the printed rows are not even integral
    with pytest.raises(MassMismatch):
        tables.corr_rows(TowerParams(3, 2, 0), "printed")
    # the d' = 2d weight table as printed loses mass
    P = TowerParams(3, 3, 1)
    assert mass(tables.c2_rows(P, "printed")) != mass(tables.c2_rows(P))


def test_spot_values_at_321():
    P = TowerParams(3, 2, 1)
    R = lambda x: C.rational(3, x)  # noqa: E731
    t = tables.rows_to_counts(tables.t_rows(P))
    assert [t[R(v)] for v in (81, -27, 9, -9)] == [1, 20, 300, 168]
    s = tables.rows_to_counts(tables.s_rows(P))
    assert [s[R(v)] for v in (9, 0, 81)] == [9900, 14480, 1]
    c1 = tables.rows_to_counts(tables.c1_rows(P))
    assert c1 == {0: 1, 48: 300, 54: 240, 60: 168, 72: 20}
    corr = tables.rows_to_counts(tables.corr_rows(P))
    assert corr[R(80)] == 729 and corr[R(-1)] == 10423971


def test_moment_closed_forms():
    assert tables.t_moment_closed(TowerParams(3, 2, 1), 1) == 729
    assert tables.t_moment_closed(TowerParams(3, 2, 1), 2) == 729
    assert tables.t_moment_closed(TowerParams(3, 2, 1), 3) == 234009
    with pytest.raises(Order3NotCovered):
        tables.t_moment_closed(TowerParams(3, 3, 1), 3)


def test_combining_rule_rejects_fractional_counts():
    with pytest.raises(MassMismatch):
        tables.combine_corr({0: 1}, {}, TowerParams(3, 2, 1))


def test_gamma_counts_sum_over_trace_values():
    # summing the four cases over a in F_(p^t) gives p^(n - i d)
    for args in PARAMS:
        P = TowerParams(*args)
        for i in (0, 1, 2):
            if P.s - i < 0 or (P.n - i * P.d) < P.t:
                continue
            for eps in (1, -1):
                try:
                    zero = tables.gamma_count_closed(P, i, eps, True, 0)
                    pos = tables.gamma_count_closed(P, i, eps, False, 1)
                    neg = tables.gamma_count_closed(P, i, eps, False, -1)
                except MassMismatch:
                    continue  # (i, parity) combination does not occur for these parameters
                half = (P.p**P.t - 1) // 2
                both_odd = (P.s - i) % 2 == 1 and (P.d // P.t) % 2 == 1
                total = zero + half * (pos + neg) if both_odd else zero + 2 * half * pos
                assert total == P.p ** (P.n - i * P.d)
