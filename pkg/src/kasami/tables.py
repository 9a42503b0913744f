"""Closed-form value, weight and correlation distributions.

Each ``*_rows`` function instantiates one of the published distribution tables
for concrete parameters and returns ``(value, multiplicity)`` rows.  Rows with
multiplicity zero are kept (callers drop them); rows whose values coincide are
merged by :func:`rows_to_counts`.  Every multiplicity is evaluated in exact
rational arithmetic and must come out a non-negative integer.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CyclotomicInteger, gauss_sum, subfield_gauss_sum
from .errors import MassMismatch
from .field import TowerParams


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


class _Ev:
    """Tiny evaluator: ``P(e)`` is p**e for an exponent that must be integral."""

    def __init__(self, params: TowerParams):
        self.p = params.p
        self.m, self.n, self.d, self.t = params.m, params.n, params.d, params.t

    def P(self, e) -> Fraction:
        e = Fraction(e)
        if e.denominator != 1:
            raise MassMismatch(f"non-integral exponent {e} in a table row")
        return Fraction(self.p) ** int(e)

    @staticmethod
    def integral(x: Fraction) -> int:
        x = Fraction(x)
        if x.denominator != 1 or x < 0:
            raise MassMismatch(f"multiplicity {x} is not a non-negative integer")
        return int(x)


def rows_to_counts(rows) -> dict:
    counts: dict = {}
    for value, mult in rows:
        if mult:
            counts[value] = counts.get(value, 0) + mult
    return counts


def check_mass(counts: dict, expected: int, what: str):
    total = sum(counts.values())
    if total != expected:
        raise MassMismatch(f"{what}: table mass {total} != domain size {expected}")


# -- value distribution of T -------------------------------------------------

def t_rows(params: TowerParams) -> list[tuple[CyclotomicInteger, int]]:
    e = _Ev(params)
    p, m, n, d = e.p, e.m, e.n, e.d
    P, I = e.P, e.integral
    R = lambda c: CyclotomicInteger.rational(p, c)  # noqa: E731
    rows = []
    if params.dprime == d:
        half_rank = subfield_gauss_sum(p, d) * p**m
        rows += [
            (R(p**m), I(P(d) * (P(m) - 1) * (P(m) + 1) ** 2 / (2 * (P(d) + 1)))),
            (R(-p**m), I(P(d) * (P(m) - 1) * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1)))),
            (half_rank, I(P(m - d) * (P(n) - 1) / 2)),
            (-half_rank, I(P(m - d) * (P(n) - 1) / 2)),
            (R(-p ** (m + d)), I((P(m - d) - 1) * (P(n) - 1) / (P(2 * d) - 1))),
        ]
    else:
        X = P(n) - P(n - 2 * d) - P(n - 3 * d) + P(m) - P(m - d) + 1
        Y = P(m) + P(m - d) + P(m - 2 * d) + 1
        rows += [
            (R(-p**m), I(P(3 * d) * (P(m) - 1) * X / ((P(d) + 1) * (P(2 * d) - 1)))),
            (R(p ** (m + d)), I(P(d) * (P(n) - 1) * Y / (P(d) + 1) ** 2)),
            (R(-p ** (m + 2 * d)), I((P(m - d) - 1) * (P(n) - 1) / ((P(d) + 1) * (P(2 * d) - 1)))),
        ]
    rows.append((R(p**n), 1))
    return rows


# -- value distribution of S -------------------------------------------------

def _s_zero_count(e: _Ev, dprime_double: bool) -> int:
    P, m, n, d = e.P, e.m, e.n, e.d
    if not dprime_double:
        inner = P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d) - P(n - 2 * d) + 1
    else:
        inner = (P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d) - P(3 * m - 4 * d)
                 + P(3 * m - 5 * d) + P(n - d) - 2 * P(n - 2 * d) + P(n - 3 * d)
                 - P(n - 4 * d) + 1)
    return e.integral((P(n) - 1) * inner)


def s_rows(params: TowerParams) -> list[tuple[CyclotomicInteger, int]]:
    e = _Ev(params)
    p, m, n, d = e.p, e.m, e.n, e.d
    P, I = e.P, e.integral
    R = lambda c: CyclotomicInteger.rational(p, c)  # noqa: E731
    js = range(1, p)
    rows = []
    if params.dprime == d:
        rows += [
            (R(p**m), I(P(m + d - 1) * (P(m) + 1) * (P(m) + p - 1) * (P(n) - 1) / (2 * (P(d) + 1)))),
            (R(-p**m), I(P(m + d - 1) * (P(m) - 1) * (P(m) - p + 1) * (P(n) - 2 * P(n - d) + 1)
                         / (2 * (P(d) - 1)))),
        ]
        for j in js:
            rows += [
                (R(p**m).times_zeta(j), I(P(m + d - 1) * (P(n) - 1) ** 2 / (2 * (P(d) + 1)))),
                (R(-p**m).times_zeta(j), I(P(m + d - 1) * (P(n) - 1) * (P(n) - 2 * P(n - d) + 1)
                                           / (2 * (P(d) - 1)))),
            ]
        if d % 2 == 1:
            g = gauss_sum(p)
            ex = m + (d - 1) // 2
            for eps in (1, -1):
                rows.append((g * (eps * p**ex), I(P(3 * m - 2 * d - 1) * (P(n) - 1) / 2)))
                for j in js:
                    mult = (P(n - Fraction(3 * d + 1, 2))
                            * (P(m - Fraction(d + 1, 2)) + eps * _legendre(-j, p))
                            * (P(n) - 1) / 2)
                    rows.append(((g * (eps * p**ex)).times_zeta(j), I(mult)))
            rows += [(R(-p ** (m + d)).times_zeta(j),
                      I(P(m - d - 1) * (P(n - 2 * d) - 1) * (P(n) - 1) / (P(2 * d) - 1)))
                     for j in js]
        else:
            ex = m + d // 2
            for eps in (1, -1):
                rows.append((R(eps * p**ex),
                             I(P(n - Fraction(3 * d, 2) - 1) * (P(m - Fraction(d, 2)) + eps * (p - 1))
                               * (P(n) - 1) / 2)))
                rows += [(R(eps * p**ex).times_zeta(j),
                          I(P(n - Fraction(3 * d, 2) - 1) * (P(m - Fraction(d, 2)) - eps)
                            * (P(n) - 1) / 2))
                         for j in js]
            rows += [(R(-p ** (m + d)).times_zeta(j),
                      I(P(m - d - 1) * (P(m - d) - 1) * (P(n) - 1) * (P(m - d) + 1) / (P(2 * d) - 1)))
                     for j in js]
        rows.append((R(-p ** (m + d)),
                     I(P(m - d - 1) * (P(m - d) - 1) * (P(n) - 1) * (P(m - d) - p + 1)
                       / (P(2 * d) - 1))))
        rows.append((R(0), _s_zero_count(e, False)))
    else:
        X = P(n) - P(n - 2 * d) - P(n - 3 * d) + P(m) - P(m - d) + 1
        Y = P(m) + P(m - d) + P(m - 2 * d) + 1
        D3 = (P(d) + 1) * (P(2 * d) - 1)
        rows += [
            (R(-p**m), I(P(m + 3 * d - 1) * (P(m) - 1) * (P(m) - p + 1) * X / D3)),
            (R(p ** (m + d)), I(P(m - 1) * (P(n) - 1) * (P(m - d) + p - 1) * Y / (P(d) + 1) ** 2)),
            (R(-p ** (m + 2 * d)), I(P(m - 2 * d - 1) * (P(m - d) - 1) * (P(m - 2 * d) - p + 1)
                                     * (P(n) - 1) / D3)),
        ]
        for j in js:
            rows += [
                (R(-p**m).times_zeta(j), I(P(m + 3 * d - 1) * (P(n) - 1) * X / D3)),
                (R(p ** (m + d)).times_zeta(j),
                 I(P(m - 1) * (P(n) - 1) * (P(m - d) - 1) * Y / (P(d) + 1) ** 2)),
                (R(-p ** (m + 2 * d)).times_zeta(j),
                 I(P(m - 2 * d - 1) * (P(m - d) - 1) * (P(m - 2 * d) + 1) * (P(n) - 1) / D3)),
            ]
        rows.append((R(0), _s_zero_count(e, True)))
    rows.append((R(p**n), 1))
    return rows


# -- correlation distribution ------------------------------------------------

READINGS = ("corrected", "printed")


def corr_rows(params: TowerParams, reading: str = "corrected"
              ) -> list[tuple[CyclotomicInteger, int]]:
    """Correlation values (S - 1) with multiplicities over all pairs and shifts.

    ``reading="printed"`` reproduces the table exactly as typeset, including the
    row valued -p^(m/2+d) - 1, the (p^n - 1) factor in the d-even p^m - 1 row and
    the d-even rows missing their "- 1".  ``"corrected"`` replaces those by
    -p^(m+d) - 1, (p^n - 2) and the shifted values.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    printed = reading == "printed"
    e = _Ev(params)
    p, m, n, d = e.p, e.m, e.n, e.d
    P, I = e.P, e.integral
    R = lambda c: CyclotomicInteger.rational(p, c)  # noqa: E731
    js = range(1, p)
    rows = []
    if params.dprime == d:
        first = (P(n) - 1) if (printed and d % 2 == 0) else (P(n) - 2)
        rows += [
            (R(p**m - 1), I(P(3 * m + d) * (P(m) + 1) * (P(m - 1) * (P(m) + p - 1) * first + 1)
                            / (2 * (P(d) + 1)))),
            (R(-p**m - 1), I(P(3 * m + d) * (P(m - 1) * (P(m) - p + 1) * (P(n) - 2) + 1)
                             * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1) * (P(m) + 1)))),
        ]
        for j in js:
            rows += [
                (R(p**m).times_zeta(j) - 1,
                 I(P(2 * n + d - 1) * (P(n) - 2) * (P(n) - 1) / (2 * (P(d) + 1)))),
                (R(-p**m).times_zeta(j) - 1,
                 I(P(2 * n + d - 1) * (P(n) - 2) * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1)))),
            ]
        if d % 2 == 1:
            g = gauss_sum(p)
            ex = m + (d - 1) // 2
            for eps in (1, -1):
                rows.append((g * (eps * p**ex) - 1,
                             I(P(2 * n - d) * (P(n - d - 1) * (P(n) - 2) + 1) / 2)))
                for j in js:
                    mult = (P(5 * m - Fraction(3 * d + 1, 2))
                            * (P(m - Fraction(d + 1, 2)) + eps * _legendre(-j, p)) * (P(n) - 2) / 2)
                    rows.append(((g * (eps * p**ex)).times_zeta(j) - 1, I(mult)))
            rows += [(R(-p ** (m + d)).times_zeta(j) - 1,
                      I(P(2 * n - d - 1) * (P(m - d) - 1) * (P(n) - 2) * (P(m - d) + 1)
                        / (P(2 * d) - 1)))
                     for j in js]
        else:
            ex = m + d // 2
            shift = 0 if printed else 1
            for eps in (1, -1):
                rows.append((R(eps * p**ex - shift),
                             I(P(2 * n - d) * (P(m - Fraction(d, 2) - 1) * (P(m - Fraction(d, 2))
                               + eps * (p - 1)) * (P(n) - 2) + 1) / 2)))
                rows += [(R(eps * p**ex).times_zeta(j) - shift,
                          I(P(5 * m - Fraction(3 * d, 2) - 1) * (P(m - Fraction(d, 2)) - eps)
                            * (P(n) - 2) / 2))
                         for j in js]
            rows += [(R(-p ** (m + d)).times_zeta(j) - 1,
                      I(P(2 * n - d - 1) * (P(n - 2 * d) - 1) * (P(n) - 2) / (P(2 * d) - 1)))
                     for j in js]
        big = p ** (Fraction(m, 2) + d) if printed else p ** (m + d)
        if Fraction(big).denominator != 1:
            raise MassMismatch("printed row -p^(m/2+d) - 1 is not an integer here")
        rows.append((R(-int(big) - 1),
                     I(P(3 * m) * (P(m - d) - 1) * (P(m - d - 1) * (P(n) - 2) * (P(m - d) - p + 1) + 1)
                       / (P(2 * d) - 1))))
        zero_inner = P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d) - P(n - 2 * d) + 1
    else:
        X = P(n) - P(n - 2 * d) - P(n - 3 * d) + P(m) - P(m - d) + 1
        Y = P(m) + P(m - d) + P(m - 2 * d) + 1
        D3 = (P(d) + 1) * (P(2 * d) - 1)
        rows += [
            (R(-p**m - 1), I(P(3 * m + 3 * d) * (P(m - 1) * (P(m) - p + 1) * (P(n) - 2) + 1) * X
                             / (D3 * (P(m) + 1)))),
            (R(p ** (m + d) - 1), I(P(3 * m + d) * (P(m - d - 1) * (P(m - d) + p - 1) * (P(n) - 2) + 1)
                                    * Y / (P(d) + 1) ** 2)),
            (R(-p ** (m + 2 * d) - 1), I(P(3 * m) * (P(m - d) - 1)
                                         * (P(m - 2 * d - 1) * (P(m - 2 * d) - p + 1) * (P(n) - 2) + 1)
                                         / D3)),
        ]
        for j in js:
            rows += [
                (R(-p**m).times_zeta(j) - 1, I(P(2 * n + 3 * d - 1) * (P(n) - 2) * X / D3)),
                (R(p ** (m + d)).times_zeta(j) - 1,
                 I(P(2 * n - 1) * (P(n) - 2) * (P(m - d) - 1) * Y / (P(d) + 1) ** 2)),
                (R(-p ** (m + 2 * d)).times_zeta(j) - 1,
                 I(P(2 * n - 2 * d - 1) * (P(m - d) - 1) * (P(m - 2 * d) + 1) * (P(n) - 2) / D3)),
            ]
        zero_inner = (P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d) - P(3 * m - 4 * d)
                      + P(3 * m - 5 * d) + P(n - d) - 2 * P(n - 2 * d) + P(n - 3 * d)
                      - P(n - 4 * d) + 1)
    rows.append((R(-1), I(P(3 * m) * (P(n) - 2) * zero_inner)))
    rows.append((R(p**n - 1), I(P(3 * m))))
    return rows


def combine_corr(s_counts: dict, t_counts: dict, params: TowerParams) -> dict:
    """M_kappa = p^(3m) * ((q-2) s_kappa + t_kappa) / (q-1), keyed by kappa - 1."""
    q, p3m = params.q, params.p ** (3 * params.m)
    out = {}
    for kappa in set(s_counts) | set(t_counts):
        num = (q - 2) * s_counts.get(kappa, 0) + t_counts.get(kappa, 0)
        if num % (q - 1):
            raise MassMismatch(f"combining rule gives a fractional count at {kappa}")
        if num:
            out[kappa - 1] = p3m * num // (q - 1)
    return out


# -- weight distributions ----------------------------------------------------

def c1_rows(params: TowerParams) -> list[tuple[int, int]]:
    e = _Ev(params)
    p, m, n, d, t = e.p, e.m, e.n, e.d, e.t
    P, I = e.P, e.integral
    pt = p**t
    W = lambda x: I((pt - 1) * x)  # noqa: E731
    rows = []
    if params.dprime == d:
        rows += [
            (W(P(n - t) - P(m - t)), I(P(d) * (P(m) - 1) * (P(m) + 1) ** 2 / (2 * (P(d) + 1)))),
            (W(P(n - t) + P(m - t)), I(P(d) * (P(m) - 1) * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1)))),
            (W(P(n - t) + P(m + d - t)), I((P(m - d) - 1) * (P(n) - 1) / (P(2 * d) - 1))),
        ]
        if (d // t) % 2 == 1:
            rows.append((W(P(n - t)), I(P(m - d) * (P(n) - 1))))
        else:
            half = I(P(m - d) * (P(n) - 1) / 2)
            rows += [(W(P(n - t) - P(m + Fraction(d, 2) - t)), half),
                     (W(P(n - t) + P(m + Fraction(d, 2) - t)), half)]
    else:
        X = P(n) - P(n - 2 * d) - P(n - 3 * d) + P(m) - P(m - d) + 1
        Y = P(m) + P(m - d) + P(m - 2 * d) + 1
        D3 = (P(d) + 1) * (P(2 * d) - 1)
        rows += [
            (W(P(n - t) - P(m + d - t)), I(P(d) * (P(n) - 1) * Y / (P(d) + 1) ** 2)),
            (W(P(n - t) + P(m - t)), I(P(3 * d) * (P(m) - 1) * X / D3)),
            (W(P(n - t) + P(m + 2 * d - t)), I((P(m - d) - 1) * (P(n) - 1) / D3)),
        ]
    rows.append((0, 1))
    return rows


def c2_rows(params: TowerParams, reading: str = "corrected") -> list[tuple[int, int]]:
    """Weights of the three-term code.

    In the d' = 2d case the row of weight (p^t-1)p^(n-t) - p^(m+2d-t) is typeset
    with a factor (p^(m-2d) - 1); the value distribution of S forces
    (p^(m-2d) + 1), which is what ``reading="corrected"`` uses.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    fix = -1 if reading == "printed" else 1
    e = _Ev(params)
    p, m, n, d, t = e.p, e.m, e.n, e.d, e.t
    P, I = e.P, e.integral
    pt = P(t)
    base = (pt - 1) * P(n - t)
    rows = []
    if params.dprime == d:
        rows += [
            (I(base - (pt - 1) * P(m - t)),
             I(P(m + d - t) * (P(m) + pt - 1) * (P(m) - 1) * (P(m) + 1) ** 2 / (2 * (P(d) + 1)))),
            (I(base + (pt - 1) * P(m - t)),
             I(P(m + d - t) * (P(m) - pt + 1) * (P(m) - 1) * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1)))),
            (I(base + P(m - t)), I(P(m + d - t) * (pt - 1) * (P(n) - 1) ** 2 / (2 * (P(d) + 1)))),
            (I(base - P(m - t)),
             I(P(m + d - t) * (pt - 1) * (P(n) - 1) * (P(n) - 2 * P(n - d) + 1) / (2 * (P(d) - 1)))),
            (I(base + (pt - 1) * P(m + d - t)),
             I(P(m - d - t) * (P(m - d) - 1) * (P(m - d) - pt + 1) * (P(n) - 1) / (P(2 * d) - 1))),
            (I(base - P(m + d - t)),
             I(P(m - d - t) * (pt - 1) * (P(n - 2 * d) - 1) * (P(n) - 1) / (P(2 * d) - 1))),
        ]
        if (d // t) % 2 == 1:
            h = Fraction(n - d - t, 2)
            rows += [
                (I(base - P(m + Fraction(d - t, 2))),
                 I(P(m - d) * (pt - 1) * (P(n - d - t) + P(h)) * (P(n) - 1) / 2)),
                (I(base + P(m + Fraction(d - t, 2))),
                 I(P(m - d) * (pt - 1) * (P(n - d - t) - P(h)) * (P(n) - 1) / 2)),
                (I(base), I((P(n) - 1) * (P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d)
                                          + P(3 * m - 2 * d - t) - P(n - 2 * d) + 1))),
            ]
        else:
            u = P(m - t - Fraction(d, 2))
            v = P(m + Fraction(d, 2) - t)
            rows += [
                (I((pt - 1) * (P(n - t) - v)), I(P(m - d) * (P(n - d - t) + (pt - 1) * u) * (P(n) - 1) / 2)),
                (I((pt - 1) * (P(n - t) + v)), I(P(m - d) * (P(n - d - t) - (pt - 1) * u) * (P(n) - 1) / 2)),
                (I(base - v), I(P(m - d) * (pt - 1) * (P(n - d - t) + u) * (P(n) - 1) / 2)),
                (I(base + v), I(P(m - d) * (pt - 1) * (P(n - d - t) - u) * (P(n) - 1) / 2)),
                (I(base), I((P(n) - 1) * (P(3 * m - d) - P(3 * m - 2 * d) + P(3 * m - 3 * d)
                                          - P(n - 2 * d) + 1))),
            ]
    else:
        X = P(n) - P(n - 2 * d) - P(n - 3 * d) + P(m) - P(m - d) + 1
        Y = P(m) + P(m - d) + P(m - 2 * d) + 1
        D3 = (P(d) + 1) * (P(2 * d) - 1)
        rows += [
            (I(base + (pt - 1) * P(m - t)), I(P(m + 3 * d - t) * (P(m) - pt + 1) * (P(m) - 1) * X / D3)),
            (I(base - P(m - t)), I(P(m + 3 * d - t) * (pt - 1) * (P(n) - 1) * X / D3)),
            (I(base - (pt - 1) * P(m + d - t)),
             I(P(m - t) * (P(m - d) + pt - 1) * (P(n) - 1) * Y / (P(d) + 1) ** 2)),
            (I(base + P(m + d - t)),
             I(P(m - t) * (pt - 1) * (P(m - d) - 1) * (P(n) - 1) * Y / (P(d) + 1) ** 2)),
            (I(base + (pt - 1) * P(m + 2 * d - t)),
             I(P(m - 2 * d - t) * (P(m - 2 * d) - pt + 1) * (P(m - d) - 1) * (P(n) - 1) / D3)),
            (I(base - P(m + 2 * d - t)),
             I(P(m - 2 * d - t) * (pt - 1) * (P(m - 2 * d) + fix) * (P(m - d) - 1) * (P(n) - 1) / D3)),
            (I(base), _s_zero_count(e, True)),
        ]
    rows.append((0, 1))
    return rows


# -- moments and gamma counts ------------------------------------------------

def t_moment_closed(params: TowerParams, order: int) -> int:
    from .errors import Order3NotCovered

    p, m, n, d = params.p, params.m, params.n, params.d
    p3m = p ** (3 * m)
    if order == 1:
        return p3m
    if order == 2:
        if params.dprime == 2 * d:
            return (p ** (n + d) + p**n - p**d) * p3m
        return p3m if p**d % 4 == 3 else (2 * p**n - 1) * p3m
    if order == 3:
        if params.dprime != d:
            raise Order3NotCovered("closed third moment requires d' = d")
        return (p ** (n + d) + p**n - p**d) * p3m
    raise ValueError("order must be 1, 2 or 3")


def gamma_count_closed(params: TowerParams, i: int, eps: int, a_is_zero: bool,
                       eta_a: int) -> int:
    """Number of gamma with phi + gamma solvable and trace value a (four cases).

    ``eps`` is the sign of T(alpha, beta) in the convention where the
    both-odd case reads p^(n-id-t) + eps * eta'(a) * p^((n-id-t)/2).
    """
    e = _Ev(params)
    p, n, d, t, s = e.p, e.n, e.d, e.t, params.s
    P, I = e.P, e.integral
    both_odd = (s - i) % 2 == 1 and (d // t) % 2 == 1
    if both_odd:
        if a_is_zero:
            return I(P(n - i * d - t))
        return I(P(n - i * d - t) + eps * eta_a * P(Fraction(n - i * d - t, 2)))
    if a_is_zero:
        return I(P(n - i * d - t) + eps * (P(t) - 1) * P(Fraction(n - i * d, 2) - t))
    return I(P(n - i * d - t) - eps * P(Fraction(n - i * d, 2) - t))
