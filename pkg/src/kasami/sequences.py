"""The p-ary family a_{alpha,beta}(lambda) and its correlation values.

    a_{alpha,beta}(lambda) = Tr^m_1(alpha pi^(lambda(p^m+1)))
                             + Tr^n_1(beta pi^(lambda(p^k+1)) + pi^lambda),  0 <= lambda <= q-2.

The correlation of two members at shift tau equals S(alpha', beta', gamma') - 1 with
alpha' = alpha1 - alpha2 pi^(tau(p^m+1)), beta' = beta1 - beta2 pi^(tau(p^k+1)),
gamma' = 1 - pi^tau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tables
from .cyclo import CyclotomicInteger
from .distribution import ValueDistribution
from .errors import AlphaNotInSubfield, TauOutOfRange
from .field import FieldCtx, TowerParams
from .sums import eval_S, histogram_counts, s_table


@dataclass(frozen=True)
class SequenceFamily:
    params: TowerParams

    @property
    def period(self) -> int:
        return self.params.q - 1

    @property
    def size(self) -> int:
        return self.params.p ** (3 * self.params.m)


def sequence(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> list[int]:
    if not ctx.in_subfield(alpha, params.m):
        raise AlphaNotInSubfield(f"alpha = {alpha} is not in F_(p^{params.m})")
    lam = np.arange(ctx.order, dtype=np.int64)
    p, m, k, n = params.p, params.m, params.k, params.n
    a = ctx.trace(ctx.mul(alpha, ctx.power_of_primitive(lam * (p**m + 1))), m, 1)
    inner = ctx.add(ctx.mul(beta, ctx.power_of_primitive(lam * (p**k + 1))),
                    ctx.power_of_primitive(lam))
    return ((a + ctx.trace(inner, n, 1)) % p).tolist()


def shifted_parameters(ctx: FieldCtx, params: TowerParams, pair1, pair2, tau: int):
    """(alpha', beta', gamma') for the pair of members and the shift tau."""
    (a1, b1), (a2, b2) = pair1, pair2
    p, m, k = params.p, params.m, params.k
    ap = ctx.sub(a1, ctx.mul(a2, ctx.power_of_primitive(tau * (p**m + 1))))
    bp = ctx.sub(b1, ctx.mul(b2, ctx.power_of_primitive(tau * (p**k + 1))))
    gp = ctx.sub(1, ctx.power_of_primitive(tau))
    return ap, bp, gp


def correlation(ctx: FieldCtx, params: TowerParams, pair1, pair2, tau: int,
                mode: str = "direct") -> CyclotomicInteger:
    L = params.q - 1
    if not 0 <= tau < L:
        raise TauOutOfRange(f"tau = {tau} not in [0, {L - 1}]")
    if mode == "via_S":
        return eval_S(ctx, params, *shifted_parameters(ctx, params, pair1, pair2, tau)) - 1
    if mode != "direct":
        raise ValueError("mode must be 'direct' or 'via_S'")
    s1 = np.array(sequence(ctx, params, *pair1))
    s2 = np.array(sequence(ctx, params, *pair2))
    e = (s1 - np.roll(s2, -tau)) % params.p
    return CyclotomicInteger(params.p, np.bincount(e, minlength=params.p).tolist())


def correlation_distribution(ctx: FieldCtx, params: TowerParams, mode: str = "brute",
                             reading: str = "corrected", workers: int | None = 1,
                             budget=None) -> ValueDistribution:
    """Correlation values over all ordered member pairs and all shifts.

    Brute mode reads S over alpha', beta' and gamma' != 1 from the cached S table;
    for each fixed second member the shift map hits every such triple once, so
    the multiset is that of S - 1 scaled by the family size.
    """
    fam = SequenceFamily(params)
    domain = fam.size**2 * fam.period
    if mode == "theorem":
        counts = tables.rows_to_counts(tables.corr_rows(params, reading))
    elif mode == "brute":
        hist = s_table(ctx, params, workers, budget)
        keep = np.ones(ctx.q, dtype=bool)
        keep[1] = False
        base = histogram_counts(hist[:, :, keep], params.p)
        counts = {v - 1: c * fam.size for v, c in base.items()}
    else:
        raise ValueError("mode must be 'brute' or 'theorem'")
    return ValueDistribution(params, counts, domain, kind="corr").check_mass()


def reading_report(ctx: FieldCtx, params: TowerParams, brute: ValueDistribution | None = None,
                   workers: int | None = 1, budget=None) -> dict:
    """Which typeset reading of the correlation table the enumerated data supports."""
    if brute is None:
        brute = correlation_distribution(ctx, params, "brute", workers=workers, budget=budget)
    out = {}
    for reading in tables.READINGS:
        try:
            th = tables.rows_to_counts(tables.corr_rows(params, reading))
            out[reading] = th == {k: v for k, v in brute.counts.items() if v}
        except Exception as exc:  # a reading may not even be well formed here
            out[reading] = f"unavailable: {exc}"
    return out
