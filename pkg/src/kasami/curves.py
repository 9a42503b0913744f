"""Affine points on y^(p^d) - y = alpha x^(p^m+1)/2 + beta x^(p^k+1) over F_q."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclo import CyclotomicInteger
from .errors import AlphaNotInSubfield, ParameterError
from .field import FieldCtx, TowerParams
from .sums import eval_T


@dataclass(frozen=True)
class CurveCount:
    params: TowerParams
    alpha: int
    beta: int
    N: int
    T: CyclotomicInteger
    identity_holds: bool | None  # None when the identity is not asserted (d' = d)

    def to_json(self) -> dict:
        T = self.T.to_int() if self.T.is_rational() else self.T.key()
        return {"alpha": self.alpha, "beta": self.beta, "N": self.N, "T": T,
                "identity_holds": self.identity_holds}


def curve_rhs(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> np.ndarray:
    x = np.arange(ctx.q, dtype=np.int64)
    half_alpha = ctx.mul(params.inv2, alpha)
    a = ctx.mul(half_alpha, ctx.pow(x, params.p**params.m + 1))
    b = ctx.mul(beta, ctx.pow(x, params.p**params.k + 1))
    return ctx.add(a, b)


def count_points(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> int:
    """Fiber rule: y^(p^d) - y = c has p^d roots iff Tr^n_d(c) = 0, else none."""
    if not ctx.in_subfield(alpha, params.m):
        raise AlphaNotInSubfield(f"alpha = {alpha} is not in F_(p^{params.m})")
    tr = ctx.trace(curve_rhs(ctx, params, alpha, beta), params.n, params.d)
    return int(np.count_nonzero(tr == 0)) * params.q0


def count_points_naive(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int,
                       max_q: int = 81) -> int:
    """Double loop over (x, y); only for small fields."""
    if ctx.q > max_q:
        raise ParameterError(f"naive point count limited to q <= {max_q}")
    q0 = params.q0
    rhs = curve_rhs(ctx, params, alpha, beta).tolist()
    total = 0
    for y in range(ctx.q):
        lhs = ctx.sub(ctx.pow(y, q0), y)
        total += sum(1 for c in rhs if c == lhs)
    return total


def artin_schreier_count(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> CurveCount:
    N = count_points(ctx, params, alpha, beta)
    T = eval_T(ctx, params, alpha, beta)
    holds = None
    if params.dprime == 2 * params.d and (alpha, beta) != (0, 0):
        rhs = T * (params.q0 - 1) + params.q
        holds = (rhs == N) and N % (params.q0**2 - 1) == params.q0 % (params.q0**2 - 1)
    return CurveCount(params, alpha, beta, N, T, holds)


def count_points_table(ctx: FieldCtx, params: TowerParams) -> np.ndarray:
    """N(alpha, beta) for every alpha in F_{p^m} (sorted codes) and every beta."""
    x = np.arange(ctx.q, dtype=np.int64)
    betas = np.arange(ctx.q, dtype=np.int64)
    kas = ctx.mul(betas[:, None], ctx.pow(x, params.p**params.k + 1)[None, :])
    norm = ctx.pow(x, params.p**params.m + 1)
    alphas = ctx.subfield(params.m)
    out = np.empty((len(alphas), ctx.q), dtype=np.int64)
    for i, a in enumerate(alphas.tolist()):
        rhs = ctx.add(kas, ctx.mul(ctx.mul(params.inv2, a), norm)[None, :])
        tr = ctx.trace(rhs, params.n, params.d)
        out[i] = np.count_nonzero(tr == 0, axis=1) * params.q0
    return out


def identity_check(ctx: FieldCtx, params: TowerParams, t_values: np.ndarray) -> dict:
    """Compare N with q + (p^d - 1) T over all (alpha, beta) != (0, 0).

    ``t_values`` holds the rational values of T in the same (alpha, beta) layout
    as :func:`count_points_table`.
    """
    N = count_points_table(ctx, params)
    mask = np.ones_like(N, dtype=bool)
    alphas = ctx.subfield(params.m)
    mask[np.flatnonzero(alphas == 0)[0], 0] = False
    q0 = params.q0
    ident = (N == params.q + (q0 - 1) * t_values) | ~mask
    cong = (N % (q0**2 - 1) == q0 % (q0**2 - 1)) | ~mask
    return {"pairs": int(mask.sum()), "identity": int(ident[mask].sum()),
            "congruence": int(cong[mask].sum())}
