"""The cyclic codes C1 (parity check h2 h3) and C2 (parity check h1 h2 h3) over F_{p^t}.

Codewords are parametrized by traces,
    c_i = Tr^m_t(alpha pi^(i(p^m+1))) + Tr^n_t(beta pi^(i(p^k+1))) [+ Tr^n_t(gamma pi^i)],
for i = 0..q-2, and weights are read off exponential sums:
    w = (p^t - 1) p^(n-t) - R / p^t,   R = sum_{omega in F_{p^t}^*} T(omega alpha, omega beta)
(or S with omega gamma as well).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tables
from .cyclo import CyclotomicInteger
from .distribution import WeightDistribution
from .errors import (AlphaNotInSubfield, CoefficientsNotInSubfield,
                     MissingGamma, ParameterError, UnexpectedGamma)
from .field import FieldCtx, TowerParams
from .sums import (_budget, alpha_domain, auto_s_mode, eval_S, eval_T, omega_sum,
                   s_distribution, s_table, t_distribution, t_table)

CODES = ("C1", "C2")


@dataclass(frozen=True)
class CodeSpec:
    params: TowerParams
    code: str = "C1"

    def __post_init__(self):
        if self.code not in CODES:
            raise ParameterError(f"code must be one of {CODES}")

    @property
    def length(self) -> int:
        return self.params.q - 1

    @property
    def dimension(self) -> int:
        n0 = self.params.n0
        return 3 * n0 // 2 if self.code == "C1" else 5 * n0 // 2

    @property
    def exponents(self) -> tuple[int, int, int]:
        p = self.params.p
        return (1, p**self.params.k + 1, p**self.params.m + 1)

    @property
    def uses_gamma(self) -> bool:
        return self.code == "C2"


# -- minimal and parity-check polynomials -------------------------------------

def cyclotomic_coset(e: int, modulus: int, r: int) -> list[int]:
    """{e r^j mod modulus}, in order of first appearance."""
    out, x = [], e % modulus
    while x not in out:
        out.append(x)
        x = (x * r) % modulus
    return out


def poly_mul(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    """Product of coefficient lists (lowest degree first) over F_q."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return out


def poly_eval(ctx: FieldCtx, f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def min_poly(ctx: FieldCtx, params: TowerParams, e: int, t: int | None = None) -> list[int]:
    """Minimal polynomial of pi^(-e) over F_{p^t}, monic, lowest degree first."""
    t = params.t if t is None else t
    if params.d % t:
        raise ParameterError(f"t = {t} must divide d = {params.d}")
    coset = cyclotomic_coset(-e, ctx.order, params.p**t)
    f = [1]
    for c in coset:
        f = poly_mul(ctx, f, [ctx.neg(ctx.power_of_primitive(c)), 1])
    if not all(ctx.in_subfield(c, t) for c in f):
        raise CoefficientsNotInSubfield("minimal polynomial left F_{p^t}")
    return f


def parity_check_poly(ctx: FieldCtx, spec: CodeSpec) -> list[int]:
    e1, e2, e3 = spec.exponents
    t = spec.params.t
    h = poly_mul(ctx, min_poly(ctx, spec.params, e2, t), min_poly(ctx, spec.params, e3, t))
    if spec.code == "C2":
        h = poly_mul(ctx, h, min_poly(ctx, spec.params, e1, t))
    return h


def annihilated(ctx: FieldCtx, word, h: list[int]) -> bool:
    """Whether c(x) h(x) = 0 mod x^l - 1."""
    L = len(word)
    out = [0] * L
    for i, c in enumerate(word):
        if c:
            for j, y in enumerate(h):
                if y:
                    out[(i + j) % L] = ctx.add(out[(i + j) % L], ctx.mul(int(c), y))
    return not any(out)


# -- codewords ---------------------------------------------------------------

def _check_gamma(spec: CodeSpec, gamma):
    if spec.uses_gamma and gamma is None:
        raise MissingGamma("C2 codewords need gamma")
    if not spec.uses_gamma and gamma is not None:
        raise UnexpectedGamma("C1 codewords take no gamma")


def _trace_rows(ctx: FieldCtx, coefs, e: int, from_deg: int, t: int) -> np.ndarray:
    """Tr^{from_deg}_t(c pi^(i e)) for c in coefs (rows) and i = 0..q-2 (columns)."""
    i = np.arange(ctx.order, dtype=np.int64)
    y = ctx.power_of_primitive(i * e)
    coefs = np.asarray(coefs, dtype=np.int64)
    return ctx.trace(ctx.mul(coefs[:, None], y[None, :]), from_deg, t)


def codeword(ctx: FieldCtx, spec: CodeSpec, alpha: int, beta: int, gamma: int | None = None
             ) -> np.ndarray:
    _check_gamma(spec, gamma)
    P = spec.params
    if not ctx.in_subfield(alpha, P.m):
        raise AlphaNotInSubfield(f"alpha = {alpha} is not in F_(p^{P.m})")
    e1, e2, e3 = spec.exponents
    w = ctx.add(_trace_rows(ctx, [alpha], e3, P.m, P.t)[0], _trace_rows(ctx, [beta], e2, P.n, P.t)[0])
    if spec.uses_gamma:
        w = ctx.add(w, _trace_rows(ctx, [gamma], e1, P.n, P.t)[0])
    return w


def all_codewords(ctx: FieldCtx, spec: CodeSpec, budget=None) -> np.ndarray:
    """Every parametrized codeword, rows ordered by (alpha, beta[, gamma])."""
    P = spec.params
    e1, e2, e3 = spec.exponents
    alphas = alpha_domain(ctx, P)
    field_elems = np.arange(ctx.q, dtype=np.int64)
    count = len(alphas) * ctx.q * (ctx.q if spec.uses_gamma else 1)
    _budget(budget).check(count * spec.length, f"{spec.code} codeword enumeration")
    A = _trace_rows(ctx, alphas, e3, P.m, P.t)
    B = _trace_rows(ctx, field_elems, e2, P.n, P.t)
    AB = ctx.add(A[:, None, :], B[None, :, :]).reshape(-1, spec.length)
    if not spec.uses_gamma:
        return AB
    G = _trace_rows(ctx, field_elems, e1, P.n, P.t)
    return ctx.add(AB[:, None, :], G[None, :, :]).reshape(-1, spec.length)


def codeword_weight(ctx: FieldCtx, spec: CodeSpec, alpha: int, beta: int,
                    gamma: int | None = None, mode: str = "direct") -> int:
    _check_gamma(spec, gamma)
    if mode == "direct":
        return int(np.count_nonzero(codeword(ctx, spec, alpha, beta, gamma)))
    if mode != "sum":
        raise ValueError("mode must be 'direct' or 'sum'")
    P = spec.params
    R = CyclotomicInteger.rational(P.p, 0)
    for w in ctx.subfield(P.t).tolist()[1:]:
        a, b = ctx.mul(w, alpha), ctx.mul(w, beta)
        v = eval_S(ctx, P, a, b, ctx.mul(w, gamma)) if spec.uses_gamma else eval_T(ctx, P, a, b)
        R = R + v
    return weight_from_R(P, R.to_int())


def weight_from_R(params: TowerParams, R):
    pt = params.p**params.t
    num = params.p ** (params.n - params.t) * (pt - 1) * pt - R
    if np.any(np.asarray(num) % pt):
        raise ArithmeticError("weight formula gave a non-integer")
    return num // pt


# -- distributions -----------------------------------------------------------

def weight_distribution(ctx: FieldCtx, spec: CodeSpec, mode: str = "brute",
                        workers: int | None = 1, budget=None) -> WeightDistribution:
    """Weight distribution by ``brute`` (every parameter via cached sum tables),
    ``auto`` (brute unless the S table is large and t = 1, then pushforward),
    ``direct`` (materialized codewords), ``pushforward`` (t = 1 only: image of the
    value distribution, S taken from the hybrid route) or ``theorem``."""
    P = spec.params
    if mode == "auto":
        big = spec.uses_gamma and auto_s_mode(P) == "hybrid" and P.t == 1
        mode = "pushforward" if big else "brute"
    if mode == "theorem":
        rows = tables.c1_rows(P) if spec.code == "C1" else tables.c2_rows(P)
        counts = tables.rows_to_counts(rows)
    elif mode == "brute":
        if spec.uses_gamma:
            hist = s_table(ctx, P, workers, budget)
        else:
            hist = t_table(ctx, P, workers, budget)
        weights = weight_from_R(P, omega_sum(ctx, P, hist, P.t, spec.uses_gamma))
        w, c = np.unique(weights, return_counts=True)
        counts = dict(zip(w.tolist(), c.tolist()))
    elif mode == "pushforward":
        # t = 1: omega runs over F_p^*, so R is the trace of the sum value to Q
        if P.t != 1:
            raise ParameterError("pushforward mode needs t = 1")
        if spec.uses_gamma:
            dist = s_distribution(ctx, P, "hybrid", workers, budget)
        else:
            dist = t_distribution(ctx, P, "brute", workers, budget)
        counts = {}
        for v, c in dist.counts.items():
            R = sum((v.galois(u) for u in range(1, P.p)), CyclotomicInteger.rational(P.p, 0))
            w = weight_from_R(P, R.to_int())
            counts[w] = counts.get(w, 0) + c
    elif mode == "direct":
        words = all_codewords(ctx, spec, budget)
        w, c = np.unique(np.count_nonzero(words, axis=1), return_counts=True)
        counts = dict(zip(w.tolist(), c.tolist()))
    else:
        raise ValueError("mode must be 'auto', 'brute', 'direct', 'pushforward' or 'theorem'")
    return WeightDistribution(spec.code, P, spec.length, spec.dimension, counts).check_mass()


__all__ = ["CodeSpec", "min_poly", "parity_check_poly", "codeword", "all_codewords",
           "codeword_weight", "weight_distribution", "annihilated", "cyclotomic_coset"]
