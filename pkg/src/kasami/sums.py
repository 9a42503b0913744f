"""Exact evaluation and distributions of

    T(alpha, beta)        = sum_x zeta^(Tr^m_1(alpha x^(p^m+1)) + Tr^n_1(beta x^(p^k+1)))
    S(alpha, beta, gamma) = sum_x zeta^(... + Tr^n_1(gamma x)).

Single values (``eval_T``/``eval_S``) go through the subfield trace maps of
:class:`FieldCtx`.  Whole tables use a faster route: every trace is read from the
absolute-trace-of-pi^e table, and Tr^m_1(w) = Tr^n_1(w)/2 for w in F_{p^m}.
Sums are kept as exponent histograms (length-p count vectors) and canonicalized
only when turned into :class:`CyclotomicInteger`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tables
from .cyclo import CyclotomicInteger, classify_value, subfield_gauss_sum
from .distribution import ValueDistribution
from .errors import (AlphaNotInSubfield, BudgetExceeded, Order3NotCovered, UnrecognizedValue,
                     ZeroPair)
from .field import DEFAULT_MAX_Q, FieldCtx, TowerParams, get_field
from .parallel import map_chunks, resolve_workers
from .quadform import kernel_sizes, phi_values

DEFAULT_BUDGET = 2 * 10**8
# above this many (alpha, beta, gamma) triples "auto" uses the rank + gamma-fiber route
HYBRID_THRESHOLD = 10**6


@dataclass(frozen=True)
class Budget:
    """Upper bound on the number of summand evaluations a brute-force run may use."""

    max_terms: int = DEFAULT_BUDGET

    def check(self, terms: int, what: str):
        if terms > self.max_terms:
            raise BudgetExceeded(f"{what} needs {terms} terms, budget is {self.max_terms}")


def _budget(budget) -> Budget:
    if budget is None:
        return Budget()
    return budget if isinstance(budget, Budget) else Budget(int(budget))


# -- domains and single evaluations ------------------------------------------

def alpha_domain(ctx: FieldCtx, params: TowerParams) -> np.ndarray:
    return ctx.subfield(params.m)


def _check_alpha(ctx, params, alpha):
    if not ctx.in_subfield(alpha, params.m):
        raise AlphaNotInSubfield(f"alpha = {alpha} is not in F_(p^{params.m})")


def exponents_direct(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int,
                     gamma: int = 0) -> np.ndarray:
    """Trace exponent of the summand at every x, via the subfield trace maps."""
    _check_alpha(ctx, params, alpha)
    x = np.arange(ctx.q, dtype=np.int64)
    a = ctx.trace(ctx.mul(alpha, ctx.pow(x, params.p**params.m + 1)), params.m, 1)
    inner = ctx.add(ctx.mul(beta, ctx.pow(x, params.p**params.k + 1)), ctx.mul(gamma, x))
    b = ctx.trace(inner, params.n, 1)
    return (a + b) % params.p


def histogram_to_value(p: int, counts) -> CyclotomicInteger:
    return CyclotomicInteger(p, [int(c) for c in counts])


def eval_T(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> CyclotomicInteger:
    e = exponents_direct(ctx, params, alpha, beta)
    return histogram_to_value(params.p, np.bincount(e, minlength=params.p))


def eval_S(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int,
           gamma: int) -> CyclotomicInteger:
    e = exponents_direct(ctx, params, alpha, beta, gamma)
    return histogram_to_value(params.p, np.bincount(e, minlength=params.p))


# -- fast exponent tables ----------------------------------------------------

def _trace_products(ctx: FieldCtx, coefs: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Tr^n_1(c * y) for every pair (c in coefs, y in y), dtype int8."""
    coefs, y = np.asarray(coefs, dtype=np.int64), np.asarray(y, dtype=np.int64)
    lc, ly = ctx.log[coefs], ctx.log[y]
    out = ctx.tr_log[(lc[:, None] + ly[None, :]) % ctx.order].astype(np.int8)
    out[coefs == 0, :] = 0
    out[:, y == 0] = 0
    return out


def _power_column(ctx: FieldCtx, e: int) -> np.ndarray:
    return ctx.pow(np.arange(ctx.q, dtype=np.int64), e)


def alpha_exponents(ctx: FieldCtx, params: TowerParams) -> np.ndarray:
    """EA[a, x] = Tr^m_1(alpha_a x^(p^m+1)) for alpha_a in alpha_domain order."""
    key = ("EA", params.m)
    if key not in ctx.cache:
        norm = _power_column(ctx, params.p**params.m + 1)
        tr = _trace_products(ctx, alpha_domain(ctx, params), norm).astype(np.int64)
        ctx.cache[key] = ((tr * params.inv2) % params.p).astype(np.int8)
    return ctx.cache[key]


def beta_exponents(ctx: FieldCtx, params: TowerParams, betas) -> np.ndarray:
    """EB[b, x] = Tr^n_1(beta_b x^(p^k+1))."""
    return _trace_products(ctx, betas, _power_column(ctx, params.p**params.k + 1))


def gamma_exponents(ctx: FieldCtx, gammas) -> np.ndarray:
    return _trace_products(ctx, gammas, np.arange(ctx.q, dtype=np.int64))


def row_histograms(E: np.ndarray, p: int) -> np.ndarray:
    """Per-row counts of each exponent 0..p-1; E has shape (R, q)."""
    R = E.shape[0]
    idx = E.astype(np.int64) + p * np.arange(R, dtype=np.int64)[:, None]
    return np.bincount(idx.ravel(), minlength=R * p).reshape(R, p)


def _worker_ctx(p, m, k, t, max_q):
    params = TowerParams(p, m, k, t)
    return get_field(p, params.n, max(max_q, DEFAULT_MAX_Q)), params


def _t_chunk(p, m, k, t, max_q, rng):
    ctx, params = _worker_ctx(p, m, k, t, max_q)
    return _t_rows(ctx, params, rng)


def _s_chunk(p, m, k, t, max_q, rng):
    ctx, params = _worker_ctx(p, m, k, t, max_q)
    return _s_rows(ctx, params, rng)


def _t_rows(ctx, params, rng):
    p = params.p
    EA = alpha_exponents(ctx, params)
    betas = np.arange(ctx.q, dtype=np.int64)
    out = np.empty((len(rng), ctx.q, p), dtype=np.int64)
    step = max(1, 2**22 // ctx.q)
    for b0 in range(0, ctx.q, step):
        EB = beta_exponents(ctx, params, betas[b0:b0 + step])
        for i, a in enumerate(rng):
            out[i, b0:b0 + step] = row_histograms((EB + EA[a][None, :]) % p, p)
    return out


def _s_rows(ctx, params, rng):
    p, q = params.p, ctx.q
    EA = alpha_exponents(ctx, params)
    EG = gamma_exponents(ctx, np.arange(q, dtype=np.int64))
    out = np.empty((len(rng), q, q, p), dtype=np.int64)
    for b in range(q):
        EB = beta_exponents(ctx, params, np.array([b]))[0]
        for i, a in enumerate(rng):
            base = (EA[a] + EB) % p
            out[i, b] = row_histograms((EG + base[None, :]) % p, p)
    return out


def t_table(ctx: FieldCtx, params: TowerParams, workers: int | None = 1,
            budget=None) -> np.ndarray:
    """Exponent histograms H[a, beta, :] of T(alpha_a, beta); cached on ``ctx``."""
    key = ("T-table", params.m, params.k)
    if key in ctx.cache:
        return ctx.cache[key]
    na = len(alpha_domain(ctx, params))
    _budget(budget).check(na * ctx.q * ctx.q, "T table")
    if resolve_workers(workers) == 1:
        table = _t_rows(ctx, params, range(na))
    else:
        args = (params.p, params.m, params.k, params.t, ctx.q)
        table = np.concatenate(map_chunks(_t_chunk, na, workers, args), axis=0)
    ctx.cache[key] = table
    return table


def s_table(ctx: FieldCtx, params: TowerParams, workers: int | None = 1,
            budget=None) -> np.ndarray:
    """Exponent histograms H[a, beta, gamma, :] of S; cached on ``ctx``."""
    key = ("S-table", params.m, params.k)
    if key in ctx.cache:
        return ctx.cache[key]
    na = len(alpha_domain(ctx, params))
    _budget(budget).check(na * ctx.q**3, "S table")
    if resolve_workers(workers) == 1:
        table = _s_rows(ctx, params, range(na))
    else:
        args = (params.p, params.m, params.k, params.t, ctx.q)
        table = np.concatenate(map_chunks(_s_chunk, na, workers, args), axis=0)
    ctx.cache[key] = table
    return table


def histogram_counts(hist: np.ndarray, p: int) -> dict:
    """Multiset of canonical values from an (..., p) array of exponent histograms."""
    flat = hist.reshape(-1, p)
    canon = flat - flat[:, -1:]
    rows, mult = np.unique(canon, axis=0, return_counts=True)
    return {CyclotomicInteger(p, r.tolist()): int(c) for r, c in zip(rows, mult)}


def omega_sum(ctx: FieldCtx, params: TowerParams, hist: np.ndarray, deg: int,
              with_gamma: bool = False) -> np.ndarray:
    """sum_{omega in F_{p^deg}^*} of the table at (omega alpha, omega beta[, omega gamma]).

    Returns the rational values as an integer array; raises if a sum is not rational.
    """
    alphas = alpha_domain(ctx, params)
    field_elems = np.arange(ctx.q, dtype=np.int64)
    acc = np.zeros(hist.shape, dtype=np.int64)
    for w in ctx.subfield(deg).tolist()[1:]:
        ai = np.searchsorted(alphas, ctx.mul(w, alphas))
        bi = ctx.mul(w, field_elems)
        acc += hist[ai][:, bi][:, :, bi] if with_gamma else hist[ai][:, bi]
    canon = acc - acc[..., -1:]
    if (canon[..., 1:] != 0).any():
        raise ArithmeticError("omega-sum is not rational")
    return canon[..., 0]


# -- distributions -----------------------------------------------------------

def t_distribution(ctx: FieldCtx, params: TowerParams, mode: str = "brute",
                   workers: int | None = 1, budget=None) -> ValueDistribution:
    domain = params.p**params.m * params.q
    if mode == "brute":
        counts = histogram_counts(t_table(ctx, params, workers, budget), params.p)
    elif mode == "theorem":
        counts = tables.rows_to_counts(tables.t_rows(params))
        tables.check_mass(counts, domain, "T distribution")
    else:
        raise ValueError("mode must be 'brute' or 'theorem'")
    return ValueDistribution(params, counts, domain, kind="T")


def auto_s_mode(params: TowerParams) -> str:
    return "brute" if params.p**params.m * params.q**2 <= HYBRID_THRESHOLD else "hybrid"


def s_distribution(ctx: FieldCtx, params: TowerParams, mode: str = "brute",
                   workers: int | None = 1, budget=None) -> ValueDistribution:
    domain = params.p**params.m * params.q**2
    if mode == "auto":
        mode = auto_s_mode(params)
    if mode == "brute":
        counts = histogram_counts(s_table(ctx, params, workers, budget), params.p)
    elif mode == "theorem":
        counts = tables.rows_to_counts(tables.s_rows(params))
        tables.check_mass(counts, domain, "S distribution")
    elif mode == "hybrid":
        counts = s_counts_hybrid(ctx, params, workers, budget)
    else:
        raise ValueError("mode must be 'brute', 'theorem', 'hybrid' or 'auto'")
    return ValueDistribution(params, counts, domain, kind="S")


# -- moments -----------------------------------------------------------------

def moments_T(ctx: FieldCtx, params: TowerParams, order: int, mode: str = "brute",
              workers: int | None = 1, budget=None) -> CyclotomicInteger:
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    if mode == "closed":
        return CyclotomicInteger.rational(params.p, tables.t_moment_closed(params, order))
    if mode != "brute":
        raise ValueError("mode must be 'brute' or 'closed'")
    total = CyclotomicInteger.rational(params.p, 0)
    for v, c in t_distribution(ctx, params, "brute", workers, budget).counts.items():
        total = total + (v**order) * c
    return total


# -- gamma fibers ------------------------------------------------------------

def _trace_to(ctx: FieldCtx, x, from_deg: int, t: int):
    return ctx.trace(x, from_deg, t)


def form_trace_values(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> np.ndarray:
    """a(x) = Tr^m_t(alpha x^(p^m+1)) + Tr^n_t(beta x^(p^k+1)) for every x."""
    x = np.arange(ctx.q, dtype=np.int64)
    t = params.t
    a = ctx.trace(ctx.mul(alpha, ctx.pow(x, params.p**params.m + 1)), params.m, t)
    b = ctx.trace(ctx.mul(beta, ctx.pow(x, params.p**params.k + 1)), params.n, t)
    return ctx.add(a, b)


def gamma_fibers(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> dict:
    """For every gamma with phi(x) + gamma = 0 solvable, the trace value a there.

    Walks over gamma, takes one solution x0 of phi(x0) = -gamma and records
    a(x0); a is constant on the solution coset because the form vanishes on the
    radical.
    """
    phi = phi_values(ctx, params, alpha, beta)
    av = form_trace_values(ctx, params, alpha, beta)
    gam = ctx.neg(phi)
    out: dict[int, int] = {}
    for g, a in zip(gam.tolist(), av.tolist()):
        prev = out.setdefault(g, a)
        if prev != a:
            raise ArithmeticError("trace value is not constant on a solution coset")
    return out


def _rank_defect(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> int:
    size = int(np.count_nonzero(phi_values(ctx, params, alpha, beta) == 0))
    i = 0
    while size > 1:
        size //= params.q0
        i += 1
    return i


def gamma_count_sign(params: TowerParams, T: CyclotomicInteger, i: int) -> int:
    """The sign entering the gamma-count formula for a pair with rank defect i.

    When s - i and d/t are both odd the count is governed by
    eta_t(-1) G_t T (a rational integer, G_t the quadratic Gauss sum of
    F_{p^t}); otherwise T is rational and its sign is used directly.
    """
    p, t, d = params.p, params.t, params.d
    if (params.s - i) % 2 == 1 and (d // t) % 2 == 1:
        eta_minus1 = 1 if (p**t - 1) // 2 % 2 == 0 else -1
        v = T * subfield_gauss_sum(p, t) * eta_minus1
    else:
        v = T
    c = v.to_int()
    return 1 if c > 0 else -1


def count_gamma_trace(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int, a: int,
                      mode: str = "brute") -> int:
    """#{gamma : phi(x) + gamma = 0 solvable and a(x0) = a}, a in F_{p^t}."""
    if alpha == 0 and beta == 0:
        raise ZeroPair("(alpha, beta) must be nonzero")
    _check_alpha(ctx, params, alpha)
    ctx._require_subfield(a, params.t)
    if mode == "brute":
        return sum(1 for v in gamma_fibers(ctx, params, alpha, beta).values() if v == a)
    if mode != "closed":
        raise ValueError("mode must be 'brute' or 'closed'")
    i = _rank_defect(ctx, params, alpha, beta)
    T = eval_T(ctx, params, alpha, beta)
    eps = gamma_count_sign(params, T, i)
    eta_a = int(ctx.quadratic_character(a, params.t)) if a else 0
    return tables.gamma_count_closed(params, i, eps, a == 0, eta_a)


# -- hybrid S distribution ---------------------------------------------------

def s_counts_hybrid(ctx: FieldCtx, params: TowerParams, workers: int | None = 1,
                    budget=None) -> dict:
    """S distribution from the T table, ranks and closed gamma-fiber counts.

    For (alpha, beta) != (0, 0) with rank defect i, S(alpha, beta, gamma) is
    zeta^(-a) T(alpha, beta) on the gamma-fiber of trace value a (a in F_p) and 0
    off the p^(n - i d) solvable gammas.  The defect is read off the kernel of
    phi and cross-checked against the magnitude of T.
    """
    p, q = params.p, params.q
    p1 = TowerParams(params.p, params.m, params.k, 1)
    hist = t_table(ctx, params, workers, budget)
    alphas = alpha_domain(ctx, params)
    ksz = kernel_sizes(ctx, params, alphas, np.arange(q))
    counts: dict = {}

    def add(v, c):
        if c:
            counts[v] = counts.get(v, 0) + c

    # group pairs by (T value, kernel size): each group contributes identically
    canon = hist - hist[..., -1:]
    keys = np.concatenate([canon.reshape(-1, p), ksz.reshape(-1, 1)], axis=1)
    rows, mult = np.unique(keys, axis=0, return_counts=True)
    for row, c in zip(rows, mult):
        T = CyclotomicInteger(p, row[:p].tolist())
        size, c = int(row[p]), int(c)
        if size == q:
            # phi vanishes identically only at (0, 0)
            add(T, c)
            add(CyclotomicInteger.rational(p, 0), c * (q - 1))
            continue
        i = 0
        while size > 1:
            size //= params.q0
            i += 1
        label = classify_value(T, params)
        if label.i != i:
            raise UnrecognizedValue(f"|T|^2 says defect {label.i}, kernel says {i}")
        eps = gamma_count_sign(p1, T, i)
        solvable = 0
        for a in range(p):
            eta_a = 0 if a == 0 else (1 if pow(a, (p - 1) // 2, p) == 1 else -1)
            na = tables.gamma_count_closed(p1, i, eps, a == 0, eta_a)
            add(T.times_zeta(-a), c * na)
            solvable += na
        add(CyclotomicInteger.rational(p, 0), c * (q - solvable))
    tables.check_mass(counts, p**params.m * q * q, "hybrid S distribution")
    return counts
