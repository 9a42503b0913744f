"""Quadratic forms over F_{q0} attached to (alpha, beta) and their character sums.

F_{alpha,beta}(X) = X H X^T is the coordinate form of
x -> Tr^m_d(alpha x^(p^m+1)) + Tr^n_d(beta x^(p^k+1)) in the basis 1, pi, ..., pi^(s-1).
Matrix entries are field codes of the ambient ``FieldCtx`` lying in F_{p^d}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cyclo import CyclotomicInteger, subfield_gauss_sum
from .errors import AlphaNotInSubfield, ZeroCoefficient
from .field import FieldCtx, TowerParams, tower_basis


@dataclass(frozen=True)
class SymMatrix:
    """Symmetric s x s matrix over the degree-``deg`` subfield of ``ctx``."""

    ctx: FieldCtx
    deg: int
    entries: tuple  # tuple of row tuples of field codes

    def __post_init__(self):
        rows = self.entries
        s = len(rows)
        if any(len(r) != s for r in rows):
            raise ValueError("matrix is not square")
        for i in range(s):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        self.ctx._require_subfield(np.array([c for r in rows for c in r] or [0]), self.deg)

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def q0(self) -> int:
        return self.ctx.p**self.deg

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def evaluate(self, X: np.ndarray, A=None) -> np.ndarray:
        """X H X^T (+ A X^T) for a batch of coordinate rows X (shape (N, s))."""
        ctx = self.ctx
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.s)
        acc = np.zeros(len(X), dtype=np.int64)
        for i in range(self.s):
            for j in range(self.s):
                h = self.entries[i][j]
                if h:
                    acc = ctx.add(acc, ctx.mul(ctx.mul(X[:, i], X[:, j]), h))
        if A is not None:
            for i, a in enumerate(A):
                if a:
                    acc = ctx.add(acc, ctx.mul(X[:, i], a))
        return acc


@dataclass(frozen=True)
class RankReport:
    r: int
    eta0_delta: int
    kernel_size: int

    def to_json(self) -> dict:
        return {"r": self.r, "eta0_delta": self.eta0_delta, "kernel_size": self.kernel_size}


# -- construction ------------------------------------------------------------

def _check_alpha(ctx: FieldCtx, params: TowerParams, alpha: int):
    if not ctx.in_subfield(alpha, params.m):
        raise AlphaNotInSubfield(f"alpha = {alpha} is not in F_(p^{params.m})")


def _basis_products(ctx: FieldCtx, params: TowerParams) -> tuple[np.ndarray, np.ndarray]:
    """U[i, j] = v_i^(p^m) v_j + v_i v_j^(p^m) and W[i, j] likewise with p^k."""
    key = ("basis-products", params.m, params.k)
    if key not in ctx.cache:
        v = np.array(tower_basis(ctx, params), dtype=np.int64)
        vm, vk = ctx.frob(v, params.m), ctx.frob(v, params.k)
        U = ctx.add(ctx.mul(vm[:, None], v[None, :]), ctx.mul(v[:, None], vm[None, :]))
        W = ctx.add(ctx.mul(vk[:, None], v[None, :]), ctx.mul(v[:, None], vk[None, :]))
        ctx.cache[key] = (U, W)
    return ctx.cache[key]


def H_entries(ctx: FieldCtx, params: TowerParams, alphas, betas) -> np.ndarray:
    """Entries of H_{alpha,beta} for arrays of alphas and betas (broadcast together).

    h_ij = Tr^m_d(alpha U_ij)/2 + Tr^n_d(beta W_ij)/2; result shape (..., s, s).
    """
    U, W = _basis_products(ctx, params)
    alphas = np.asarray(alphas, dtype=np.int64)[..., None, None]
    betas = np.asarray(betas, dtype=np.int64)[..., None, None]
    a = ctx.trace(ctx.mul(alphas, U), params.m, params.d)
    b = ctx.trace(ctx.mul(betas, W), params.n, params.d)
    return ctx.mul(params.inv2, ctx.add(a, b))


def build_H_and_A(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int,
                  gamma: int = 0) -> tuple[SymMatrix, tuple]:
    _check_alpha(ctx, params, alpha)
    H = H_entries(ctx, params, alpha, beta)
    v = tower_basis(ctx, params)
    A = tuple(ctx.trace(ctx.mul(gamma, x), params.n, params.d) for x in v)
    return SymMatrix(ctx, params.d, tuple(tuple(int(h) for h in row) for row in H)), A


def form_values(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> np.ndarray:
    """f(x) = Tr^m_d(alpha x^(p^m+1)) + Tr^n_d(beta x^(p^k+1)) for every x (by code)."""
    x = np.arange(ctx.q, dtype=np.int64)
    a = ctx.trace(ctx.mul(alpha, ctx.pow(x, params.p**params.m + 1)), params.m, params.d)
    b = ctx.trace(ctx.mul(beta, ctx.pow(x, params.p**params.k + 1)), params.n, params.d)
    return ctx.add(a, b)


# -- congruence diagonalization ---------------------------------------------

def diagonalize(H: SymMatrix, order=None) -> list[int]:
    """Nonzero diagonal entries of a congruent diagonal form of H.

    Pivots on the first nonzero diagonal entry (in ``order``, default natural);
    if the remaining diagonal vanishes but the block does not, adds column/row b
    to a so that the new diagonal entry 2 h_ab is nonzero.
    """
    ctx = H.ctx
    s = H.s
    perm = list(order) if order is not None else list(range(s))
    M = [[H.entries[perm[i]][perm[j]] for j in range(s)] for i in range(s)]
    diag = []
    for i in range(s):
        piv = next((j for j in range(i, s) if M[j][j]), None)
        if piv is None:
            pair = next(((a, b) for a in range(i, s) for b in range(i, s) if M[a][b]), None)
            if pair is None:
                break
            a, b = pair
            for r in range(s):
                M[r][a] = ctx.add(M[r][a], M[r][b])
            for c in range(s):
                M[a][c] = ctx.add(M[a][c], M[b][c])
            piv = a
        M[i], M[piv] = M[piv], M[i]
        for r in M:
            r[i], r[piv] = r[piv], r[i]
        h = M[i][i]
        hinv = ctx.inv(h)
        for j in range(i + 1, s):
            if M[j][i]:
                c = ctx.mul(M[j][i], hinv)
                for col in range(s):
                    M[j][col] = ctx.sub(M[j][col], ctx.mul(c, M[i][col]))
                for row in range(s):
                    M[row][j] = ctx.sub(M[row][j], ctx.mul(c, M[row][i]))
        diag.append(h)
    return diag


def rank_and_delta(H: SymMatrix, order=None) -> tuple[int, int]:
    """(rank, eta0(Delta)) with Delta the product of the nonzero diagonal entries."""
    diag = diagonalize(H, order)
    delta = 1
    for h in diag:
        delta = H.ctx.mul(delta, h)
    return len(diag), int(H.ctx.quadratic_character(delta, H.deg))


def phi_values(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> np.ndarray:
    """phi(x) = alpha x^(p^m) + beta x^(p^k) + beta^(p^(n-k)) x^(p^(n-k)) for every x."""
    x = np.arange(ctx.q, dtype=np.int64)
    m, k, n = params.m, params.k, params.n
    b2 = ctx.frob(beta, n - k)
    out = ctx.add(ctx.mul(alpha, ctx.frob(x, m)), ctx.mul(beta, ctx.frob(x, k)))
    return ctx.add(out, ctx.mul(b2, ctx.frob(x, n - k)))


def kernel_rank(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> tuple[int, int]:
    """(rank, kernel size) from the zero count of phi."""
    size = int(np.count_nonzero(phi_values(ctx, params, alpha, beta) == 0))
    e, rest = 0, size
    while rest > 1 and rest % params.q0 == 0:
        rest //= params.q0
        e += 1
    if rest != 1:
        raise ArithmeticError(f"kernel of size {size} is not a power of q0")
    return params.s - e, size


def rank_and_invariant(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int,
                       check_pivots: bool = True) -> RankReport:
    H, _ = build_H_and_A(ctx, params, alpha, beta)
    r, eta = rank_and_delta(H)
    r_kernel, size = kernel_rank(ctx, params, alpha, beta)
    if r != r_kernel:
        raise ArithmeticError(f"elimination rank {r} != kernel rank {r_kernel}")
    if check_pivots and H.s > 1:
        order = list(range(H.s))[::-1]
        r2, eta2 = rank_and_delta(H, order)
        if (r2, eta2) != (r, eta):
            raise ArithmeticError("eta0(Delta) depends on the pivot order")
    return RankReport(r, eta, size)


def kernel_sizes(ctx: FieldCtx, params: TowerParams, alphas, betas) -> np.ndarray:
    """Zero counts of phi for every (alpha, beta) in alphas x betas, vectorized over x."""
    x = np.arange(ctx.q, dtype=np.int64)
    m, k, n = params.m, params.k, params.n
    xm, xk, xnk = ctx.frob(x, m), ctx.frob(x, k), ctx.frob(x, n - k)
    betas = np.asarray(betas, dtype=np.int64)
    bk = ctx.mul(betas[:, None], xk[None, :])
    bnk = ctx.mul(ctx.frob(betas, n - k)[:, None], xnk[None, :])
    base = ctx.add(bk, bnk)
    out = np.empty((len(alphas), len(betas)), dtype=np.int64)
    for i, a in enumerate(alphas):
        vals = ctx.add(base, ctx.mul(int(a), xm)[None, :])
        out[i] = np.count_nonzero(vals == 0, axis=1)
    return out


# -- character sums of quadratic forms ---------------------------------------

def solve_linear(ctx: FieldCtx, M, b) -> list[int] | None:
    """One solution Y of M Y = b over a subfield of ``ctx``, or None."""
    s = len(M)
    rows = [list(M[i]) + [b[i]] for i in range(s)]
    ncols = len(M[0]) if s else 0
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, s) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][c])
        rows[r] = [ctx.mul(inv, x) for x in rows[r]]
        for i in range(s):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][-1] for i in range(r, s)):
        return None
    Y = [0] * ncols
    for i, c in enumerate(piv_cols):
        Y[c] = rows[i][-1]
    return Y


def _bilinear(ctx, X, H: SymMatrix, Y) -> int:
    acc = 0
    for i, xi in enumerate(X):
        for j, yj in enumerate(Y):
            acc = ctx.add(acc, ctx.mul(ctx.mul(xi, yj), H.entries[i][j]))
    return acc


def affine_shift(H: SymMatrix, A) -> int | None:
    """c with sum_X zeta^Tr(XHX^T + AX^T) = zeta^c sum_X zeta^Tr(XHX^T), or None.

    Solves 2YH + A = 0 and checks that -Tr(BHB^T) and Tr(AB^T)/2 coincide.
    """
    ctx = H.ctx
    p = ctx.p
    rhs = [ctx.mul(ctx.neg(a), (p + 1) // 2) for a in A]
    B = solve_linear(ctx, H.entries, rhs)
    if B is None:
        return None
    c1 = (-ctx.trace(_bilinear(ctx, B, H, B), H.deg, 1)) % p
    ab = 0
    for a, b in zip(A, B):
        ab = ctx.add(ab, ctx.mul(a, b))
    c2 = (ctx.trace(ab, H.deg, 1) * ((p + 1) // 2)) % p
    if c1 != c2:
        raise ArithmeticError("the two expressions for the affine constant disagree")
    return int(c1)


def quad_char_sum(H: SymMatrix, A=None, mode: str = "closed") -> CyclotomicInteger:
    ctx, p, s, q0 = H.ctx, H.ctx.p, H.s, H.q0
    if mode == "brute":
        sub = ctx.subfield(H.deg)
        X = sub[np.array(list(itertools.product(range(q0), repeat=s)), dtype=np.int64)]
        vals = H.evaluate(X.reshape(-1, s), A)
        tr = ctx.trace(vals, H.deg, 1)  # prime-field codes are the integers 0..p-1
        return CyclotomicInteger(p, np.bincount(tr, minlength=p).tolist())
    if mode != "closed":
        raise ValueError("mode must be 'closed' or 'brute'")
    r, eta = rank_and_delta(H)
    value = subfield_gauss_sum(p, H.deg) ** r * (eta * q0 ** (s - r))
    if A is not None and any(A):
        c = affine_shift(H, A)
        if c is None:
            return CyclotomicInteger.rational(p, 0)
        value = value.times_zeta(c)
    return value


# -- the Bluher polynomial ---------------------------------------------------

def psi_exponent(params: TowerParams) -> int:
    """h with z^(p^h) the twist in psi; (m - k) is taken mod n when k > m."""
    return (params.m - params.k) % params.n


def psi_solution_count(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> int:
    """#{z in F_q : beta^(p^(n-k)) z^(p^h+1) + alpha z + beta = 0}."""
    if alpha == 0 or beta == 0:
        raise ZeroCoefficient("psi needs alpha and beta nonzero")
    _check_alpha(ctx, params, alpha)
    z = np.arange(ctx.q, dtype=np.int64)
    lead = ctx.frob(beta, params.n - params.k)
    zz = ctx.pow(z, params.p ** psi_exponent(params) + 1)
    vals = ctx.add(ctx.add(ctx.mul(lead, zz), ctx.mul(alpha, z)), beta)
    return int(np.count_nonzero(vals == 0))


def bluher_parameter(ctx: FieldCtx, params: TowerParams, alpha: int, beta: int) -> int:
    """b = alpha^(p^h+1) / beta^(p^h (p^m+1)), so that psi becomes y^(p^h+1) - b y + b."""
    e = params.p ** psi_exponent(params)
    return ctx.div(ctx.pow(alpha, e + 1), ctx.pow(beta, e * (params.p**params.m + 1)))


def bluher_root_count(ctx: FieldCtx, params: TowerParams, b: int, deg: int | None = None) -> int:
    """Roots of y^(p^h+1) - b y + b in the degree-``deg`` subfield (default F_q)."""
    deg = params.n if deg is None else deg
    y = ctx.subfield(deg)
    e = params.p ** psi_exponent(params) + 1
    vals = ctx.add(ctx.sub(ctx.pow(y, e), ctx.mul(b, y)), b)
    return int(np.count_nonzero(vals == 0))


def rank_tables(ctx: FieldCtx, params: TowerParams) -> dict:
    """Elimination rank, eta0(Delta) and kernel-route rank for every (alpha, beta).

    Arrays are indexed [alpha position in sorted F_{p^m}, beta code].  Cached on ctx.
    """
    key = ("rank-tables", params.m, params.k)
    if key not in ctx.cache:
        ctx.cache[key] = _rank_tables(ctx, params)
    return ctx.cache[key]


def _rank_tables(ctx: FieldCtx, params: TowerParams) -> dict:
    alphas = ctx.subfield(params.m)
    betas = np.arange(ctx.q, dtype=np.int64)
    E = H_entries(ctx, params, alphas[:, None], betas[None, :])
    r = np.empty((len(alphas), ctx.q), dtype=np.int64)
    eta = np.empty_like(r)
    for i in range(len(alphas)):
        for b in range(ctx.q):
            H = SymMatrix(ctx, params.d, tuple(map(tuple, E[i, b].tolist())))
            r[i, b], eta[i, b] = rank_and_delta(H)
    sizes = kernel_sizes(ctx, params, alphas, betas)
    r_kernel = params.s - np.rint(np.log(sizes) / np.log(params.q0)).astype(np.int64)
    if not np.array_equal(params.q0 ** (params.s - r_kernel), sizes):
        raise ArithmeticError("a kernel size is not a power of q0")
    return {"alphas": alphas, "rank": r, "eta0_delta": eta, "kernel_size": sizes,
            "kernel_rank": r_kernel}
