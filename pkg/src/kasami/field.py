"""Finite-field tower F_p < F_{p^t} < F_{p^d} < F_{p^m} < F_{p^n}, n = 2m.

Elements of F_q are plain integers: the element sum c_i u^i (u a root of the
modulus) is encoded as sum c_i p^i.  Prime-field elements are therefore the
integers 0..p-1.  Every arithmetic method accepts either Python ints or numpy
integer arrays; arrays go through the vectorised digit/log-table path, scalars
through Zech logarithms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegreeOverflow,
    FactorizationLimitExceeded,
    KasamiError,
    KEqualsM,
    NonDividingDegrees,
    NotInSubfield,
    NotOddPrime,
    ParameterError,
    TNotDividingD,
)

DEFAULT_MAX_Q = 2**20
DEFAULT_FACTOR_LIMIT = 2**48


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int, limit: int = DEFAULT_FACTOR_LIMIT) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    if n > limit:
        raise FactorizationLimitExceeded(f"{n} exceeds trial-division limit {limit}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class TowerParams:
    """Validated parameters (p, m, k, t) plus every derived quantity."""

    p: int
    m: int
    k: int
    t: int = 1

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise NotOddPrime(f"p = {self.p} is not an odd prime")
        if self.m < 1:
            raise ParameterError(f"m must be positive, got {self.m}")
        if not 0 <= self.k <= 2 * self.m - 1:
            raise ParameterError(f"k must lie in [0, {2 * self.m - 1}], got {self.k}")
        if self.k == self.m:
            raise KEqualsM("k must differ from m")
        if self.t < 1 or self.d % self.t:
            raise TNotDividingD(f"t = {self.t} does not divide d = {self.d}")

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def d(self) -> int:
        return math.gcd(self.m, self.k)

    @property
    def dprime(self) -> int:
        return math.gcd(self.m + self.k, 2 * self.k)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def q0(self) -> int:
        return self.p**self.d

    @property
    def s(self) -> int:
        return self.n // self.d

    @property
    def n0(self) -> int:
        return self.n // self.t

    @property
    def qstar0(self) -> int:
        return (-1) ** ((self.q0 - 1) // 2) * self.q0

    @property
    def pstar(self) -> int:
        return (-1) ** ((self.p - 1) // 2) * self.p

    @property
    def inv2(self) -> int:
        return (self.p + 1) // 2

    def as_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "k": self.k, "t": self.t,
                "d": self.d, "dprime": self.dprime}


# -- polynomials over F_p, coefficient lists with the constant term first ------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (constant term first)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = _poly_sub(_poly_powmod(x, p ** (n // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n, constant term first."""
    for low in itertools.product(range(p), repeat=n):
        f = list(low) + [1]
        if n > 1 and low[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise KasamiError(f"no irreducible polynomial of degree {n} over F_{p}")


class FieldCtx:
    """Explicit F_{p^n} with log/exp tables, Zech logarithms and absolute traces.

    Immutable after construction apart from ``cache``, a memo of derived tables
    keyed by the functions that fill it.
    """

    def __init__(self, p: int, n: int, *, max_q: int = DEFAULT_MAX_Q,
                 factor_limit: int = DEFAULT_FACTOR_LIMIT):
        q = p**n
        if q > max_q:
            raise DegreeOverflow(f"q = {p}^{n} exceeds the table limit {max_q}")
        self.p, self.n, self.q = p, n, q
        self.order = q - 1
        self.modulus = smallest_irreducible(p, n)
        self._order_primes = prime_factors(self.order, factor_limit) if self.order > 1 else []
        self.primitive = self._find_primitive()
        self.pw = p ** np.arange(n, dtype=np.int64)
        self.exp = self._exp_table()
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.order, dtype=np.int64)
        if len(set(self.exp.tolist())) != self.order or self.log[0] != -1:
            raise KasamiError("primitive element does not generate F_q^*")
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self.pw) % p
        self.neg_table = ((-self.digits) % p) @ self.pw
        one = np.ones(self.order, dtype=np.int64)
        s = self.add(one, self.exp)
        self.zech = np.where(s == 0, -1, self.log[s])
        self._exp_list = self.exp.tolist()
        self._log_list = self.log.tolist()
        self._zech_list = self.zech.tolist()
        self.tr_log = self._abs_trace_table()
        self.cache: dict = {}

    # -- construction ---------------------------------------------------------

    def _find_primitive(self) -> tuple[int, ...]:
        p, f = self.p, list(self.modulus)
        for cand in itertools.product(range(p), repeat=self.n):
            a = _trim(cand)
            if not a:
                continue
            if all(_poly_powmod(a, self.order // r, f, p) != [1]
                   for r in self._order_primes):
                return tuple(cand)
        raise KasamiError("no primitive element found")

    def _exp_table(self) -> np.ndarray:
        p, n, f = self.p, self.n, list(self.modulus)
        prim = _trim(self.primitive)
        cols = []
        for j in range(n):
            c = _poly_mod(_poly_mul(prim, [0] * j + [1], p), f, p)
            cols.append(c + [0] * (n - len(c)))
        vec = [1] + [0] * (n - 1)
        pw = self.pw.tolist()
        out = np.empty(self.order, dtype=np.int64)
        for i in range(self.order):
            out[i] = sum(c * w for c, w in zip(vec, pw))
            nxt = [0] * n
            for j, cj in enumerate(vec):
                if cj:
                    col = cols[j]
                    for r in range(n):
                        nxt[r] += cj * col[r]
            vec = [c % p for c in nxt]
        return out

    def _abs_trace_table(self) -> np.ndarray:
        logs = np.arange(self.order, dtype=np.int64)
        acc = np.zeros((self.order, self.n), dtype=np.int64)
        for j in range(self.n):
            acc += self.digits[self.exp[(logs * self.p**j) % self.order]]
        acc %= self.p
        if acc[:, 1:].any():
            raise KasamiError("absolute trace left the prime field")
        return acc[:, 0].copy()

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _is_scalar(*xs) -> bool:
        return all(isinstance(x, (int, np.integer)) for x in xs)

    def add(self, a, b):
        if self._is_scalar(a, b):
            a, b = int(a), int(b)
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log_list[a], self._log_list[b]
            z = self._zech_list[(lb - la) % self.order]
            return 0 if z < 0 else self._exp_list[(la + z) % self.order]
        a, b = np.asarray(a), np.asarray(b)
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def neg(self, a):
        if self._is_scalar(a):
            return int(self.neg_table[a])
        return self.neg_table[np.asarray(a)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._is_scalar(a, b):
            a, b = int(a), int(b)
            if a == 0 or b == 0:
                return 0
            return self._exp_list[(self._log_list[a] + self._log_list[b]) % self.order]
        a, b = np.asarray(a), np.asarray(b)
        r = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if self._is_scalar(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return self._exp_list[(-self._log_list[a]) % self.order]
        a = np.asarray(a)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % self.order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if self._is_scalar(a):
            a = int(a)
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp_list[(self._log_list[a] * e) % self.order]
        a = np.asarray(a)
        r = self.exp[(self.log[a] * (e % self.order)) % self.order]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def frob(self, a, j: int):
        """x -> x^(p^j)."""
        return self.pow(a, pow(self.p, j % self.n, self.order) if self.order > 1 else 1)

    def power_of_primitive(self, e):
        """pi^e for integer (or integer-array) e."""
        if self._is_scalar(e):
            return self._exp_list[int(e) % self.order]
        return self.exp[np.asarray(e) % self.order]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        return self.order // math.gcd(self._log_list[a], self.order)

    # -- subfields, traces, characters ---------------------------------------

    def _check_degree(self, deg: int):
        if deg < 1 or self.n % deg:
            raise NonDividingDegrees(f"{deg} does not divide {self.n}")

    def subfield(self, deg: int) -> np.ndarray:
        """Sorted codes of F_{p^deg} inside F_q."""
        self._check_degree(deg)
        key = ("subfield", deg)
        if key not in self.cache:
            step = self.order // (self.p**deg - 1)
            elems = np.concatenate([[0], self.exp[np.arange(0, self.order, step)]])
            self.cache[key] = np.sort(elems)
        return self.cache[key]

    def in_subfield(self, x, deg: int):
        self._check_degree(deg)
        step = self.order // (self.p**deg - 1)
        if self._is_scalar(x):
            return x == 0 or self._log_list[x] % step == 0
        x = np.asarray(x)
        return (x == 0) | (self.log[x] % step == 0)

    def _require_subfield(self, x, deg: int, exc=NotInSubfield):
        ok = self.in_subfield(x, deg)
        if not np.all(ok):
            raise exc(f"element(s) not in the degree-{deg} subfield")

    def trace(self, x, from_deg: int, to_deg: int):
        """Tr^{from_deg}_{to_deg}(x) = sum_i x^(p^(to_deg*i)), i < from_deg/to_deg."""
        if to_deg < 1 or from_deg % to_deg or self.n % from_deg:
            raise NonDividingDegrees(f"need {to_deg} | {from_deg} | {self.n}")
        self._require_subfield(x, from_deg)
        acc = x
        for i in range(1, from_deg // to_deg):
            acc = self.add(acc, self.frob(x, to_deg * i))
        return acc

    def abs_trace(self, x):
        """Tr^n_1 via the precomputed table; result is an int in [0, p-1]."""
        if self._is_scalar(x):
            return 0 if x == 0 else int(self.tr_log[self._log_list[x]])
        x = np.asarray(x)
        return np.where(x == 0, 0, self.tr_log[self.log[x]])

    def quadratic_character(self, x, deg: int):
        """eta on F_{p^deg}: 0 at zero, +1 on nonzero squares, -1 otherwise."""
        self._require_subfield(x, deg)
        step = self.order // (self.p**deg - 1)
        if self._is_scalar(x):
            if x == 0:
                return 0
            return 1 if (self._log_list[x] // step) % 2 == 0 else -1
        x = np.asarray(x)
        chi = np.where((self.log[x] // step) % 2 == 0, 1, -1)
        return np.where(x == 0, 0, chi)

    # -- representation ------------------------------------------------------

    def coeffs(self, x: int) -> list[int]:
        return [int(c) for c in self.digits[x]]

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise ParameterError("coefficient list does not describe an element")
        return int(sum(c * self.p**i for i, c in enumerate(coeffs)))

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus),
                "primitive": list(self.primitive)}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n})"


@lru_cache(maxsize=None)
def get_field(p: int, n: int, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    return FieldCtx(p, n, max_q=max_q)


def build_tower(p: int, m: int, k: int, t: int = 1,
                max_q: int = DEFAULT_MAX_Q) -> tuple[TowerParams, FieldCtx]:
    params = TowerParams(p, m, k, t)
    if params.q > max_q:
        raise DegreeOverflow(f"q = {params.q} exceeds the table limit {max_q}")
    return params, get_field(p, params.n, max_q)


def primitive_element(ctx: FieldCtx) -> int:
    return ctx.from_coeffs(ctx.primitive)


def quadratic_character(ctx: FieldCtx, x, deg: int):
    return ctx.quadratic_character(x, deg)


def trace(ctx: FieldCtx, x, from_deg: int, to_deg: int):
    return ctx.trace(x, from_deg, to_deg)


def tower_basis(ctx: FieldCtx, params: TowerParams) -> list[int]:
    """v_i = pi^(i-1), i = 1..s: an F_{q0}-basis of F_q."""
    return [ctx.power_of_primitive(i) for i in range(params.s)]


def coordinate_table(ctx: FieldCtx, params: TowerParams) -> np.ndarray:
    """Array ``C`` of shape (q, s) with x = sum_i C[x, i] v_i, entries in F_{q0}.

    Built by enumerating all q0^s combinations; a repeated element would mean the
    basis is dependent, so the construction doubles as the basis check.
    """
    key = ("coords", params.d)
    if key in ctx.cache:
        return ctx.cache[key]
    sub = ctx.subfield(params.d)
    idx = np.array(list(itertools.product(range(params.q0), repeat=params.s)),
                   dtype=np.int64).reshape(-1, params.s)
    X = sub[idx]
    x = np.zeros(len(X), dtype=np.int64)
    for i, v in enumerate(tower_basis(ctx, params)):
        x = ctx.add(x, ctx.mul(X[:, i], v))
    if len(np.unique(x)) != ctx.q:
        raise KasamiError("v_1..v_s are not independent over F_{q0}")
    table = np.empty_like(X)
    table[x] = X
    ctx.cache[key] = table
    return table
