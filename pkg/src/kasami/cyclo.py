"""Exact arithmetic in Z[zeta_p] and closed-form labels for character-sum values.

An element sum_j c_j zeta^j is stored by its coordinates with c_{p-1} = 0,
using 1 + zeta + ... + zeta^(p-1) = 0; two values are equal iff their
canonical coordinate tuples are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import LengthMismatch, NotOddPrime, UnrecognizedValue
from .field import TowerParams, is_prime


def canonicalize(counts) -> tuple[int, ...]:
    counts = [int(c) for c in counts]
    if not counts:
        raise LengthMismatch("empty coordinate list")
    last = counts[-1]
    return tuple(c - last for c in counts)


class CyclotomicInteger:
    __slots__ = ("p", "coords")

    def __init__(self, p: int, counts):
        if len(counts) != p:
            raise LengthMismatch(f"expected {p} coordinates, got {len(counts)}")
        self.p = p
        self.coords = canonicalize(counts)

    # -- constructors --------------------------------------------------------

    @classmethod
    def rational(cls, p: int, c: int) -> CyclotomicInteger:
        return cls(p, [c] + [0] * (p - 1))

    @classmethod
    def zeta(cls, p: int, j: int = 1) -> CyclotomicInteger:
        counts = [0] * p
        counts[j % p] = 1
        return cls(p, counts)

    @classmethod
    def from_key(cls, p: int, key: str) -> CyclotomicInteger:
        return cls(p, [int(c) for c in key.split(",")] + [0])

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicInteger):
            if other.p != self.p:
                raise ValueError("mixed cyclotomic fields")
            return other
        if isinstance(other, int):
            return CyclotomicInteger.rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInteger(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, [a * other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        out[(i + j) % p] += a * b
        return CyclotomicInteger(p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not in Z[zeta_p]")
        result = CyclotomicInteger.rational(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, u: int) -> CyclotomicInteger:
        """Apply the automorphism zeta -> zeta^u (u prime to p)."""
        if u % self.p == 0:
            raise ValueError("u must be a unit mod p")
        out = [0] * self.p
        for j, c in enumerate(self.coords):
            out[(j * u) % self.p] += c
        return CyclotomicInteger(self.p, out)

    def conj(self) -> CyclotomicInteger:
        return self.galois(self.p - 1)

    def times_zeta(self, j: int) -> CyclotomicInteger:
        p = self.p
        out = [0] * p
        for i, c in enumerate(self.coords):
            out[(i + j) % p] = c
        return CyclotomicInteger(p, out)

    # -- queries -------------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coords[0]

    def key(self) -> str:
        return ",".join(str(c) for c in self.coords[:-1])

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.rational(self.p, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if j == 0 else f"{c}*z^{j}")
        return f"Z[z{self.p}]({' + '.join(terms) or '0'})"


def gauss_sum(p: int) -> CyclotomicInteger:
    """g = sum_x legendre(x) zeta^x; g^2 = p* = (-1)^((p-1)/2) p."""
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    counts = [0] * p
    for x in range(1, p):
        counts[x] = 1 if pow(x, (p - 1) // 2, p) == 1 else -1
    return CyclotomicInteger(p, counts)


def subfield_gauss_sum(p: int, deg: int) -> CyclotomicInteger:
    """Quadratic Gauss sum of F_{p^deg}: (-1)^(deg-1) g^deg (Davenport-Hasse lift)."""
    return gauss_sum(p) ** deg * (-1) ** (deg - 1)


# -- closed-form labels ------------------------------------------------------

KINDS = ("PlusPm", "MinusPm", "GaussPm", "ZetaTimesPm", "Zero", "FullSum")


@dataclass(frozen=True)
class ClosedFormLabel:
    """A value eps * zeta^j * [sqrt(p*)] * p^exponent, or 0, or p^n.

    ``i`` is the rank defect s - r of the underlying quadratic form; the magnitude
    squared of the value is p^(n + i d).
    """

    kind: str
    i: int = 0
    eps: int = 1
    j: int = 0
    exponent: int = 0

    def realize(self, p: int) -> CyclotomicInteger:
        if self.kind == "Zero":
            return CyclotomicInteger.rational(p, 0)
        v = CyclotomicInteger.rational(p, self.eps * p**self.exponent)
        if self.kind == "GaussPm":
            v = v * gauss_sum(p)
        return v.times_zeta(self.j)

    @property
    def rendered(self) -> str:
        if self.kind == "Zero":
            return "0"
        if self.kind == "FullSum":
            return f"p^{self.exponent}"
        parts = ["-" if self.eps < 0 else ""]
        factors = []
        if self.j:
            factors.append(f"zeta^{self.j}")
        if self.kind == "GaussPm":
            factors.append("sqrt(p*)")
        factors.append(f"p^{self.exponent}")
        return parts[0] + "*".join(factors)

    def __str__(self):
        return self.rendered


@lru_cache(maxsize=None)
def _label_table(p: int, n: int, d: int, s: int) -> dict:
    table: dict[CyclotomicInteger, ClosedFormLabel] = {}

    def put(label):
        v = label.realize(p)
        if v in table:
            raise AssertionError(f"ambiguous label set: {label} and {table[v]}")
        table[v] = label

    put(ClosedFormLabel("Zero"))
    put(ClosedFormLabel("FullSum", i=s, exponent=n))
    for i in (0, 1, 2, 4):
        if i >= s:
            continue
        gauss = (i * d) % 2 == 1
        exponent = (n + i * d - 1) // 2 if gauss else (n + i * d) // 2
        for eps in (1, -1):
            for j in range(p):
                if gauss:
                    kind = "GaussPm"
                elif j:
                    kind = "ZetaTimesPm"
                else:
                    kind = "PlusPm" if eps > 0 else "MinusPm"
                put(ClosedFormLabel(kind, i=i, eps=eps, j=j, exponent=exponent))
    return table


def classify_value(v: CyclotomicInteger, params: TowerParams) -> ClosedFormLabel:
    """Exact lookup of ``v`` among the admissible closed forms for ``params``."""
    table = _label_table(params.p, params.n, params.d, params.s)
    try:
        return table[v]
    except KeyError:
        raise UnrecognizedValue(f"{v} is not an admissible value for {params}") from None
