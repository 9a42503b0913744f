"""Value and weight distributions with JSON/CSV serialization.

Multiplicities are Python ints and are serialized as decimal strings so that
nothing is lost in JSON readers with 53-bit numbers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .cyclo import CyclotomicInteger, classify_value
from .errors import MassMismatch, UnrecognizedValue
from .field import TowerParams


def params_json(params: TowerParams) -> dict:
    return {"p": params.p, "m": params.m, "k": params.k, "t": params.t,
            "d": params.d, "dprime": params.dprime}


@dataclass
class ValueDistribution:
    """Multiset of cyclotomic values.

    ``kind`` is "T", "S" or "corr"; correlation values are S-values shifted by
    -1, so they are labelled through ``value + 1``.
    """

    params: TowerParams
    counts: dict
    domain_size: int
    kind: str = "T"
    extra: dict = field(default_factory=dict)

    @property
    def mass(self) -> int:
        return sum(self.counts.values())

    def check_mass(self):
        if self.mass != self.domain_size:
            raise MassMismatch(f"mass {self.mass} != domain size {self.domain_size}")
        return self

    def multiplicity(self, value) -> int:
        if isinstance(value, int):
            value = CyclotomicInteger.rational(self.params.p, value)
        return self.counts.get(value, 0)

    def label(self, value: CyclotomicInteger) -> str | None:
        target = value + 1 if self.kind == "corr" else value
        try:
            text = classify_value(target, self.params).rendered
        except UnrecognizedValue:
            return None
        return f"{text} - 1" if self.kind == "corr" else text

    def entries(self) -> list[tuple[CyclotomicInteger, int]]:
        return sorted(((v, c) for v, c in self.counts.items() if c), key=lambda vc: vc[0].coords)

    def __eq__(self, other):
        if not isinstance(other, ValueDistribution):
            return NotImplemented
        strip = lambda d: {k: v for k, v in d.items() if v}  # noqa: E731
        return (self.params == other.params and self.domain_size == other.domain_size
                and strip(self.counts) == strip(other.counts))

    def to_json_obj(self) -> dict:
        obj = {
            "params": params_json(self.params),
            "domain_size": str(self.domain_size),
            "mass": str(self.mass),
            "entries": [{"value": v.key(), "label": self.label(v), "multiplicity": str(c)}
                        for v, c in self.entries()],
        }
        obj.update(self.extra)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "label", "multiplicity"])
        for v, c in self.entries():
            w.writerow([v.key(), self.label(v) or "", c])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"{'value':>28}  {'label':>28}  multiplicity"]
        for v, c in self.entries():
            lines.append(f"{v.key():>28}  {str(self.label(v)):>28}  {c}")
        lines.append(f"mass {self.mass} / domain {self.domain_size}")
        return "\n".join(lines)

    @classmethod
    def from_json_obj(cls, obj: dict, params: TowerParams, kind: str = "T") -> ValueDistribution:
        counts = {CyclotomicInteger.from_key(params.p, e["value"]): int(e["multiplicity"])
                  for e in obj["entries"]}
        return cls(params, counts, int(obj["domain_size"]), kind)


@dataclass
class WeightDistribution:
    code: str
    params: TowerParams
    length: int
    dimension: int
    counts: dict

    @property
    def mass(self) -> int:
        return sum(self.counts.values())

    def check_mass(self):
        expected = self.params.p ** (self.params.t * self.dimension)
        if self.mass != expected:
            raise MassMismatch(f"{self.code}: mass {self.mass} != p^(t*dim) = {expected}")
        return self

    def entries(self) -> list[tuple[int, int]]:
        return sorted((w, c) for w, c in self.counts.items() if c)

    def __eq__(self, other):
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return (self.code, self.params, self.entries()) == (other.code, other.params, other.entries())

    def to_json_obj(self) -> dict:
        return {"code": self.code, "params": params_json(self.params), "length": self.length,
                "dimension": self.dimension,
                "entries": [{"weight": w, "multiplicity": str(c)} for w, c in self.entries()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "multiplicity"])
        w.writerows(self.entries())
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"{self.code} length {self.length} dimension {self.dimension}"]
        lines += [f"{w:>10}  {c}" for w, c in self.entries()]
        return "\n".join(lines)
