"""Angles in units of pi: rationals mod 2 folded by sign, and affine forms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Optional, Union

from .cyclotomic import CycloNumber, lcm, normalize_order

PIPELINE_DENOMINATOR = 2520
DEFAULT_COEFF_BOUND = 4


class NotRepresentable(ValueError):
    """A trace that is not 2cos(pi*q) for rational q."""


class CoefficientOverflow(ArithmeticError):
    """An affine coefficient exceeded the configured bound."""


def _mod2(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True, order=True)
class Angle:
    value: Fraction

    def __post_init__(self) -> None:
        v = Fraction(self.value)
        if not 0 <= v <= 1:
            raise ValueError(f"Angle representative must lie in [0,1], got {v}")
        object.__setattr__(self, "value", v)

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def trace(self) -> CycloNumber:
        return two_cos(self.value)

    def __str__(self) -> str:
        return str(self.value)


def normalize_angle(q: Union[int, Fraction, str, Angle]) -> Angle:
    if isinstance(q, Angle):
        return q
    r = _mod2(Fraction(q))
    if r > 1:
        r = 2 - r
    return Angle(r)


def cyclo_embed(q: Union[int, Fraction, str], order: Optional[int] = None) -> CycloNumber:
    """exp(i*pi*q) as an exact cyclotomic number.

    With ``order`` given, q's denominator must divide it and the value is
    zeta_{2N}^{qN}.
    """
    q = Fraction(q)
    if order is None:
        order = q.denominator
    if order % q.denominator:
        raise ValueError(f"denominator of {q} does not divide {order}")
    k = q.numerator * (order // q.denominator)
    return CycloNumber.zeta(2 * order, k)


@lru_cache(maxsize=4096)
def two_cos(q: Fraction) -> CycloNumber:
    """2cos(pi*q) in its smallest natural cyclotomic field."""
    q = normalize_angle(q).value
    if q in _RATIONAL_COS:
        return CycloNumber.rational(_RATIONAL_COS[q])
    e = cyclo_embed(q)
    return e + e.conjugate()


_RATIONAL_COS = {
    Fraction(0): 2,
    Fraction(1, 3): 1,
    Fraction(1, 2): 0,
    Fraction(2, 3): -1,
    Fraction(1): -2,
}


def angle_conductor(q: Fraction) -> int:
    """Smallest normalized N with 2cos(pi*q) in Q(zeta_N)."""
    q = normalize_angle(q).value
    if q in _RATIONAL_COS:
        return 1
    m = 2 * q.denominator // gcd(q.numerator, 2 * q.denominator)
    return normalize_order(m)


@lru_cache(maxsize=None)
def _cos_table(order: int) -> dict:
    """Map (num, den) of 2cos(pi*j/order) lifted to Q(zeta_order) -> angle."""
    table = {}
    for q in _candidate_angles(order):
        t = two_cos(q).lift(order)
        table[(t.num, t.den)] = Angle(q)
    return table


def _candidate_angles(order: int) -> list[Fraction]:
    # 2cos(pi q) lies in Q(zeta_N) only if q is in (1/N)Z; keep those whose
    # real subfield actually embeds
    cands = {q for q in (Fraction(j, order) for j in range(order + 1)) if order % angle_conductor(q) == 0}
    cands.update(_RATIONAL_COS)
    return sorted(cands)


def trace_to_angle(t: CycloNumber | int | Fraction) -> Angle:
    """The Angle q with t = 2cos(pi*q); raises NotRepresentable otherwise."""
    t = CycloNumber.coerce(t)
    if t.is_rational():
        v = t.to_fraction()
        for q, c in _RATIONAL_COS.items():
            if v == c:
                return Angle(q)
        raise NotRepresentable(f"rational trace {v} is not 2cos(pi*q)")
    hit = _cos_table(t.order).get((t.num, t.den))
    if hit is None:
        raise NotRepresentable(f"trace {t} is not 2cos(pi*q)")
    return hit


def try_trace_to_angle(t: CycloNumber) -> Optional[Angle]:
    try:
        return trace_to_angle(t)
    except NotRepresentable:
        return None


# ---------------------------------------------------------------------------
# affine angles


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([a-zA-Z_][a-zA-Z_0-9']*)?")


@dataclass(frozen=True)
class AffineAngle:
    """sum(c_i * p_i) + free, free kept modulo 2 without sign folding."""

    coeffs: tuple[tuple[str, int], ...] = ()
    free: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        merged: dict[str, int] = {}
        for name, c in self.coeffs:
            if not isinstance(c, int):
                raise TypeError("affine coefficients must be integers")
            merged[name] = merged.get(name, 0) + c
        object.__setattr__(
            self, "coeffs", tuple(sorted((k, v) for k, v in merged.items() if v))
        )
        object.__setattr__(self, "free", _mod2(Fraction(self.free)))

    @classmethod
    def const(cls, q) -> "AffineAngle":
        return cls((), Fraction(q))

    @classmethod
    def param(cls, name: str, coeff: int = 1) -> "AffineAngle":
        return cls(((name, coeff),), Fraction(0))

    @classmethod
    def parse(cls, text: str) -> "AffineAngle":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty affine expression")
        pos = 0
        coeffs: list[tuple[str, int]] = []
        free = Fraction(0)
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse affine angle {text!r}")
            sign, num, name = m.groups()
            if num is None and name is None:
                raise ValueError(f"cannot parse affine angle {text!r}")
            k = Fraction(num) if num else Fraction(1)
            if sign == "-":
                k = -k
            if name:
                if k.denominator != 1:
                    raise ValueError(f"non-integer coefficient in {text!r}")
                coeffs.append((name, int(k)))
            else:
                free += k
            pos = m.end()
        return cls(tuple(coeffs), free)

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.coeffs)

    def coeff(self, name: str) -> int:
        return dict(self.coeffs).get(name, 0)

    def is_constant(self) -> bool:
        return not self.coeffs

    def to_angle(self) -> Angle:
        if self.coeffs:
            raise ValueError(f"{self} still depends on parameters")
        return normalize_angle(self.free)

    def max_coeff(self) -> int:
        return max((abs(c) for _, c in self.coeffs), default=0)

    def check_bound(self, bound: int = DEFAULT_COEFF_BOUND) -> "AffineAngle":
        if self.max_coeff() > bound:
            raise CoefficientOverflow(f"coefficient bound {bound} exceeded in {self}")
        return self

    def check_pipeline_denominator(self, denom: int = PIPELINE_DENOMINATOR) -> "AffineAngle":
        if denom % self.free.denominator:
            raise ArithmeticError(f"free term {self.free} has denominator not dividing {denom}")
        return self

    def __add__(self, other: "AffineAngle") -> "AffineAngle":
        other = as_affine(other)
        return AffineAngle(self.coeffs + other.coeffs, self.free + other.free)

    def __neg__(self) -> "AffineAngle":
        return AffineAngle(tuple((k, -v) for k, v in self.coeffs), -self.free)

    def __sub__(self, other: "AffineAngle") -> "AffineAngle":
        return self + (-as_affine(other))

    def scale(self, k: int) -> "AffineAngle":
        return AffineAngle(tuple((n, k * v) for n, v in self.coeffs), k * self.free)

    def substitute(self, subst: Mapping[str, "AffineAngle"]) -> "AffineAngle":
        out = AffineAngle((), self.free)
        for name, c in self.coeffs:
            repl = subst.get(name)
            out = out + (repl.scale(c) if repl is not None else AffineAngle.param(name, c))
        return out

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        return _mod2(self.free + sum(c * Fraction(values[n]) for n, c in self.coeffs))

    def rename(self, mapping: Mapping[str, str]) -> "AffineAngle":
        return AffineAngle(tuple((mapping.get(n, n), c) for n, c in self.coeffs), self.free)

    def __str__(self) -> str:
        parts = []
        for n, c in self.coeffs:
            if c == 1:
                parts.append(f"+{n}")
            elif c == -1:
                parts.append(f"-{n}")
            else:
                parts.append(f"{c:+d}{n}")
        if self.free or not parts:
            parts.append(f"+{self.free}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


CellValue = Union[Angle, AffineAngle]


def as_affine(v) -> AffineAngle:
    if isinstance(v, AffineAngle):
        return v
    if isinstance(v, Angle):
        return AffineAngle.const(v.value)
    if isinstance(v, str):
        return AffineAngle.parse(v)
    return AffineAngle.const(Fraction(v))


def parse_cell_value(text: str) -> CellValue:
    """A rational literal becomes an Angle, anything with names an AffineAngle."""
    a = AffineAngle.parse(text)
    return a.to_angle() if a.is_constant() else a


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def lcm_denominators(qs) -> int:
    out = 1
    for q in qs:
        out = lcm(out, Fraction(q).denominator)
    return out


__all__ = [
    "Angle",
    "AffineAngle",
    "CellValue",
    "CoefficientOverflow",
    "NotRepresentable",
    "PIPELINE_DENOMINATOR",
    "angle_conductor",
    "as_affine",
    "cyclo_embed",
    "format_rational",
    "normalize_angle",
    "parse_cell_value",
    "trace_to_angle",
    "try_trace_to_angle",
    "two_cos",
]
