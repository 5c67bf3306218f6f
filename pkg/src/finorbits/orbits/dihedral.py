"""Closed-form orbit length of the rational dihedral family."""

from __future__ import annotations

from fractions import Fraction
from math import lcm



def _odd_prime_factors(v: int) -> list[int]:
    out, p = [], 3
    while v % 2 == 0:
        v //= 2
    while p * p <= v:
        if v % p == 0:
            out.append(p)
            while v % p == 0:
                v //= p
        p += 2
    if v > 1:
        out.append(v)
    return out


def dihedral_length(x, y, z) -> int:
    """u^2 v^2 prod_{odd p | v}(1 - p^-2) / (1 + [u = 1][v != 1]).

    u is the denominator of x and v the least common denominator of u*y and u*z.
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    u = x.denominator
    v = lcm((u * y).denominator, (u * z).denominator)
    num = Fraction(u * u * v * v)
    for p in _odd_prime_factors(v):
        num *= 1 - Fraction(1, p * p)
    den = 2 if (u == 1 and v != 1) else 1
    out = num / den
    if out.denominator != 1 or out <= 0:
        raise ArithmeticError(f"non-integer dihedral length {out}")
    return int(out)


__all__ = ["dihedral_length"]
