"""Explicit monodromy tuples of the catalog.

Angles are rationals in units of pi; X = exp(i*pi*x) and so on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

from ..arith import CycloNumber, cyclo_embed
from ..monodromy import Mat2, MonodromyTuple

Q = Union[int, Fraction, str]


def _e(q: Q) -> CycloNumber:
    return cyclo_embed(Fraction(q))


def _m(a, b, c, d) -> Mat2:
    return Mat2(a, b, c, d)


def lower_triangular(x: Q, y: Q, z: Q, w: Q, vx: Q = 1, vy: Q = 0, vz: Q = 0, vw: Q = 0) -> MonodromyTuple:
    """Triangular 5-tuple; the last off-diagonal entry is fixed by the product."""
    X, Y, Z, W = (_e(q) for q in (x, y, z, w))
    mats = [
        _m(X, 0, Fraction(vx), X.inverse()),
        _m(Y, 0, Fraction(vy), Y.inverse()),
        _m(Z, 0, Fraction(vz), Z.inverse()),
        _m(W, 0, Fraction(vw), W.inverse()),
    ]
    p = mats[0] * mats[1] * mats[2] * mats[3]
    a = X * Y * Z * W
    mats.append(_m(a.inverse(), 0, -p.c, a))
    return MonodromyTuple(tuple(mats))


def three_letter_4(x: Q, y: Q, z: Q) -> MonodromyTuple:
    """Dihedral family of length 4 for any parameters."""
    X, Y, Z = _e(x), _e(y), _e(z)
    xyz = X * Y * Z
    return MonodromyTuple(
        (
            _m(0, 1, -1, 0),
            Mat2.diag(X),
            Mat2.diag(Y),
            Mat2.diag(Z),
            _m(0, -xyz.inverse(), xyz, 0),
        )
    )


def three_letter_big(x: Q, y: Q, z: Q) -> MonodromyTuple:
    """Dihedral family whose length follows :func:`dihedral_length`."""
    X, Y, Z = _e(x), _e(y), _e(z)
    xy = X * Y
    return MonodromyTuple(
        (
            _m(0, 1, -1, 0),
            _m(0, -xy, xy.inverse(), 0),
            Mat2.diag(X),
            _m(0, Y * Z.inverse(), -(Y.inverse()) * Z, 0),
            _m(0, -Z.inverse(), Z, 0),
        )
    )


def one_letter_9(x: Q) -> MonodromyTuple:
    X = _e(x)
    Xi = X.inverse()
    a = _m(X, 0, 1, Xi)
    return MonodromyTuple(
        (
            a,
            a,
            a,
            _m(Xi, -1, 0, X),
            _m(-1 - X * X, X**3, -X - Xi - Xi**3, X * X),
        )
    )


def one_letter_12(x: Q) -> MonodromyTuple:
    X = _e(x)
    Xi = X.inverse()
    lo = _m(X, 0, -1, Xi)
    up = _m(Xi, 1, 0, X)
    return MonodromyTuple((lo, up, _m(-X * X, 0, X + Xi, -(Xi * Xi)), up, lo))


def no_letter_105(k: int = 1) -> MonodromyTuple:
    """s = exp(2 i pi k / 7) with k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    s = CycloNumber.zeta(7, k)
    one = CycloNumber.rational(1, 7)
    sm, sp, s2 = s - one, s + one, s * s + one
    m1 = Mat2.diag(s, s**6)
    m2 = _m(
        s**6 * sm**5 * sp**3 * s2**2 / 7,
        s**5 * s2 / 7,
        s * sm**4 * sp**3,
        s**3 * (one - s) ** 5 * sp**3 * s2**2 / 7,
    )
    m1i = m1.inv()
    return MonodromyTuple(
        (
            m1,
            m2,
            m1 * m1 * m2 * m1i * m1i,
            m1i**3 * m2 * m1**3,
            m1i * m2 * m1,
        )
    )


def sqrt5() -> CycloNumber:
    z = [CycloNumber.zeta(5, j) for j in range(5)]
    return z[1] - z[2] - z[3] + z[4]


def no_letter_192() -> MonodromyTuple:
    r = sqrt5()
    h = Fraction(1, 2)
    return MonodromyTuple(
        (
            _m(-1, 1, 0, -1),
            _m(-1, 0, -1, -1),
            _m((-1 - r) * h, 1, (-3 + r) * h, (-3 + r) * h),
            _m((1 - r) * h, (3 - r) * h, (-3 + r) * h, (-5 + r) * h),
            _m((-1 - r) * h, (3 - r) * h, -1, (-3 + r) * h),
        )
    )


def six_c(x: Q) -> MonodromyTuple:
    """One-parameter 6-tuple."""
    X = _e(x)
    Xi = X.inverse()
    lo = _m(X, 0, 1, Xi)
    up = _m(Xi, -1, 0, X)
    return MonodromyTuple((lo, up, _m(-Xi, 1, 0, -X), lo, up, up))


def tuple_f() -> MonodromyTuple:
    """The tetrahedral 5-tuple of length 16."""
    i = CycloNumber.zeta(4)
    return MonodromyTuple(
        (
            _m(1, 1, -1, 0),
            _m(0, -1, 1, 1),
            _m(1, 1, -1, 0),
            _m(0, -i, -i, 1),
            _m(i, i - 1, 0, -i),
        )
    )


def f_reductions() -> dict[str, MonodromyTuple]:
    """The five 4-tuples obtained by multiplying neighbours of F."""
    f = tuple_f().mats
    return {
        "A": MonodromyTuple((f[0] * f[1], f[2], f[3], f[4])),
        "B": MonodromyTuple((f[0], f[1] * f[2], f[3], f[4])),
        "C": MonodromyTuple((f[0], f[1], f[2] * f[3], f[4])),
        "D": MonodromyTuple((f[0], f[1], f[2], f[3] * f[4])),
        "E": MonodromyTuple((f[1], f[2], f[3], f[4] * f[0])),
    }


CONSTRUCTORS: dict[str, Callable[..., MonodromyTuple]] = {
    "lowertriangular": lower_triangular,
    "3letter4": three_letter_4,
    "3letterbig": three_letter_big,
    "1letter9": one_letter_9,
    "1letter12": one_letter_12,
    "noletter105": no_letter_105,
    "noletter192": no_letter_192,
    "sixc": six_c,
    "F": tuple_f,
}


def build(name: str, params: dict | None = None) -> MonodromyTuple:
    """Instantiate a named constructor; string rationals are accepted."""
    fn = CONSTRUCTORS[name]
    kwargs = {}
    for k, v in (params or {}).items():
        kwargs[k] = int(v) if k == "k" else Fraction(v)
    return fn(**kwargs)


__all__ = [
    "CONSTRUCTORS",
    "build",
    "f_reductions",
    "lower_triangular",
    "no_letter_105",
    "no_letter_192",
    "one_letter_12",
    "one_letter_9",
    "six_c",
    "sqrt5",
    "three_letter_4",
    "three_letter_big",
    "tuple_f",
]
