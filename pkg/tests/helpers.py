"""Random finite-orbit tuples and other fixtures shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from finorbits.monodromy import (
    Mat2,
    MonodromyTuple,
    SymmetryOp,
    apply_symmetry,
    braid_tuple,
    is_triangular,
    reduce_tuple,
)
from finorbits.orbits import constructors as C

# every cell of these tuples is a rational angle, which is what signatures need
_BASES = [
    lambda r: C.tuple_f(),
    lambda r: C.one_letter_9(*_angles(r, 1)),
    lambda r: C.one_letter_12(*_angles(r, 1)),
    lambda r: C.no_letter_192(),
    lambda r: C.no_letter_105(r.choice((1, 2, 3))),
    lambda r: C.three_letter_4(*_angles(r, 3)),
    lambda r: C.three_letter_big(*_angles(r, 3)),
]


def _angles(r: random.Random, k: int, max_den: int = 12) -> list[Fraction]:
    return [Fraction(r.randrange(1, 2 * d), d) for d in (r.randint(2, max_den) for _ in range(k))]


def _conjugator(r: random.Random) -> Mat2:
    a, b = r.randint(-2, 2), r.randint(-2, 2)
    return Mat2.of([[1, a], [0, 1]]) * Mat2.of([[1, 0], [b, 1]])


def random_tuple(
    r: random.Random,
    n: Optional[int] = None,
    max_order: int = 24,
    word: int = 8,
    tries: int = 200,
) -> MonodromyTuple:
    """A non-triangular tuple with rational-angle cells and field order <= max_order."""
    for _ in range(tries):
        t = r.choice(_BASES)(r)
        if t.order > max_order:
            continue
        for _ in range(r.randint(0, word)):
            t = braid_tuple(t, r.randint(1, t.n), r.random() < 0.5)
        if r.random() < 0.5:
            kind = r.choice(["cyclic-shift", "negate-pair", "invert-reverse"])
            p, q = r.sample(range(1, t.n + 1), 2)
            t = apply_symmetry(t, SymmetryOp(kind, p, q))
        if n == 4 or (n is None and r.random() < 0.4):
            t = reduce_tuple(t, r.randint(1, t.n))
        if n is not None and t.n != n:
            continue
        if is_triangular(t):
            continue
        if r.random() < 0.5:
            t = t.conj(_conjugator(r))
        return t
    raise RuntimeError("no suitable tuple found")


def diagonal_tuple(r: random.Random, n: int) -> MonodromyTuple:
    """Commuting diagonal matrices with product I."""
    angles = _angles(r, n - 1)
    last = -sum(angles)
    mats = [Mat2.diag(C._e(q)) for q in angles + [last]]
    return MonodromyTuple(tuple(mats))
