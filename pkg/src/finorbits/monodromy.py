"""Monodromy tuples: braid moves, symmetries, reduction and induction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .arith import CycloNumber, common_order

Entry = Union[CycloNumber, int, Fraction]

_ZERO = CycloNumber.rational(0)
_ONE = CycloNumber.rational(1)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over a cyclotomic field, row-major (a b; c d)."""

    a: CycloNumber
    b: CycloNumber
    c: CycloNumber
    d: CycloNumber

    def __post_init__(self) -> None:
        for f in ("a", "b", "c", "d"):
            v = getattr(self, f)
            if not isinstance(v, CycloNumber):
                object.__setattr__(self, f, CycloNumber.coerce(v))

    @classmethod
    def of(cls, rows: Sequence[Sequence[Entry]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(_ONE, _ZERO, _ZERO, _ONE)

    @classmethod
    def diag(cls, x: Entry, y: Optional[Entry] = None) -> "Mat2":
        x = CycloNumber.coerce(x)
        y = x.inverse() if y is None else CycloNumber.coerce(y)
        return cls(x, _ZERO, _ZERO, y)

    def rows(self) -> tuple[tuple[CycloNumber, CycloNumber], tuple[CycloNumber, CycloNumber]]:
        return ((self.a, self.b), (self.c, self.d))

    def entries(self) -> tuple[CycloNumber, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def order(self) -> int:
        n = 1
        for e in self.entries():
            n = common_order(n, e.order)
        return n

    def lift(self, order: int) -> "Mat2":
        return Mat2(*(e.lift(order) for e in self.entries()))

    def __mul__(self, o: "Mat2") -> "Mat2":
        if isinstance(o, Mat2):
            return Mat2(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        o = CycloNumber.coerce(o)
        return Mat2(self.a * o, self.b * o, self.c * o, self.d * o)

    def __rmul__(self, o) -> "Mat2":
        return self * o

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inv(self) -> "Mat2":
        """Inverse; the adjugate when det = 1."""
        det = self.det()
        if det == 1:
            return self.adjugate()
        return self.adjugate() * det.inverse()

    def trace(self) -> CycloNumber:
        return self.a + self.d

    def det(self) -> CycloNumber:
        return self.a * self.d - self.b * self.c

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a == 1

    def conj(self, g: "Mat2") -> "Mat2":
        """g * self * g^-1."""
        return g * self * g.inv()

    def __pow__(self, e: int) -> "Mat2":
        if e < 0:
            return self.inv() ** (-e)
        out = Mat2.identity()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


UnimodularMatrix = Mat2


@dataclass(frozen=True)
class MonodromyTuple:
    """n matrices with product I (checked by :func:`verify_tuple`) and labels N_1..N_n."""

    mats: tuple[Mat2, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        labels = tuple(self.labels) if self.labels else tuple(range(1, len(mats) + 1))
        if sorted(labels) != list(range(1, len(mats) + 1)):
            raise ValueError(f"labels {labels} are not a permutation of 1..{len(mats)}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, mats: Iterable, labels: Sequence[int] = ()) -> "MonodromyTuple":
        ms = tuple(m if isinstance(m, Mat2) else Mat2.of(m) for m in mats)
        return cls(ms, tuple(labels))

    @property
    def n(self) -> int:
        return len(self.mats)

    def __len__(self) -> int:
        return len(self.mats)

    def __getitem__(self, k: int) -> Mat2:
        """1-based, cyclic."""
        return self.mats[(k - 1) % self.n]

    def short(self) -> "MonodromyTuple":
        return MonodromyTuple(self.mats)

    def product(self) -> Mat2:
        out = Mat2.identity()
        for m in self.mats:
            out = out * m
        return out

    @property
    def order(self) -> int:
        n = 1
        for m in self.mats:
            n = common_order(n, m.order)
        return n

    def lift(self, order: int) -> "MonodromyTuple":
        return MonodromyTuple(tuple(m.lift(order) for m in self.mats), self.labels)

    def conj(self, g: Mat2) -> "MonodromyTuple":
        gi = g.inv()
        return MonodromyTuple(tuple(g * m * gi for m in self.mats), self.labels)

    def braid(self, k: int, forward: bool = True) -> "MonodromyTuple":
        return braid_tuple(self, k, forward)

    def trivially_labeled(self) -> bool:
        return self.labels == tuple(range(1, self.n + 1))


# ---------------------------------------------------------------------------
# braid group


def braid_tuple(t: MonodromyTuple, k: int, forward: bool = True) -> MonodromyTuple:
    """B_{k,k+1} (forward) or B_{k+1,k} (backward); k is 1-based mod n."""
    n = t.n
    p = (k - 1) % n
    q = k % n
    mats = list(t.mats)
    labels = list(t.labels)
    mp, mq = mats[p], mats[q]
    if forward:
        mats[p], mats[q] = mp * mq * mp.inv(), mp
    else:
        mats[p], mats[q] = mq, mq.inv() * mp * mq
    labels[p], labels[q] = labels[q], labels[p]
    return MonodromyTuple(tuple(mats), tuple(labels))


# ---------------------------------------------------------------------------
# validity


@dataclass(frozen=True)
class Violation:
    kind: str
    position: Optional[int]
    detail: str

    def __str__(self) -> str:
        where = f" at M_{self.position}" if self.position else ""
        return f"{self.kind}{where}: {self.detail}"


def verify_tuple(t: MonodromyTuple) -> Optional[Violation]:
    """None when valid, otherwise the first violated constraint."""
    for i, m in enumerate(t.mats, 1):
        det = m.det()
        if det != 1:
            return Violation("determinant", i, f"det = {det}")
    prod = t.product()
    if not prod.is_identity():
        return Violation("product", None, f"M_1...M_n = {prod}")
    return None


# ---------------------------------------------------------------------------
# reducibility


def shares_eigenvector(x: Mat2, y: Mat2) -> bool:
    """Pair test: tr(X)^2 + tr(Y)^2 + tr(XY)^2 - tr(X)tr(Y)tr(XY) = 4."""
    tx, ty, txy = x.trace(), y.trace(), (x * y).trace()
    return tx * tx + ty * ty + txy * txy - tx * ty * txy == 4


def algebra_dimension(mats: Sequence[Mat2]) -> int:
    """Dimension of the unital algebra generated by the matrices (at most 4)."""
    basis: list[list[CycloNumber]] = []
    pivots: list[int] = []

    def add(m: Mat2) -> bool:
        v = list(m.entries())
        for row, pc in zip(basis, pivots):
            if not v[pc].is_zero():
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        pc = next((i for i, e in enumerate(v) if not e.is_zero()), None)
        if pc is None:
            return False
        inv = v[pc].inverse()
        v = [e * inv for e in v]
        for j, row in enumerate(basis):
            if not row[pc].is_zero():
                f = row[pc]
                basis[j] = [a - f * b for a, b in zip(row, v)]
        basis.append(v)
        pivots.append(pc)
        return True

    words = [Mat2.identity()]
    add(words[0])
    gens = [m for m in mats if not m.is_scalar()]
    frontier = list(words)
    while frontier and len(basis) < 4:
        nxt = []
        for w in frontier:
            for g in gens:
                m = w * g
                if add(m):
                    nxt.append(m)
                    if len(basis) == 4:
                        return 4
        frontier = nxt
    return len(basis)


def is_triangular(t: Union[MonodromyTuple, Sequence[Mat2]]) -> bool:
    """True iff all matrices share an eigenvector (over C).

    By Burnside's theorem this holds exactly when the generated algebra is a
    proper subalgebra of M_2, which avoids adjoining square roots.
    """
    mats = t.mats if isinstance(t, MonodromyTuple) else tuple(t)
    return algebra_dimension(mats) < 4


def _nullspace(rows: list[list[CycloNumber]], ncols: int) -> list[list[CycloNumber]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [_ZERO] * ncols
        v[free] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(v)
    return basis


def conjugator(s: MonodromyTuple, t: MonodromyTuple) -> Optional[Mat2]:
    """Invertible G with G s_i G^-1 = t_i for all i, if one exists.

    Exact for irreducible tuples (the solution space is then a line); for
    reducible ones only the basis vectors and their sum are tried.
    """
    if s.n != t.n:
        return None
    rows = []
    for a, b in zip(s.mats, t.mats):
        # G A - B G = 0, G = [[g0, g1], [g2, g3]]
        rows.append([a.a - b.a, a.c, -b.b, _ZERO])
        rows.append([a.b, a.d - b.a, _ZERO, -b.b])
        rows.append([-b.c, _ZERO, a.a - b.d, a.c])
        rows.append([_ZERO, -b.c, a.b, a.d - b.d])
    basis = _nullspace(rows, 4)
    cands = basis + ([[sum(col, _ZERO) for col in zip(*basis)]] if len(basis) > 1 else [])
    for v in cands:
        g = Mat2(*v)
        if not g.det().is_zero():
            return g
    return None


def are_conjugate(s: MonodromyTuple, t: MonodromyTuple) -> bool:
    return conjugator(s, t) is not None


# ---------------------------------------------------------------------------
# reduction / induction / symmetries


def _rank(labels: Sequence[int]) -> tuple[int, ...]:
    order = sorted(labels)
    pos = {v: i + 1 for i, v in enumerate(order)}
    return tuple(pos[v] for v in labels)


def reduce_tuple(t: MonodromyTuple, k: int) -> MonodromyTuple:
    """Replace M_k, M_{k+1} (k mod n) by their product."""
    n = t.n
    if n < 2:
        raise ValueError("cannot reduce a tuple of length < 2")
    p = (k - 1) % n
    q = k % n
    prod = t.mats[p] * t.mats[q]
    if q == 0:
        # pair (M_n, M_1): (M_2, ..., M_{n-1}, M_n M_1)
        mats = t.mats[1:p] + (prod,)
        labels = t.labels[1:p] + (t.labels[p],)
    else:
        mats = t.mats[:p] + (prod,) + t.mats[q + 1 :]
        labels = t.labels[:p] + (t.labels[p],) + t.labels[q + 1 :]
    return MonodromyTuple(mats, _rank(labels))


def induct_tuple(t: MonodromyTuple, k: int, c: Mat2) -> MonodromyTuple:
    """Replace M_k by (C, C^-1 M_k)."""
    p = (k - 1) % t.n
    lab = t.labels[p]
    shifted = [v + 1 if v > lab else v for v in t.labels]
    mats = t.mats[:p] + (c, c.inv() * t.mats[p]) + t.mats[p + 1 :]
    labels = tuple(shifted[:p]) + (lab, lab + 1) + tuple(shifted[p + 1 :])
    return MonodromyTuple(mats, labels)


@dataclass(frozen=True)
class SymmetryOp:
    kind: str  # "cyclic-shift" | "negate-pair" | "invert-reverse"
    p: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("cyclic-shift", "negate-pair", "invert-reverse"):
            raise ValueError(f"unknown symmetry {self.kind!r}")
        if self.kind == "negate-pair" and self.p == self.q:
            raise ValueError("negate-pair needs two distinct positions")


def apply_symmetry(t: MonodromyTuple, s: SymmetryOp) -> MonodromyTuple:
    if s.kind == "cyclic-shift":
        return MonodromyTuple(t.mats[1:] + t.mats[:1], t.labels[1:] + t.labels[:1])
    if s.kind == "negate-pair":
        mats = list(t.mats)
        for pos in (s.p, s.q):
            i = (pos - 1) % t.n
            mats[i] = -mats[i]
        return MonodromyTuple(tuple(mats), t.labels)
    return MonodromyTuple(tuple(m.inv() for m in reversed(t.mats)), tuple(reversed(t.labels)))


def signature_of_tuple(t: MonodromyTuple):
    """Complete signature of a tuple (see :mod:`finorbits.signatures`)."""
    from .signatures.signature import signature_of_tuple as impl

    return impl(t)


__all__ = [
    "Mat2",
    "MonodromyTuple",
    "SymmetryOp",
    "UnimodularMatrix",
    "Violation",
    "algebra_dimension",
    "are_conjugate",
    "conjugator",
    "apply_symmetry",
    "braid_tuple",
    "induct_tuple",
    "is_triangular",
    "reduce_tuple",
    "shares_eigenvector",
    "signature_of_tuple",
    "verify_tuple",
]
