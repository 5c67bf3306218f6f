"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as an integer coefficient vector over the power basis
1, z, ..., z^(d-1) (d = phi(N)) together with a positive common
denominator.  The order N is always normalized so that N is not 2 mod 4,
since Q(zeta_2m) = Q(zeta_m) for odd m.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


def normalize_order(n: int) -> int:
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    if n % 4 == 2:
        return n // 2
    return n


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_order(a: int, b: int) -> int:
    return normalize_order(lcm(a, b))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]  # den is monic
        out[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


class _Field:
    """Per-order tables shared by all elements of Q(zeta_N)."""

    __slots__ = ("order", "degree", "powers", "units")

    def __init__(self, order: int) -> None:
        phi = cyclotomic_poly(order)
        d = len(phi) - 1
        self.order = order
        self.degree = d
        # powers[j] = z^j reduced, for 0 <= j < N
        powers: list[tuple[int, ...]] = []
        cur = [1] + [0] * (d - 1)
        for _ in range(order):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * phi[i]
        self.powers = powers
        self.units = tuple(k for k in range(1, order + 1) if gcd(k, order) == 1)

    def reduce(self, raw: Sequence[int]) -> list[int]:
        d = self.degree
        out = list(raw[:d]) + [0] * max(0, d - len(raw))
        n = self.order
        for k in range(d, len(raw)):
            c = raw[k]
            if c:
                p = self.powers[k % n]
                for i in range(d):
                    if p[i]:
                        out[i] += c * p[i]
        return out


@lru_cache(maxsize=None)
def field(order: int) -> _Field:
    return _Field(order)


@lru_cache(maxsize=None)
def _lift_images(src: int, dst: int) -> tuple[tuple[int, ...], ...]:
    """Images of the power basis of Q(zeta_src) inside Q(zeta_dst)."""
    F = field(src)
    G = field(dst)
    if dst % src == 0:
        step = dst // src
        return tuple(G.powers[(j * step) % dst] for j in range(F.degree))
    # src = 2m with m odd never occurs after normalization, so src | dst
    raise ValueError(f"Q(zeta_{src}) is not a subfield of Q(zeta_{dst})")


class CycloNumber:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("order", "num", "den", "_hash")

    order: int
    num: tuple[int, ...]
    den: int

    def __init__(self, order: int, num: Iterable[int], den: int = 1) -> None:
        order = normalize_order(order)
        num = list(num)
        d = field(order).degree
        if len(num) != d:
            num = field(order).reduce(num) if len(num) > d else num + [0] * (d - len(num))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("CycloNumber is immutable")

    # ---- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q: RationalLike, order: int = 1) -> "CycloNumber":
        q = Fraction(q)
        order = normalize_order(order)
        d = field(order).degree
        return cls(order, [q.numerator] + [0] * (d - 1), q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        """zeta_n^k, stored in Q(zeta_norm(n))."""
        k %= n
        m = normalize_order(n)
        if m == n:
            return cls(n, field(n).powers[k])
        # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
        e = (k * ((m + 1) // 2)) % m
        sign = -1 if k % 2 else 1
        return cls(m, [sign * c for c in field(m).powers[e]])

    @classmethod
    def coerce(cls, x: Union["CycloNumber", RationalLike]) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloNumber")

    # ---- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.num)

    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def lift(self, order: int) -> "CycloNumber":
        order = normalize_order(order)
        if order == self.order:
            return self
        imgs = _lift_images(self.order, order)
        d = field(order).degree
        out = [0] * d
        for c, img in zip(self.num, imgs):
            if c:
                for i in range(d):
                    if img[i]:
                        out[i] += c * img[i]
        return CycloNumber(order, out, self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def galois(self, k: int) -> "CycloNumber":
        """Image under zeta -> zeta^k (k coprime to the order)."""
        F = field(self.order)
        n = F.order
        if gcd(k, n) != 1:
            raise ValueError("Galois exponent must be a unit")
        out = [0] * F.degree
        for j, c in enumerate(self.num):
            if c:
                p = F.powers[(j * k) % n]
                for i in range(F.degree):
                    if p[i]:
                        out[i] += c * p[i]
        return CycloNumber(n, out, self.den)

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1 % self.order if self.order > 1 else 1)

    def norm(self) -> Fraction:
        F = field(self.order)
        acc = CycloNumber.rational(1, self.order)
        for k in F.units:
            acc = acc * self.galois(k)
        return acc.to_fraction()

    def minimal_order(self) -> "CycloNumber":
        """The same number represented in the smallest cyclotomic field containing it."""
        cur = self
        changed = True
        while changed and cur.order > 1:
            changed = False
            for p in _prime_factors(cur.order):
                m = normalize_order(cur.order // p)
                if m == cur.order or cur.order % m:
                    continue
                sub = _descend(cur, m)
                if sub is not None:
                    cur = sub
                    changed = True
                    break
        return cur

    # ---- arithmetic ---------------------------------------------------
    def _align(self, other) -> tuple["CycloNumber", "CycloNumber"]:
        other = CycloNumber.coerce(other)
        if other.order == self.order:
            return self, other
        n = common_order(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycloNumber(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycloNumber(
            a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-c for c in self.num], self.den)

    def __sub__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycloNumber(a.order, [x - y for x, y in zip(a.num, b.num)], a.den)
        return CycloNumber(
            a.order, [x * b.den - y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNumber(self.order, [c * other for c in self.num], self.den)
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        d = len(a.num)
        if d == 1:
            return CycloNumber(a.order, [a.num[0] * b.num[0]], a.den * b.den)
        raw = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        raw[i + j] += x * y
        return CycloNumber(a.order, field(a.order).reduce(raw), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            q = 1 / Fraction(self.num[0], self.den)
            return CycloNumber.rational(q, self.order)
        # x^{-1} = (product of the other conjugates) / norm
        F = field(self.order)
        acc = CycloNumber.rational(1, self.order)
        for k in F.units:
            if k % F.order != 1:
                acc = acc * self.galois(k)
        nrm = (acc * self).to_fraction()
        return acc * CycloNumber.rational(1 / nrm)

    def __truediv__(self, other):
        other = CycloNumber.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNumber.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # ---- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if self.order == other.order:
            return self.den == other.den and self.num == other.num
        a, b = self._align(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            m = self.minimal_order()
            if m.order == 1:
                h = hash(Fraction(m.num[0], m.den))
            else:
                h = hash((m.order, m.num, m.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycloNumber({self.order}, {list(self.num)}, {self.den})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            if j == 0:
                terms.append(str(q))
            else:
                z = "z" if j == 1 else f"z^{j}"
                terms.append(f"{q}*{z}" if q != 1 else z)
        body = " + ".join(terms) if terms else "0"
        return body if self.order <= 2 else f"{body} [z=zeta_{self.order}]"

    def to_complex(self) -> complex:
        """Floating-point value; only for diagnostics, never authoritative."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**j for j, c in enumerate(self.num)) / self.den


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _descend(x: CycloNumber, m: int) -> CycloNumber | None:
    """Return x as an element of Q(zeta_m) if it lies there, else None."""
    n = x.order
    # fixed by the subgroup {k = 1 mod m}
    for k in field(n).units:
        if k % m == 1 % m and k != 1:
            if x.galois(k) != x:
                return None
    imgs = _lift_images(m, n)
    dm = field(m).degree
    dn = field(n).degree
    # solve sum_j y_j imgs[j] = x.num (overdetermined, consistent)
    rows = [[Fraction(imgs[j][i]) for j in range(dm)] + [Fraction(x.num[i])] for i in range(dn)]
    sol = _solve_consistent(rows, dm)
    if sol is None:
        return None
    den = 1
    for s in sol:
        den = lcm(den, s.denominator)
    y = CycloNumber(m, [int(s * den) for s in sol], den * x.den)
    return y if y.lift(n) == x else None


def _solve_consistent(rows: list[list[Fraction]], nvars: int) -> list[Fraction] | None:
    rows = [r[:] for r in rows]
    piv_cols = []
    r = 0
    for c in range(nvars):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1]:
            return None
    sol = [Fraction(0)] * nvars
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


def as_cyclo(x) -> CycloNumber:
    return CycloNumber.coerce(x)
