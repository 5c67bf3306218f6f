"""Interned exact matrices with memoized products."""

from __future__ import annotations

from ..arith import CycloNumber
from ..monodromy import Mat2


class MatrixPool:
    """Interned matrices over one cyclotomic field with memoized products.

    Finite-group orbits touch few distinct matrices, so nearly every
    product becomes a dictionary lookup.
    """

    def __init__(self, order: int) -> None:
        self.order = order
        self.mats: list[Mat2] = []
        self._ids: dict[tuple, int] = {}
        self._mul: dict[tuple[int, int], int] = {}
        self._inv: dict[int, int] = {}
        self._trace: dict[int, int] = {}
        self.traces: list[CycloNumber] = []
        self._trace_ids: dict[tuple, int] = {}

    def _key(self, m: Mat2) -> tuple:
        return tuple((e.num, e.den) for e in m.entries())

    def lookup(self, m: Mat2):
        return self._ids.get(self._key(m.lift(self.order)))

    def intern(self, m: Mat2) -> int:
        m = m.lift(self.order)
        k = self._key(m)
        i = self._ids.get(k)
        if i is None:
            i = len(self.mats)
            self._ids[k] = i
            self.mats.append(m)
        return i

    def mul(self, i: int, j: int) -> int:
        r = self._mul.get((i, j))
        if r is None:
            r = self.intern(self.mats[i] * self.mats[j])
            self._mul[(i, j)] = r
        return r

    def inv(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = self.intern(self.mats[i].inv())
            self._inv[i] = r
        return r

    def trace(self, i: int) -> int:
        r = self._trace.get(i)
        if r is None:
            t = self.mats[i].trace().lift(self.order)
            k = (t.num, t.den)
            r = self._trace_ids.get(k)
            if r is None:
                r = len(self.traces)
                self._trace_ids[k] = r
                self.traces.append(t)
            self._trace[i] = r
        return r
