"""Exact closure of a finite matrix group with integer Cayley tables."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..arith import CycloNumber
from ..monodromy import Mat2
from .bfs_pool import MatrixPool

DEFAULT_GROUP_CAP = 4096


@dataclass
class FiniteGroup:
    pool: MatrixPool
    elements: list[int]  # pool ids; position = element index
    mul: np.ndarray  # (G, G) int32, mul[a, b] = index of a*b
    inv: np.ndarray  # (G,) int32
    identity: int
    gens: list[int]  # element indices of the generators

    @property
    def order(self) -> int:
        return len(self.elements)

    def matrix(self, i: int) -> Mat2:
        return self.pool.mats[self.elements[i]]

    def index_of(self, m: Mat2) -> Optional[int]:
        pid = self.pool.lookup(m)
        return None if pid is None else self._pos.get(pid)

    def trace_ids(self) -> np.ndarray:
        return np.asarray([self.pool.trace(e) for e in self.elements], dtype=np.int32)

    def traces(self) -> list[CycloNumber]:
        return [self.pool.traces[self.pool.trace(e)] for e in self.elements]


def close_group(mats: Sequence[Mat2], order: int, cap: int = DEFAULT_GROUP_CAP) -> Optional[FiniteGroup]:
    """The group generated by ``mats`` if it has at most ``cap`` elements.

    Elements are reached by left multiplication with generators; each keeps
    its BFS parent, so row a of the Cayley table is the generator table
    applied to the row of a's parent.
    """
    pool = MatrixPool(order)
    gen_ids = []
    for m in mats:
        i = pool.intern(m)
        if i not in gen_ids:
            gen_ids.append(i)
    ident = pool.intern(Mat2.identity())
    pos = {ident: 0}
    elements = [ident]
    parent = [(-1, -1)]  # (parent element, generator slot)
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for slot, g in enumerate(gen_ids):
            c = pool.mul(g, elements[a])
            if c not in pos:
                if len(elements) >= cap:
                    return None
                pos[c] = len(elements)
                elements.append(c)
                parent.append((a, slot))
                queue.append(pos[c])
    size = len(elements)
    # left[slot][b] = index of gen_slot * element b
    left = np.empty((len(gen_ids), size), dtype=np.int32)
    for slot, g in enumerate(gen_ids):
        for b in range(size):
            left[slot, b] = pos[pool.mul(g, elements[b])]
    mul = np.empty((size, size), dtype=np.int32)
    mul[0] = np.arange(size, dtype=np.int32)
    for a in range(1, size):
        pa, slot = parent[a]
        mul[a] = left[slot][mul[pa]]
    inv = np.argmax(mul == 0, axis=1).astype(np.int32)
    fg = FiniteGroup(pool, elements, mul, inv, 0, [pos[g] for g in gen_ids])
    fg._pos = pos  # type: ignore[attr-defined]
    return fg


__all__ = ["DEFAULT_GROUP_CAP", "FiniteGroup", "close_group"]
