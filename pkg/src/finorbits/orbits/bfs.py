"""Orbit enumeration under the 2n braid generators.

Two passes.  The first walks conjugacy classes of tuples: a state is keyed
by the exact trace of every cell, which determines a non-triangular tuple
up to conjugation.  It records, for every state and generator, the index
of the successor.  The second pass walks (state, label permutation) pairs
over that table in a compiled kernel; the labels move by the transposition
of the two braided positions whatever the direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Optional

import numpy as np

from ..arith import CycloNumber, trace_to_angle
from ..monodromy import MonodromyTuple, are_conjugate, is_triangular
from ..signatures.cells import all_cells, braid_cell_map
from ..signatures.signature import Signature, trace_vector
from . import kernels
from .bfs_pool import MatrixPool
from .group import DEFAULT_GROUP_CAP, FiniteGroup, close_group

DEFAULT_BUDGET = 5_000_000


class TriangularInput(ValueError):
    """Triangular tuples have no signature-keyed orbit."""


class OrbitConsistencyError(RuntimeError):
    """Key collision between non-conjugate tuples, or a broken count identity."""


@dataclass(frozen=True)
class OrbitState:
    key: tuple[int, ...]  # interned cell traces
    witness: MonodromyTuple
    perm: tuple[int, ...] = ()


@dataclass
class OrbitReport:
    finite: bool
    length: int
    total_states: int
    generator_closure_checked: bool
    n: int = 0
    classes: int = 0  # states ignoring labels
    backend: str = ""
    states: list[MonodromyTuple] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "finite": self.finite,
            "length": self.length,
            "total_states": self.total_states,
            "generator_closure_checked": self.generator_closure_checked,
            "classes": self.classes,
            "backend": self.backend,
        }


def _generators(n: int) -> list[tuple[int, bool]]:
    return [(k, fwd) for k in range(1, n + 1) for fwd in (True, False)]


def _cell_trace(pool: MatrixPool, ids: tuple[int, ...], members: tuple[int, ...]) -> int:
    acc = ids[members[0]]
    for m in members[1:]:
        acc = pool.mul(acc, ids[m])
    return pool.trace(acc)


class ClassGraph:
    """Conjugacy classes reachable from a tuple, with the generator table.

    When the matrices generate a finite group of at most ``group_cap``
    elements the walk runs in the kernel over its Cayley table; otherwise
    it runs here over memoized exact matrices.
    """

    def __init__(
        self,
        t: MonodromyTuple,
        budget: int = DEFAULT_BUDGET,
        check_conjugacy: bool = False,
        group_cap: int = DEFAULT_GROUP_CAP,
    ):
        self.n = n = t.n
        self.cells = all_cells(n)
        self.gens = _generators(n)
        self.cmaps = [braid_cell_map(n, k, fwd) for k, fwd in self.gens]
        self.check_conjugacy = check_conjugacy
        self.exceeded = False
        self.group: Optional[FiniteGroup] = None
        if group_cap and not check_conjugacy:
            self.group = close_group(t.mats, t.order, group_cap)
        if self.group is not None:
            self.pool = self.group.pool
            self._explore_table(t, budget)
        else:
            self.pool = MatrixPool(t.order)
            self._explore_pool(t, budget)

    # ---- finite group: integer tables -----------------------------------
    def _explore_table(self, t: MonodromyTuple, budget: int) -> None:
        grp = self.group
        nc = len(self.cells)
        width = max(len(c.members) for c in self.cells)
        cells = np.zeros((nc, width), dtype=np.int32)
        clen = np.zeros(nc, dtype=np.int32)
        for i, c in enumerate(self.cells):
            cells[i, : len(c.members)] = c.members
            clen[i] = len(c.members)
        cmaps = np.asarray([[-1 if s is None else s for s in m] for m in self.cmaps], dtype=np.int32)
        gpq = np.asarray([((k - 1) % self.n, k % self.n, int(f)) for k, f in self.gens], dtype=np.int32)
        start = np.asarray([grp.index_of(m) for m in t.mats], dtype=np.int32)
        tid = grp.trace_ids()
        wit, keys, trans, exceeded = kernels.class_bfs(
            grp.mul, grp.inv, tid, cells, clen, cmaps, gpq, start, budget
        )
        self.witness = np.asarray(wit)
        self._keys = keys
        self.trans = np.asarray(trans, dtype=np.int64).reshape(-1, len(self.gens))
        self.exceeded = bool(exceeded)
        self._mat = lambda i: grp.matrix(i)

    # ---- general case: memoized exact matrices --------------------------
    def _explore_pool(self, t: MonodromyTuple, budget: int) -> None:
        pool = self.pool
        ids0 = tuple(pool.intern(m) for m in t.mats)
        key0 = tuple(_cell_trace(pool, ids0, c.members) for c in self.cells)
        index: dict[tuple[int, ...], int] = {key0: 0}
        self._keys = [key0]
        self.witness = [ids0]
        trans: list[list[int]] = []
        self._mat = lambda i: pool.mats[i]
        queue = deque([0])
        ng = len(self.gens)
        while queue:
            s = queue.popleft()
            ids, key = self.witness[s], self._keys[s]
            row = [0] * ng
            for g in range(ng):
                cids, ckey = self._child(ids, key, g)
                c = index.get(ckey)
                if c is None:
                    c = len(self._keys)
                    if c >= budget:
                        self.exceeded = True
                        self.trans = np.asarray(trans, dtype=np.int64)
                        return
                    index[ckey] = c
                    self._keys.append(ckey)
                    self.witness.append(cids)
                    queue.append(c)
                elif self.check_conjugacy and not are_conjugate(
                    self.tuple_of(self.witness[c]), self.tuple_of(cids)
                ):
                    raise OrbitConsistencyError("equal keys for non-conjugate tuples")
                row[g] = c
            trans.append(row)
        self.trans = np.asarray(trans, dtype=np.int64).reshape(-1, ng)

    def _child(self, ids: tuple[int, ...], key: tuple[int, ...], g: int):
        pool = self.pool
        k, fwd = self.gens[g]
        p, q = (k - 1) % self.n, k % self.n
        mp, mq = ids[p], ids[q]
        new = list(ids)
        if fwd:
            new[p] = pool.mul(pool.mul(mp, mq), pool.inv(mp))
            new[q] = mp
        else:
            new[p] = mq
            new[q] = pool.mul(pool.mul(pool.inv(mq), mp), mq)
        new_ids = tuple(new)
        ckey = tuple(
            key[src] if src is not None else _cell_trace(pool, new_ids, c.members)
            for c, src in zip(self.cells, self.cmaps[g])
        )
        return new_ids, ckey

    # ---- access ----------------------------------------------------------
    @property
    def path(self) -> str:
        return "table" if self.group is not None else "pool"

    def tuple_of(self, ids) -> MonodromyTuple:
        return MonodromyTuple(tuple(self._mat(int(i)) for i in ids))

    def witness_tuple(self, s: int) -> MonodromyTuple:
        return self.tuple_of(self.witness[s])

    def trace_values(self, s: int) -> list[CycloNumber]:
        if self.group is not None:
            return list(trace_vector(self.witness_tuple(s)))
        return [self.pool.traces[i] for i in self._keys[s]]

    def state(self, s: int) -> OrbitState:
        return OrbitState(tuple(int(x) for x in self._keys[s]), self.witness_tuple(s))

    def signature(self, s: int) -> Signature:
        return Signature(self.n, tuple(trace_to_angle(v) for v in self.trace_values(s)))

    def __len__(self) -> int:
        return len(self.witness)


def permutation_table(n: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """All label permutations and their successor under each generator."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    gens = _generators(n)
    table = []
    for p in perms:
        row = []
        for k, _ in gens:
            a, b = (k - 1) % n, k % n
            lst = list(p)
            lst[a], lst[b] = lst[b], lst[a]
            row.append(index[tuple(lst)])
        table.append(row)
    return perms, table


def enumerate_orbit(
    t: MonodromyTuple,
    budget: int = DEFAULT_BUDGET,
    *,
    keep_states: bool = False,
    check_conjugacy: bool = False,
    kernel=None,
    group_cap: int = DEFAULT_GROUP_CAP,
) -> OrbitReport:
    """Length and labeled size of the braid orbit of ``t``.

    ``budget`` bounds the labeled states; exceeding it yields finite=False.
    """
    if is_triangular(t):
        raise TriangularInput("tuple is triangular")
    n = t.n
    nf = factorial(n)
    graph = ClassGraph(t, budget=budget, check_conjugacy=check_conjugacy, group_cap=group_cap)
    if graph.exceeded:
        return OrbitReport(False, 0, len(graph), False, n, len(graph), "")
    perms, ptab = permutation_table(n)
    pidx = {p: i for i, p in enumerate(perms)}
    start_perm = pidx[tuple(_rank0(t.labels, n))]
    identity = pidx[tuple(range(n))]
    fn = kernel or kernels.labeled_bfs
    backend = kernels.BACKEND if kernel is None else "custom"
    trans = graph.trans
    total, length, closed, exceeded = fn(
        trans, np.asarray(ptab, dtype=np.int64), 0, start_perm, identity, budget
    )
    if exceeded:
        return OrbitReport(False, 0, total, False, n, len(graph), backend)
    if total != length * nf:
        raise OrbitConsistencyError(f"total {total} != length {length} x {nf}")
    states = [graph.tuple_of(w) for w in graph.witness] if keep_states else []
    return OrbitReport(True, length, total, bool(closed), n, len(graph), f"{backend}/{graph.path}", states)


def _rank0(labels, n: int) -> list[int]:
    if not labels:
        return list(range(n))
    order = sorted(range(n), key=lambda i: labels[i])
    out = [0] * n
    for r, i in enumerate(order):
        out[i] = r
    return out


__all__ = [
    "ClassGraph",
    "DEFAULT_BUDGET",
    "MatrixPool",
    "OrbitConsistencyError",
    "OrbitReport",
    "OrbitState",
    "TriangularInput",
    "enumerate_orbit",
    "permutation_table",
]
