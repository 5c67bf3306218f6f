"""Recognition of the group generated by a tuple, modulo the centre {+-1}."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..monodromy import Mat2, MonodromyTuple
from .bfs_pool import MatrixPool

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
TETRAHEDRAL = "tetrahedral"
OCTAHEDRAL = "octahedral"
ICOSAHEDRAL = "icosahedral"
OTHER = "infinite/other"

POLYHEDRAL = {12: TETRAHEDRAL, 24: OCTAHEDRAL, 60: ICOSAHEDRAL}


@dataclass(frozen=True)
class GroupInfo:
    kind: str
    order: int | None  # projective order, None when the cap was hit
    max_element_order: int | None = None


def _projective_closure(t: MonodromyTuple, cap: int):
    pool = MatrixPool(t.order)
    ident = pool.intern(Mat2.identity())
    neg = pool.intern(-Mat2.identity())

    def canon(i: int) -> int:
        j = pool.mul(i, neg)
        return min(i, j)

    gens = sorted({canon(pool.intern(m)) for m in t.mats} - {canon(ident)})
    seen = {canon(ident)}
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for g in gens:
            c = canon(pool.mul(a, g))
            if c not in seen:
                seen.add(c)
                if len(seen) > cap:
                    return pool, None, canon
                queue.append(c)
    return pool, seen, canon


def _element_order(pool: MatrixPool, canon, i: int, cap: int) -> int:
    one = canon(pool.intern(Mat2.identity()))
    acc, k = i, 1
    while canon(acc) != one:
        acc = pool.mul(acc, i)
        k += 1
        if k > cap:
            raise RuntimeError("element order exceeds group size")
    return k


def group_info(t: MonodromyTuple, cap: int = 2000) -> GroupInfo:
    pool, elems, canon = _projective_closure(t, cap)
    if elems is None:
        return GroupInfo(OTHER, None)
    m = len(elems)
    orders = [_element_order(pool, canon, e, m) for e in elems]
    top = max(orders)
    if top == m:
        return GroupInfo(CYCLIC, m, top)
    if m % 2 == 0 and top == m // 2 or m == 4:
        return GroupInfo(DIHEDRAL, m, top)
    if m in POLYHEDRAL:
        return GroupInfo(POLYHEDRAL[m], m, top)
    return GroupInfo(OTHER, m, top)


def classify_subgroup(t: MonodromyTuple, cap: int = 2000) -> str:
    """cyclic, dihedral, tetrahedral, octahedral, icosahedral or infinite/other.

    The projective group is closed exactly; beyond ``cap`` elements the
    answer is infinite/other.  Cyclic means the projective image is cyclic,
    i.e. the matrices commute.
    """
    return group_info(t, cap).kind


__all__ = [
    "CYCLIC",
    "DIHEDRAL",
    "GroupInfo",
    "ICOSAHEDRAL",
    "OCTAHEDRAL",
    "OTHER",
    "TETRAHEDRAL",
    "classify_subgroup",
    "group_info",
]
