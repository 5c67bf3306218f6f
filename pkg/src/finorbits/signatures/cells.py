"""Signature cells.

A cell is a set of positions of Z_n forming one or two cyclic runs.  Its
value is the angle of the trace of the product of the matrices taken in
cyclic order.  A single run and its complement give inverse products, so
they name the same cell; a singleton is a theta cell.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence


def cell_count(n: int) -> int:
    if n < 4:
        raise ValueError("cells are defined for n >= 4")
    return n * (n - 1) * (n * n - 5 * n + 12) // 12


def theta_count(n: int) -> int:
    return n


def sigma_count(n: int) -> int:
    return n * (n - 3) * (n * n - 3 * n + 8) // 12


def runs_of(members: Iterable[int], n: int) -> list[tuple[int, ...]]:
    """Maximal cyclic runs of a subset of Z_n, each listed in cyclic order."""
    s = set(members)
    if not s:
        return []
    if len(s) == n:
        return [tuple(range(n))]
    out = []
    for start in sorted(s):
        if (start - 1) % n in s:
            continue
        run = [start]
        while (run[-1] + 1) % n in s:
            run.append((run[-1] + 1) % n)
        out.append(tuple(run))
    return out


@dataclass(frozen=True, order=True)
class CellId:
    """Canonical cell: ``members`` are 0-based positions in naming order."""

    n: int
    members: tuple[int, ...]

    @property
    def is_theta(self) -> bool:
        return len(self.members) == 1

    @property
    def runs(self) -> list[tuple[int, ...]]:
        return runs_of(self.members, self.n)

    def notations(self) -> list[frozenset]:
        """All position sets naming this cell."""
        s = frozenset(self.members)
        if len(self.runs) == 1:
            return [s, frozenset(range(self.n)) - s]
        return [s]

    def name(self, ascii: bool = False) -> str:
        idx = [m + 1 for m in self.members]
        sep = "," if self.n > 9 else ""
        body = sep.join(str(i) for i in idx)
        if self.is_theta:
            return ("t" if ascii else "θ") + body
        return ("s" if ascii else "σ") + body

    def __str__(self) -> str:
        return self.name()


def _naming_order(members: frozenset, n: int) -> tuple[int, ...]:
    rs = runs_of(members, n)
    if len(rs) == 1:
        return rs[0]
    best = None
    for i, r in enumerate(rs):
        nxt = rs[(i + 1) % len(rs)]
        gap = (nxt[0] - r[-1] - 1) % n
        key = (len(r), gap, r[0])
        if best is None or key < best[0]:
            best = (key, i)
    i = best[1]
    rot = rs[i:] + rs[:i]
    return tuple(x for r in rot for x in r)


def _representative(members: frozenset, n: int) -> frozenset:
    rs = runs_of(members, n)
    if len(rs) != 1:
        return members
    comp = frozenset(range(n)) - members
    if len(members) != len(comp):
        return members if len(members) < len(comp) else comp

    def wraps(s: frozenset) -> bool:
        return 0 in s and (n - 1) in s

    if wraps(members) != wraps(comp):
        return comp if wraps(members) else members
    return members if min(members) < min(comp) else comp


@lru_cache(maxsize=None)
def _layout(n: int) -> tuple[tuple[CellId, ...], dict]:
    cells: list[CellId] = []
    seen: dict[frozenset, int] = {}

    def push(members: frozenset) -> None:
        rep = _representative(members, n)
        if rep in seen:
            seen[members] = seen[rep]
            return
        cid = CellId(n, _naming_order(rep, n))
        idx = len(cells)
        cells.append(cid)
        for s in cid.notations():
            seen[s] = idx

    for i in range(n):
        push(frozenset([i]))
    for length in range(2, n // 2 + 1):
        for start in range(n):
            push(frozenset((start + j) % n for j in range(length)))
    two_run = []
    for mask in range(1, 1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        if len(runs_of(s, n)) == 2:
            order = _naming_order(s, n)
            two_run.append((len(s), order[0], order, s))
    two_run.sort(key=lambda t: (t[0], (t[1] - 0) % n, t[2]))
    for _, _, _, s in two_run:
        push(s)
    if len(cells) != cell_count(n):
        raise AssertionError(f"cell layout for n={n} has {len(cells)} cells")
    return tuple(cells), seen


def all_cells(n: int) -> tuple[CellId, ...]:
    return _layout(n)[0]


def cell_index(n: int, members: Iterable[int]) -> Optional[int]:
    """Index of the cell named by a 0-based position set, None if not a cell."""
    return _layout(n)[1].get(frozenset(members))


def canonical_cell(indices: Sequence[int], n: int) -> CellId:
    """Canonical cell for 1-based indices written in cyclic order."""
    idx = [int(i) for i in indices]
    if not idx:
        raise ValueError("empty cell")
    if any(i < 1 or i > n for i in idx) or len(set(idx)) != len(idx):
        raise ValueError(f"invalid indices {idx} for n={n}")
    pos = [i - 1 for i in idx]
    k = pos.index(min(pos))
    rot = pos[k:] + pos[:k]
    if rot != sorted(rot):
        raise ValueError(f"indices {idx} are not in cyclic order")
    if len(pos) == n:
        raise ValueError("the full index set is not a cell")
    j = cell_index(n, pos)
    if j is None:
        raise ValueError(f"indices {idx} form more than two runs")
    return all_cells(n)[j]


_NAME = re.compile(r"^(θ|theta|t|σ|sigma|s)_?\{?([0-9,\s]+)\}?$", re.IGNORECASE)


def parse_cell(name: str, n: int) -> CellId:
    m = _NAME.match(name.strip())
    if not m:
        raise ValueError(f"cannot parse cell name {name!r}")
    body = m.group(2)
    if "," in body or " " in body.strip():
        idx = [int(x) for x in re.split(r"[,\s]+", body.strip()) if x]
    else:
        if n > 9:
            raise ValueError(f"cell name {name!r} is ambiguous for n={n}; use commas")
        idx = [int(ch) for ch in body]
    kind = m.group(1).lower()
    if kind in ("θ", "theta", "t") and len(idx) != 1:
        raise ValueError(f"theta cell with several indices: {name!r}")
    return canonical_cell(idx, n)


def product_order(cell: CellId) -> tuple[int, ...]:
    """Positions whose matrix product (in this order) has the cell's trace."""
    return cell.members


@lru_cache(maxsize=None)
def braid_cell_map(n: int, k: int, forward: bool) -> tuple[Optional[int], ...]:
    """For each cell of the braided tuple, the cell of the original tuple
    with the same value, or None when no notation allows it.

    forward: M'_p = M_p M_q M_p^-1, M'_q = M_p.
    backward: M'_p = M_q, M'_q = M_q^-1 M_p M_q.
    """
    p = (k - 1) % n
    q = k % n
    cells = all_cells(n)
    out: list[Optional[int]] = []
    for cid in cells:
        src = None
        for s in cid.notations():
            hp, hq = p in s, q in s
            if hp == hq:
                src = cell_index(n, s)
            elif forward and hq:
                src = cell_index(n, (s - {q}) | {p})
            elif not forward and hp:
                src = cell_index(n, (s - {p}) | {q})
            elif forward and s == {p}:
                src = cell_index(n, {q})
            elif not forward and s == {q}:
                src = cell_index(n, {p})
            if src is not None:
                break
        out.append(src)
    return tuple(out)


def theta_cells(n: int) -> tuple[int, ...]:
    return tuple(range(n))


__all__ = [
    "CellId",
    "all_cells",
    "braid_cell_map",
    "canonical_cell",
    "cell_count",
    "cell_index",
    "parse_cell",
    "product_order",
    "runs_of",
    "sigma_count",
    "theta_count",
]
