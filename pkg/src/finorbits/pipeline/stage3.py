"""Stage 3: keep only signatures whose braid images are in the list.

Each round reads a frozen snapshot and applies removals and constrained copies
afterwards, so the fixpoint does not depend on visiting order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from ..arith import AffineAngle
from ..signatures.merge import MergeResult, merge_signatures, normal_form
from ..signatures.signature import Signature, braid_signature
from .stage2 import PatternIndex


def braid_moves(n: int) -> list[tuple[int, bool]]:
    return [(k, fwd) for k in range(1, n + 1) for fwd in (True, False)]


def _rank(rows: list[list[Fraction]]) -> int:
    m = [r[:] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        p = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if p is None:
            col += 1
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def imposes_conditions(res: MergeResult, names: Sequence[str]) -> bool:
    """True unless the merge leaves ``names`` free to take every value.

    The substitution writes each name as an affine form in the remaining
    free parameters; the names stay free exactly when these forms have full
    rank.
    """
    if not names:
        return False
    sub = res.subst()
    images = [sub.get(n, AffineAngle.param(n)) for n in names]
    free = sorted({p for e in images for p in e.params})
    if len(free) < len(names):
        return True
    rows = [[Fraction(e.coeff(p)) for p in free] for e in images]
    return _rank(rows) < len(names)


@dataclass
class ClosureReport:
    signatures: list[Signature]
    rounds: int = 0
    removed: int = 0
    copies: int = 0
    history: list[tuple[int, int, int]] = field(default_factory=list)  # (size, removed, added)


class PartnerIndex:
    """Frozen list of one round with lazily built pattern indices.

    A braid image defines the same cells for every complete signature, so a
    handful of indices serve the whole round.
    """

    def __init__(self, sigs: Sequence[Signature]):
        self.sigs = list(sigs)
        self._indices: dict[tuple, PatternIndex] = {}

    def partners(self, b: Signature):
        cells = tuple(b.defined())
        ix = self._indices.get(cells)
        if ix is None:
            ix = self._indices[cells] = PatternIndex([(t, "") for t in self.sigs], cells)
        for t, _ in ix.partners(b):
            yield t


def _verdict(s: Signature, snap: PartnerIndex, strict: bool):
    """None to keep s, else the list of constrained copies that replace it."""
    names = s.params()
    copies: dict[tuple, Signature] = {}
    for k, fwd in braid_moves(s.n):
        b = braid_signature(s, k, fwd)
        found_free = False
        constrained: list[MergeResult] = []
        for t in snap.partners(b):
            if not b.is_parametric() and not t.is_parametric():
                found_free = True  # exact pattern match
                break
            for res in merge_signatures(b, t, strict=strict, normalize=False):
                if not imposes_conditions(res, names):
                    found_free = True
                    break
                constrained.append(res)
            if found_free:
                break
        if found_free:
            continue
        if not names or not constrained:
            return []
        for res in constrained:
            sub = {n: e for n, e in res.subst().items() if n in names}
            c = normal_form(s.substitute(sub))
            copies.setdefault(c.key(), c)
        return list(copies.values())
    return None


def closure_filter(
    sigs: Iterable[Signature],
    *,
    strict: bool = False,
    max_rounds: int = 1000,
    progress: Optional[Callable[[int, int], None]] = None,
    start_round: int = 0,
) -> ClosureReport:
    """Fixpoint of the exclusion procedure; the result is braid-closed."""
    current: dict[tuple, Signature] = {}
    for s in sigs:
        s = normal_form(s)
        current.setdefault(s.key(), s)
    rep = ClosureReport([], rounds=start_round)
    while rep.rounds < max_rounds:
        snapshot = list(current.values())
        snap = PartnerIndex(snapshot)
        removed, added = [], {}
        for s in snapshot:
            v = _verdict(s, snap, strict)
            if v is None:
                continue
            removed.append(s.key())
            for c in v:
                if c.key() not in current:
                    added[c.key()] = c
        rep.rounds += 1
        if not removed:
            break
        for key in removed:
            current.pop(key, None)
        current.update(added)
        rep.removed += len(removed)
        rep.copies += len(added)
        rep.history.append((len(snapshot), len(removed), len(added)))
        if progress is not None:
            progress(rep.rounds, len(current))
    else:
        raise RuntimeError(f"closure did not settle in {max_rounds} rounds")
    rep.signatures = sorted(current.values(), key=lambda s: str(s.key()))
    return rep


__all__ = ["ClosureReport", "PartnerIndex", "braid_moves", "closure_filter", "imposes_conditions"]
