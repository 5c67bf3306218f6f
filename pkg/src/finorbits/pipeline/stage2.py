"""Stage 2: candidate 5-signatures from induced particular signatures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from ..arith import Angle
from ..signatures.merge import merge_signatures
from ..signatures.signature import Signature, induct_signature
from .stage1 import Seed

POSITIONS = (1, 2, 3, 4, 5)


class CandidateOverflow(RuntimeError):
    """The partial candidate list outgrew the configured cap."""


@dataclass
class Candidate:
    signature: Signature
    provenance: tuple[tuple[str, int], ...]  # (seed origin, position) per merge


@dataclass
class CandidateList:
    items: list[Candidate] = field(default_factory=list)

    def signatures(self) -> list[Signature]:
        return [c.signature for c in self.items]

    def __len__(self) -> int:
        return len(self.items)


def _const_pattern(sig: Signature, cells: Sequence[int]) -> tuple:
    return tuple(v if isinstance(v, Angle) else None for v in (sig.values[i] for i in cells))


def _patterns_meet(a: tuple, b: tuple) -> bool:
    return all(x is None or y is None or x == y for x, y in zip(a, b))


class PatternIndex:
    """Induced signatures grouped by their constant values on a cell set.

    Fully constant keys are looked up directly; only keys with parametric
    cells are scanned.
    """

    def __init__(self, items: Sequence[tuple[Signature, str]], cells: Sequence[int]):
        self.cells = list(cells)
        self.groups: dict[tuple, list[tuple[Signature, str]]] = {}
        for sig, origin in items:
            self.groups.setdefault(_const_pattern(sig, self.cells), []).append((sig, origin))
        self.wild = [k for k in self.groups if None in k]

    def partners(self, sig: Signature):
        pat = _const_pattern(sig, self.cells)
        if None in pat:
            for key, members in self.groups.items():
                if _patterns_meet(pat, key):
                    yield from members
            return
        yield from self.groups.get(pat, ())
        for key in self.wild:
            if _patterns_meet(pat, key):
                yield from self.groups[key]


def build_candidates(
    seeds: Iterable[Seed],
    *,
    positions: Sequence[int] = POSITIONS,
    strict: bool = False,
    max_partials: int = 200_000,
    progress: Optional[Callable[[int, int], None]] = None,
    on_level: Optional[Callable[[int, list[Candidate]], None]] = None,
    start: Optional[list[Candidate]] = None,
    start_level: int = 0,
) -> CandidateList:
    """All complete 5-signatures obtained by merging one induced seed per position.

    ``on_level(level, partials)`` sees every finished level; ``start`` and
    ``start_level`` resume from such a level (``start_level`` is the next one).
    """
    seeds = list(seeds)
    if not seeds:
        return CandidateList()
    induced = {
        pos: [(induct_signature(s.signature, pos), s.origin) for s in seeds] for pos in positions
    }
    cells_at = {pos: set(induced[pos][0][0].defined()) for pos in positions}

    def lookahead(level: int, defined: set) -> list[PatternIndex]:
        # partners still needed by the positions after ``level``
        return [
            PatternIndex(induced[r], sorted(cells_at[r] & defined)) for r in positions[level + 1 :]
        ]

    def viable(sig: Signature, ahead: list[PatternIndex]) -> bool:
        return all(next(iter(ix.partners(sig)), None) is not None for ix in ahead)

    if start is None:
        start_level = 1
        defined = set(cells_at[positions[0]])
        ahead = lookahead(0, defined)
        partials = [
            Candidate(sig, ((origin, positions[0]),))
            for sig, origin in induced[positions[0]]
            if viable(sig, ahead)
        ]
    else:
        partials = start
        defined = set().union(*(cells_at[p] for p in positions[:start_level]))
    for level in range(start_level, len(positions)):
        pos = positions[level]
        index = PatternIndex(induced[pos], sorted(cells_at[pos] & defined))
        defined |= cells_at[pos]
        ahead = lookahead(level, defined)
        nxt: dict[tuple, Candidate] = {}
        for cand in partials:
            for sig, origin in index.partners(cand.signature):
                for res in merge_signatures(cand.signature, sig, strict=strict):
                    key = res.signature.key()
                    if key in nxt or not viable(res.signature, ahead):
                        continue
                    nxt[key] = Candidate(res.signature, cand.provenance + ((origin, pos),))
                    if len(nxt) > max_partials:
                        raise CandidateOverflow(f"more than {max_partials} partial signatures at position {pos}")
        partials = list(nxt.values())
        if progress is not None:
            progress(level, len(partials))
        if on_level is not None:
            on_level(level + 1, partials)
    return CandidateList([c for c in partials if c.signature.is_complete()])


__all__ = ["Candidate", "CandidateList", "CandidateOverflow", "POSITIONS", "PatternIndex", "build_candidates"]
