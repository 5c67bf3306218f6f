"""Signatures: cell -> angle maps, possibly partial or parametric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Mapping, Optional, Sequence, Union

from ..arith import (
    AffineAngle,
    Angle,
    CellValue,
    NotRepresentable,
    as_affine,
    format_rational,
    normalize_angle,
    parse_cell_value,
    trace_to_angle,
)
from .cells import CellId, all_cells, braid_cell_map, cell_index, parse_cell

if TYPE_CHECKING:
    from ..monodromy import MonodromyTuple


def _fold(v: CellValue) -> CellValue:
    if isinstance(v, AffineAngle) and v.is_constant():
        return v.to_angle()
    return v


@dataclass(frozen=True)
class Signature:
    """Values indexed by the standard cell order of :func:`all_cells`.

    ``None`` marks an undefined cell.  ``pattern`` = (a, b), 1-based, marks
    an incomplete signature: undefined cells are exactly those all of whose
    notations contain a and not b.
    """

    n: int
    values: tuple[Optional[CellValue], ...]
    pattern: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        vals = tuple(None if v is None else _fold(v) for v in self.values)
        if len(vals) != len(all_cells(self.n)):
            raise ValueError(f"expected {len(all_cells(self.n))} cells, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    # ---- construction ---------------------------------------------------
    @classmethod
    def empty(cls, n: int) -> "Signature":
        return cls(n, (None,) * len(all_cells(n)))

    @classmethod
    def from_mapping(
        cls, n: int, mapping: Mapping[Union[str, CellId], object], pattern=None
    ) -> "Signature":
        vals: list[Optional[CellValue]] = [None] * len(all_cells(n))
        for key, raw in mapping.items():
            cid = key if isinstance(key, CellId) else parse_cell(key, n)
            i = cell_index(n, cid.members)
            if raw is None:
                continue
            v = _coerce_value(raw)
            if vals[i] is not None and not values_agree(vals[i], v):
                raise ValueError(f"conflicting values for {cid}: {vals[i]} vs {v}")
            vals[i] = v
        return cls(n, tuple(vals), pattern)

    @classmethod
    def from_row(cls, n: int, cells: Sequence[str], values: Sequence[object]) -> "Signature":
        return cls.from_mapping(n, dict(zip(cells, values)))

    # ---- access ---------------------------------------------------------
    @property
    def cells(self) -> tuple[CellId, ...]:
        return all_cells(self.n)

    def index(self, key: Union[str, CellId, int]) -> int:
        if isinstance(key, int):
            return key
        cid = key if isinstance(key, CellId) else parse_cell(key, self.n)
        return cell_index(self.n, cid.members)

    def __getitem__(self, key) -> Optional[CellValue]:
        return self.values[self.index(key)]

    def items(self) -> Iterator[tuple[CellId, Optional[CellValue]]]:
        return zip(self.cells, self.values)

    def defined(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v is not None]

    def is_complete(self) -> bool:
        return all(v is not None for v in self.values)

    @property
    def kind(self) -> str:
        if self.is_complete():
            return "complete"
        return "incomplete" if self.pattern else "particular"

    def is_parametric(self) -> bool:
        return any(isinstance(v, AffineAngle) for v in self.values)

    def params(self) -> tuple[str, ...]:
        out: set[str] = set()
        for v in self.values:
            if isinstance(v, AffineAngle):
                out.update(v.params)
        return tuple(sorted(out))

    def thetas(self) -> tuple[Optional[CellValue], ...]:
        return self.values[: self.n]

    def defined_count(self) -> int:
        return sum(v is not None for v in self.values)

    # ---- transforms -----------------------------------------------------
    def substitute(self, subst: Mapping[str, AffineAngle]) -> "Signature":
        vals = tuple(
            v.substitute(subst) if isinstance(v, AffineAngle) else v for v in self.values
        )
        return Signature(self.n, vals, self.pattern)

    def evaluate(self, values: Mapping[str, Fraction]) -> "Signature":
        vals = tuple(
            normalize_angle(v.evaluate(values)) if isinstance(v, AffineAngle) else v
            for v in self.values
        )
        return Signature(self.n, vals, self.pattern)

    def rename(self, mapping: Mapping[str, str]) -> "Signature":
        vals = tuple(v.rename(mapping) if isinstance(v, AffineAngle) else v for v in self.values)
        return Signature(self.n, vals, self.pattern)

    def restrict(self, keep: Sequence[int]) -> "Signature":
        ks = set(keep)
        return Signature(self.n, tuple(v if i in ks else None for i, v in enumerate(self.values)))

    def key(self) -> tuple:
        """Hashable exact key (used for deduplication)."""
        return (self.n, tuple(_value_key(v) for v in self.values))

    # ---- serialization --------------------------------------------------
    def to_dict(self) -> dict[str, Optional[str]]:
        return {c.name(ascii=True): format_value(v) for c, v in self.items()}

    def table_row(self, names: Sequence[str]) -> list[Optional[str]]:
        return [format_value(self[name]) for name in names]

    def __str__(self) -> str:
        parts = [f"{c}={format_value(v) if v is not None else '?'}" for c, v in self.items()]
        return "{" + ", ".join(parts) + "}"


ParticularSignature = Signature
IncompleteSignature = Signature


def _coerce_value(raw) -> CellValue:
    if isinstance(raw, (Angle, AffineAngle)):
        return _fold(raw)
    if isinstance(raw, str):
        return parse_cell_value(raw)
    return normalize_angle(Fraction(raw))


def _value_key(v):
    if v is None:
        return None
    if isinstance(v, Angle):
        return (0, v.value)
    return (1, v.coeffs, v.free)


def format_value(v: Optional[CellValue]) -> Optional[str]:
    if v is None:
        return None
    if isinstance(v, Angle):
        return format_rational(v.value)
    return str(v)


def values_agree(a: CellValue, b: CellValue) -> bool:
    """Exact agreement up to sign mod 2 (parametric values must match identically)."""
    if isinstance(a, Angle) and isinstance(b, Angle):
        return a == b
    aa, bb = as_affine(a), as_affine(b)
    return aa == bb or aa == -bb


# ---------------------------------------------------------------------------
# from matrices


def cell_trace(t: "MonodromyTuple", cell: CellId):
    prod = None
    for p in cell.members:
        prod = t.mats[p] if prod is None else prod * t.mats[p]
    return prod.trace()


def signature_of_tuple(t: "MonodromyTuple") -> Signature:
    vals = []
    for cid in all_cells(t.n):
        tr = cell_trace(t, cid)
        try:
            vals.append(trace_to_angle(tr))
        except NotRepresentable as exc:
            raise NotRepresentable(f"cell {cid}: {exc}") from None
    return Signature(t.n, tuple(vals))


def trace_vector(t: "MonodromyTuple") -> tuple:
    """Exact traces of every cell (the signature before angle conversion)."""
    return tuple(cell_trace(t, cid) for cid in all_cells(t.n))


# ---------------------------------------------------------------------------
# braid action


def braid_signature(s: Signature, k: int, forward: bool = True) -> Signature:
    """Signature-level braid move; the result is incomplete in general."""
    n = s.n
    src = braid_cell_map(n, k, forward)
    vals = tuple(None if j is None else s.values[j] for j in src)
    if forward:
        pattern = ((k - 1) % n + 1, k % n + 1)
    else:
        pattern = (k % n + 1, (k - 1) % n + 1)
    return Signature(n, vals, pattern)


def incomplete_pattern_cells(n: int, a: int, b: int) -> list[int]:
    """Cells undefined under pattern (a, b)."""
    pa, pb = a - 1, b - 1
    out = []
    for i, cid in enumerate(all_cells(n)):
        if all(pa in s and pb not in s for s in cid.notations()):
            out.append(i)
    return out


# ---------------------------------------------------------------------------
# induction: n-signature of a reduced tuple -> particular (n+1)-signature


def _reduction_positions(n_big: int, position: int) -> list[tuple[int, ...]]:
    """Positions of the big tuple merged into each position of its reduction."""
    j = (position - 1) % n_big
    if j == n_big - 1:
        # (M_2, ..., M_{n-1}, M_n M_1): the wrapped product goes last
        return [(i,) for i in range(1, n_big - 1)] + [(n_big - 1, 0)]
    out: list[tuple[int, ...]] = [(i,) for i in range(j)]
    out.append((j, j + 1))
    out += [(i,) for i in range(j + 2, n_big)]
    return out


def induct_signature(s: Signature, position: int) -> Signature:
    """Particular (n+1)-signature of a tuple whose reduction at ``position``
    (positions position, position+1 multiplied) has signature ``s``."""
    n_big = s.n + 1
    groups = _reduction_positions(n_big, position)
    vals: list[Optional[CellValue]] = [None] * len(all_cells(n_big))
    for cid, v in s.items():
        if v is None:
            continue
        big = frozenset(p for m in cid.members for p in groups[m])
        i = cell_index(n_big, big)
        if i is None:
            raise AssertionError(f"induced set {sorted(big)} is not a cell")
        vals[i] = v
    return Signature(n_big, tuple(vals))


def reduce_signature(s: Signature, position: int) -> Signature:
    """Cells of the reduced tuple that are visible in a (partial) big signature."""
    n_big = s.n
    groups = _reduction_positions(n_big, position)
    small = all_cells(n_big - 1)
    vals = []
    for cid in small:
        big = frozenset(p for m in cid.members for p in groups[m])
        i = cell_index(n_big, big)
        vals.append(None if i is None else s.values[i])
    return Signature(n_big - 1, tuple(vals))


# ---------------------------------------------------------------------------
# parameter-free merge


def merge_constant(p: Signature, q: Signature) -> Optional[Signature]:
    if p.n != q.n:
        raise ValueError("signatures of different size")
    out = []
    for a, b in zip(p.values, q.values):
        if a is None:
            out.append(b)
        elif b is None:
            out.append(a)
        elif values_agree(a, b):
            out.append(a)
        else:
            return None
    return Signature(p.n, tuple(out))


def conflicts(p: Signature, q: Signature) -> list[CellId]:
    bad = []
    for cid, a, b in zip(p.cells, p.values, q.values):
        if a is not None and b is not None and not values_agree(a, b):
            bad.append(cid)
    return bad


__all__ = [
    "IncompleteSignature",
    "ParticularSignature",
    "Signature",
    "braid_signature",
    "cell_trace",
    "conflicts",
    "format_value",
    "incomplete_pattern_cells",
    "induct_signature",
    "merge_constant",
    "reduce_signature",
    "signature_of_tuple",
    "trace_vector",
    "values_agree",
]
