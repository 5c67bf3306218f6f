"""Stage 4: split the closed list into braid components and name their groups."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from ..arith import AffineAngle, Angle, as_affine
from ..orbits.bfs import TriangularInput, enumerate_orbit
from ..orbits.subgroup import classify_subgroup
from ..signatures.cells import all_cells, cell_index
from ..signatures.merge import can_merge, merge_signatures
from ..signatures.reconstruct import FieldOverflow, reconstruct_tuple
from ..signatures.signature import Signature, braid_signature, values_agree
from .stage1 import SAMPLE_VALUES, symmetry_closure
from .stage3 import PartnerIndex, braid_moves

KINDS = ("N", "cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral", "exceptional")
CULLED = ("inconsistent", "triangular", "infinite", "unresolved")


@dataclass
class Component:
    kind: str
    signatures: list[Signature]
    detail: str = ""
    length: Optional[int] = None

    @property
    def representative(self) -> Signature:
        return self.signatures[0]

    @property
    def culled(self) -> bool:
        return self.kind in CULLED

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "size": len(self.signatures),
            "parametric": self.representative.is_parametric(),
            "length": self.length,
            "detail": self.detail,
            "representative": self.representative.to_dict(),
        }


@dataclass
class TypeReport:
    components: list[Component] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {k: 0 for k in KINDS + CULLED}
        for c in self.components:
            out[c.kind] += 1
        return out

    def kept(self) -> list[Component]:
        return [c for c in self.components if not c.culled]

    def culled(self) -> list[Component]:
        return [c for c in self.components if c.culled]

    def component_of(self, sig: Signature) -> Optional[Component]:
        key = sig.key()
        for c in self.components:
            if any(s.key() == key for s in c.signatures):
                return c
        return None


def unit_position(sig: Signature) -> Optional[int]:
    """A position whose matrix the cells say is I or -I, else None.

    -I becomes I under a pair sign change, so both count as type N.  For -I
    every cell through the position is the negated cell without it.
    """
    n = sig.n
    cells = all_cells(n)
    for i in range(n):
        if sig.values[i] == Angle(0):
            shift = AffineAngle.const(0)
        elif sig.values[i] == Angle(1):
            shift = AffineAngle.const(1)
        else:
            continue
        ok = True
        for c, cid in enumerate(cells):
            if i not in cid.members or len(cid.members) < 2:
                continue
            j = cell_index(n, set(cid.members) - {i})
            if j is None:
                continue
            a, b = sig.values[c], sig.values[j]
            if a is None or b is None or not values_agree(a, as_affine(b) + shift):
                ok = False
                break
        if ok:
            return i
    return None


def braid_components(sigs: Sequence[Signature]) -> list[list[Signature]]:
    """Union signatures linked by a braid move followed by a conflict-free merge."""
    parent = list(range(len(sigs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    index = PartnerIndex(sigs)
    pos = {s.key(): i for i, s in enumerate(sigs)}
    for i, s in enumerate(sigs):
        for k, fwd in braid_moves(s.n):
            b = braid_signature(s, k, fwd)
            for t in index.partners(b):
                j = pos[t.key()]
                if find(i) == find(j):
                    continue
                if (b.is_parametric() or t.is_parametric()) and not can_merge(b, t):
                    continue
                parent[find(i)] = find(j)
    groups: dict[int, list[Signature]] = {}
    for i, s in enumerate(sigs):
        groups.setdefault(find(i), []).append(s)
    return [sorted(g, key=lambda s: str(s.key())) for g in groups.values()]


def _sample(sig: Signature, point: int = 0) -> Signature:
    if not sig.is_parametric():
        return sig
    return sig.evaluate({p: SAMPLE_VALUES.get(p, SAMPLE_VALUES["x"])[point] for p in sig.params()})


def _orbit_budget(comp: Sequence[Signature], cap: int) -> int:
    # distinct classes of a genuine orbit have distinct signatures, so a
    # component can only hold an orbit of a few times its own size
    return min(cap, 4 * len(comp) * math.factorial(comp[0].n))


def _classify(comp: Sequence[Signature], orbit_budget: int) -> tuple[str, str, Optional[int]]:
    sig = comp[0]
    unit = unit_position(sig)
    if unit is not None:
        return "N", f"unit matrix up to sign at position {unit + 1}", None
    try:
        rec = reconstruct_tuple(_sample(sig))
    except FieldOverflow as exc:
        return "unresolved", str(exc), None
    if rec.verdict in ("inconsistent", "triangular"):
        return rec.verdict, rec.reason, None
    tuples = [rec.tuple] if rec.verdict == "unique" else list(rec.candidates)
    kinds = {classify_subgroup(t) for t in tuples}
    if len(kinds) != 1:
        return "unresolved", f"completions disagree: {sorted(kinds)}", None
    kind = kinds.pop()
    if sig.is_parametric():
        return ("infinite" if kind == "infinite/other" else kind), "", None
    budget = _orbit_budget(comp, orbit_budget)
    try:
        reports = [enumerate_orbit(t, budget) for t in tuples]
    except TriangularInput:
        return "triangular", "orbit member is triangular", None
    if not all(r.finite for r in reports):
        if kind == "infinite/other":
            return "infinite", f"orbit exceeds {budget} states", None
        return kind, f"orbit exceeds {budget} states", None
    lengths = {r.length for r in reports}
    length = lengths.pop() if len(lengths) == 1 else None
    return ("exceptional" if kind == "infinite/other" else kind), "", length


def known_images(known: Sequence[tuple[str, Signature]]) -> list[tuple[str, Signature, list]]:
    """Known signatures closed under the symmetries, with their constant cells."""
    out = []
    for label, ref in known:
        for img in symmetry_closure([ref]):
            fixed = [(i, v) for i, v in enumerate(img.values) if isinstance(v, Angle)]
            out.append((label, img, fixed))
    return out


def match_known(comp: Sequence[Signature], images: Sequence[tuple[str, Signature, list]]) -> Optional[str]:
    """Label of a known image that some member of the component merges with.

    Symmetries map braid orbits to braid orbits, so scanning the whole
    component against the symmetry images of the known rows is enough.
    """
    for s in comp:
        for label, img, fixed in images:
            if img.n != s.n or any(s.values[i] is None or not values_agree(s.values[i], v) for i, v in fixed):
                continue
            if merge_signatures(img, s):
                return label
    return None


def recognize_types(
    sigs: Sequence[Signature],
    *,
    orbit_budget: int = 2_000_000,
    known: Sequence[tuple[str, Signature]] = (),
    progress: Optional[Callable[[int, int], None]] = None,
) -> TypeReport:
    """Partition into braid components and classify one representative each.

    Exceptional components are compared against ``known`` and the matching
    label goes into the detail, so new exceptional orbits stand out.
    """
    report = TypeReport()
    comps = braid_components(list(sigs))
    images: Optional[list] = None
    for i, comp in enumerate(comps):
        kind, detail, length = _classify(comp, orbit_budget)
        if kind == "exceptional" and known:
            if images is None:
                images = known_images(known)
            label = match_known(comp, images)
            detail = f"matches {label}" if label else "new"
        report.components.append(Component(kind, comp, detail, length))
        if progress is not None:
            progress(i + 1, len(comps))
    report.components.sort(key=lambda c: ((KINDS + CULLED).index(c.kind), -len(c.signatures)))
    return report


__all__ = [
    "CULLED",
    "KINDS",
    "Component",
    "TypeReport",
    "braid_components",
    "known_images",
    "match_known",
    "recognize_types",
    "unit_position",
]
