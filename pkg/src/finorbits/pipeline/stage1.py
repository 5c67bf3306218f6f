"""Stage 1: the seed list of 4-signatures.

Every seed row is expanded to the signatures of all members of its braid
orbit and then closed under the three symmetries.  Parametric rows have no
symbolic tuple, so their orbits are walked on exact tuples at several
generic sample points and each member's cells are fitted back to integer
affine forms, which are then checked at every sample.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from fractions import Fraction as F
from typing import Iterable, Sequence

import numpy as np

from ..arith import AffineAngle, Angle, CellValue, normalize_angle
from ..monodromy import MonodromyTuple, braid_tuple
from ..orbits.bfs import ClassGraph
from ..signatures.cells import all_cells, cell_index
from ..signatures.merge import normal_form
from ..signatures.reconstruct import reconstruct_tuple
from ..signatures.signature import Signature, signature_of_tuple

# one prime denominator per point keeps the cyclotomic orders small
SAMPLE_VALUES = {
    "x": (F(14, 17), F(6, 19), F(13, 23), F(26, 29), F(3, 31)),
    "y": (F(6, 17), F(8, 19), F(5, 23), F(23, 29), F(7, 31)),
    "z": (F(10, 17), F(16, 19), F(2, 23), F(19, 29), F(12, 31)),
    "w": (F(12, 17), F(12, 19), F(1, 23), F(21, 29), F(20, 31)),
}
FIT_BOUND = 4


class ExpansionError(RuntimeError):
    """A parametric orbit could not be expanded consistently."""


# ---------------------------------------------------------------------------
# symmetries acting on signatures


def _permute(s: Signature, image) -> Signature:
    """New value at cell C is the old value at cell image(C)."""
    n = s.n
    vals = []
    for cid in all_cells(n):
        j = cell_index(n, image(cid.members))
        vals.append(s.values[j])
    return Signature(n, tuple(vals))


def shift_signature(s: Signature) -> Signature:
    """Signature of (M_2, ..., M_n, M_1)."""
    return _permute(s, lambda ms: [(m + 1) % s.n for m in ms])


def reverse_signature(s: Signature) -> Signature:
    """Signature of (M_n^-1, ..., M_1^-1)."""
    return _permute(s, lambda ms: [s.n - 1 - m for m in ms])


def _flip(v: CellValue) -> CellValue:
    if isinstance(v, Angle):
        return normalize_angle(1 - v.value)
    return -v + AffineAngle.const(1)


def negate_signature(s: Signature, p: int, q: int) -> Signature:
    """Signature after M_p, M_q -> -M_p, -M_q (0-based positions)."""
    vals = []
    for cid, v in zip(all_cells(s.n), s.values):
        hit = (p in cid.members) + (q in cid.members)
        vals.append(_flip(v) if v is not None and hit == 1 else v)
    return Signature(s.n, tuple(vals))


def symmetry_closure(sigs: Iterable[Signature], prefix: str = "p") -> list[Signature]:
    """Closure under shift, reversal and sign pairs, deduplicated in normal form."""
    out: dict[tuple, Signature] = {}
    queue: deque[Signature] = deque()
    for s in sigs:
        s = normal_form(s, prefix)
        if s.key() not in out:
            out[s.key()] = s
            queue.append(s)
    while queue:
        s = queue.popleft()
        n = s.n
        moves = [shift_signature(s), reverse_signature(s)]
        moves += [negate_signature(s, i, (i + 1) % n) for i in range(n)]
        for m in moves:
            m = normal_form(m, prefix)
            if m.key() not in out:
                out[m.key()] = m
                queue.append(m)
    return list(out.values())


# ---------------------------------------------------------------------------
# orbit expansion


def _tuple_for(sig: Signature) -> list[MonodromyTuple]:
    rec = reconstruct_tuple(sig)
    if rec.verdict in ("unique", "triangular"):
        return [rec.tuple]
    if rec.verdict == "ambiguous":
        return list(rec.candidates)
    return []


def orbit_signatures(sig: Signature) -> list[Signature]:
    """Signatures of every member of the braid orbit of a 4- or 5-signature."""
    if sig.is_parametric():
        return _parametric_orbit(sig)
    out = []
    for t in _tuple_for(sig):
        g = ClassGraph(t)
        out.extend(g.signature(s) for s in range(len(g)))
    return out


def _sample_points(params: Sequence[str], count: int) -> list[dict[str, Fraction]]:
    return [{p: SAMPLE_VALUES[p][i] for p in params} for i in range(count)]


def _parametric_orbit(sig: Signature, count: int = 4) -> list[Signature]:
    params = sig.params()
    if any(p not in SAMPLE_VALUES for p in params):
        raise ExpansionError(f"no sample values for parameters {params}")
    points = _sample_points(params, count)
    start = []
    for pt in points:
        ts = _tuple_for(sig.evaluate(pt))
        if len(ts) != 1:
            raise ExpansionError(f"parametric row is not unique at {pt}")
        start.append(ts[0])

    # a non-triangular tuple is fixed up to conjugacy by its signature, so the
    # walk only needs one representative per joint signature key
    def node(ts):
        sigs = [signature_of_tuple(t) for t in ts]
        return tuple(x.key() for x in sigs), sigs

    key, sigs = node(start)
    seen = {key: sigs}
    queue = deque([start])
    while queue:
        ts = queue.popleft()
        for k in range(1, sig.n + 1):
            for fwd in (True, False):
                nxt = [braid_tuple(t, k, fwd) for t in ts]
                key, sigs = node(nxt)
                if key not in seen:
                    seen[key] = sigs
                    queue.append(nxt)
    out = []
    for per_point in seen.values():
        vals = []
        for c in range(len(sig.values)):
            obs = [pp.values[c].value for pp in per_point]
            vals.append(fit_affine(params, points, obs))
        out.append(Signature(sig.n, tuple(vals)))
    return out


def _coefficient_grid(k: int, bound: int) -> np.ndarray:
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=k)), dtype=np.int64)
    if k == 0:
        return grid.reshape(1, 0)
    first = np.array([next((c for c in row if c), 0) for row in grid])
    return grid[first >= 0]


def fit_affine(
    params: Sequence[str], points: Sequence[dict], observed: Sequence[Fraction], bound: int = FIT_BOUND
) -> CellValue:
    """The affine form with coefficients in [-bound, bound] matching every point.

    Values are angles, so a form and its negative are the same; the first
    nonzero coefficient is taken positive.  The fit must be unique.
    """
    fracs = [pt[p] for pt in points for p in params] + list(observed)
    den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    period = 2 * den
    P = np.array([[int(pt[p] * den) for pt in points] for p in params], dtype=np.int64)
    obs = np.array([int(q * den) for q in observed], dtype=np.int64)
    grid = _coefficient_grid(len(params), bound)
    lin = grid @ P.reshape(len(params), len(points)) if params else np.zeros((1, len(points)), np.int64)
    hits = []
    for sign in (1, -1):
        free = (sign * obs[0] - lin[:, 0]) % period
        u = (lin + free[:, None]) % period
        u = np.minimum(u, period - u)
        for i in np.nonzero((u == obs[None, :]).all(axis=1))[0]:
            coeffs = tuple(int(c) for c in grid[i])
            h = AffineAngle(tuple(zip(params, coeffs)), Fraction(int(free[i]), den))
            hits.append(h.to_angle() if h.is_constant() else h)
    hits = list(dict.fromkeys(hits))
    if len(hits) != 1:
        raise ExpansionError(f"{len(hits)} affine fits for observed values {observed}")
    return hits[0]


@dataclass(frozen=True)
class Seed:
    """A 4-signature of the seed list with where it came from."""

    signature: Signature
    origin: str  # e.g. "1:15"


def expand_seeds(rows: Iterable[tuple[str, Signature]], prefix: str = "p") -> list[Seed]:
    """Stage 1 on (origin, 4-signature) pairs: orbit members, then symmetries."""
    out: dict[tuple, Seed] = {}
    for origin, sig in rows:
        for s in symmetry_closure(orbit_signatures(sig), prefix):
            out.setdefault(s.key(), Seed(s, origin))
    return list(out.values())


def instantiate_seeds(seeds: Iterable[Seed], denominator: int) -> list[Seed]:
    """Parameter-free copies of the seeds with every parameter in (1/D)Z mod 2."""
    grid = [Fraction(k, denominator) for k in range(2 * denominator)]
    out: dict[tuple, Seed] = {}
    for seed in seeds:
        names = seed.signature.params()
        for vals in itertools.product(grid, repeat=len(names)):
            c = seed.signature.evaluate(dict(zip(names, vals)))
            out.setdefault(c.key(), Seed(c, seed.origin))
    return list(out.values())


__all__ = [
    "ExpansionError",
    "Seed",
    "expand_seeds",
    "fit_affine",
    "instantiate_seeds",
    "negate_signature",
    "orbit_signatures",
    "reverse_signature",
    "shift_signature",
    "symmetry_closure",
]
