"""Merging particular signatures, with sign branching for parametric cells,
and the minimal-Jacobian normal form of parametric signatures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..arith import AffineAngle, Angle, as_affine
from .intlinalg import column_hnf, saturate_columns, solve_lower
from .signature import Signature, merge_constant, values_agree
from .solver import Equation, ModularLinearSystem, solve_modular_system

Subst = dict[str, AffineAngle]


def _mod2(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True)
class MergeResult:
    signature: Signature  # normalized
    substitution: tuple[tuple[str, AffineAngle], ...]  # applied to the inputs
    raw: Signature  # merged, before normalization

    def subst(self) -> Subst:
        return dict(self.substitution)

    def constrains(self, names: Iterable[str]) -> bool:
        """True if the substitution fixes or relates any of ``names``."""
        s = self.subst()
        for n in names:
            e = s.get(n)
            if e is not None and e != AffineAngle.param(n):
                return True
        return False


def fresh_names(used: set[str], names: Iterable[str]) -> dict[str, str]:
    out = {}
    for n in names:
        if n not in used:
            continue
        base = n.rstrip("'")
        k = 1
        cand = f"{base}_{k}"
        while cand in used or cand in out.values():
            k += 1
            cand = f"{base}_{k}"
        out[n] = cand
    return out


def _compose(outer: Subst, inner: Subst) -> Subst:
    """outer then inner: variables of outer's images are replaced via inner."""
    out = {k: v.substitute(inner) for k, v in outer.items()}
    for k, v in inner.items():
        out.setdefault(k, v)
    return out


def _subst_key(s: Subst) -> tuple:
    return tuple(sorted((k, v.coeffs, v.free) for k, v in s.items()))


def merge_signatures(
    p: Signature,
    q: Signature,
    *,
    shared_params: bool = False,
    strict: bool = False,
    normalize: bool = True,
    prefix: str = "p",
) -> list[MergeResult]:
    """All ways to merge two particular signatures.

    Parameter-free inputs give at most one result.  Unless ``shared_params``,
    parameters of ``q`` that collide with those of ``p`` are renamed first.
    """
    if p.n != q.n:
        raise ValueError("signatures of different size")
    if not p.is_parametric() and not q.is_parametric():
        m = merge_constant(p, q)
        return [] if m is None else [MergeResult(m, (), m)]
    if not shared_params:
        ren = fresh_names(set(p.params()), q.params())
        if ren:
            q = q.rename(ren)

    common = [
        i for i, (a, b) in enumerate(zip(p.values, q.values)) if a is not None and b is not None
    ]
    # constant cells first: cheap rejection before any branching
    common.sort(key=lambda i: (isinstance(p.values[i], AffineAngle) or isinstance(q.values[i], AffineAngle), i))
    branches: list[Subst] = [{}]
    for i in common:
        nxt: dict[tuple, Subst] = {}
        for sub in branches:
            a = _apply(p.values[i], sub)
            b = _apply(q.values[i], sub)
            if isinstance(a, Angle) and isinstance(b, Angle):
                if a == b:
                    nxt.setdefault(_subst_key(sub), sub)
                continue
            aa, bb = as_affine(a), as_affine(b)
            for expr in (aa - bb, aa + bb):
                if expr.is_constant():
                    if expr.free == 0:
                        nxt.setdefault(_subst_key(sub), sub)
                    continue
                system = ModularLinearSystem((Equation.from_affine(expr),))
                for fam in solve_modular_system(system, strict=strict):
                    new = _compose(sub, fam.substitution())
                    nxt.setdefault(_subst_key(new), new)
        branches = list(nxt.values())
        if not branches:
            return []

    results: dict[tuple, MergeResult] = {}
    for sub in branches:
        a = p.substitute(sub)
        b = q.substitute(sub)
        vals = []
        for x, y in zip(a.values, b.values):
            vals.append(x if x is not None else y)
        raw = Signature(p.n, tuple(vals))
        for x, y in zip(a.values, b.values):
            if x is not None and y is not None and not values_agree(x, y):
                raise AssertionError("merge produced disagreeing cells")
        sig = normal_form(raw, prefix=prefix) if normalize else raw
        results.setdefault(sig.key(), MergeResult(sig, tuple(sorted(sub.items())), raw))
    return list(results.values())


def _apply(v, sub: Subst):
    if isinstance(v, AffineAngle):
        r = v.substitute(sub)
        return r.to_angle() if r.is_constant() else r
    return v


def can_merge(p: Signature, q: Signature) -> bool:
    return bool(merge_signatures(p, q, normalize=False))


# ---------------------------------------------------------------------------
# minimal-Jacobian normal form


def normal_form(s: Signature, prefix: str = "p") -> Signature:
    """Canonical parametrization of the set of concrete signatures described by s.

    The parameter lattice is replaced by its saturation in Hermite form (so no
    integer reparametrization with |Jacobian| > 1 exists), cells are sign
    normalized, and the free terms are reduced to a canonical representative.
    """
    if not s.is_parametric():
        return Signature(s.n, s.values, s.pattern)
    names = list(s.params())
    idx = s.defined()
    rows = []
    frees = []
    for i in idx:
        v = as_affine(s.values[i])
        rows.append([v.coeff(nm) for nm in names])
        frees.append(v.free)
    m = len(rows)
    sat = saturate_columns(rows, m)
    rank = len(sat[0]) if sat and sat[0] else 0
    if rank == 0:
        return _emit(s, idx, [[] for _ in range(m)], frees, prefix)

    h0, _, piv = column_hnf(sat)
    best = None
    for signs in itertools.product((1, -1), repeat=rank):
        flip = [1] * m
        for sgn, r in zip(signs, piv):
            flip[r] = sgn
        basis = [[flip[i] * x for x in sat[i]] for i in range(m)]
        h, _, pv = column_hnf(basis)
        h = [row[:rank] for row in h]
        f = [flip[i] * frees[i] for i in range(m)]
        # non-pivot rows: leading coefficient positive
        for i in range(m):
            lead = next((x for x in h[i] if x), 0)
            if lead < 0:
                h[i] = [-x for x in h[i]]
                f[i] = -f[i]
        cand = _canonical_free(h, pv, f)
        key = tuple((tuple(h[i]), cand[i]) for i in range(m))
        if best is None or key < best[0]:
            best = (key, h, cand)
    _, h, f = best
    return _emit(s, idx, h, f, prefix)


def _canonical_free(h: list[list[int]], piv: list[int], f: list[Fraction]) -> list[Fraction]:
    m = len(h)
    r = len(piv)
    p = solve_lower(h, piv, f)
    base = [f[i] - sum(h[i][j] * p[j] for j in range(r)) for i in range(m)]
    # residual shifts: H g with H_piv g in 2Z^r, g taken mod 2
    gens = []
    for j in range(r):
        e = [Fraction(0)] * m
        for t, i in enumerate(piv):
            e[i] = Fraction(2 if t == j else 0)
        gens.append(tuple(_mod2(x) for x in solve_lower(h, piv, e)))
    group = {tuple(Fraction(0) for _ in range(r))}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for d in gens:
                c = tuple(_mod2(a + b) for a, b in zip(g, d))
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    best = None
    for g in group:
        cand = []
        for i in range(m):
            v = _mod2(base[i] - sum(h[i][j] * g[j] for j in range(r)))
            if not any(h[i]) and v > 1:
                v = 2 - v
            cand.append(v)
        if best is None or cand < best:
            best = cand
    return best


def _emit(s: Signature, idx, h, f, prefix: str) -> Signature:
    vals = [None] * len(s.values)
    r = len(h[0]) if h and h[0] else 0
    pnames = [f"{prefix}{j + 1}" for j in range(r)]
    for row, i in enumerate(idx):
        coeffs = tuple((pnames[j], h[row][j]) for j in range(r) if h[row][j])
        vals[i] = AffineAngle(coeffs, f[row])
    return Signature(s.n, tuple(vals), s.pattern)


__all__ = ["MergeResult", "can_merge", "fresh_names", "merge_signatures", "normal_form"]
