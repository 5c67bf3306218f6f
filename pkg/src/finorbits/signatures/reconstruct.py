"""Reconstruction of a monodromy tuple from its (possibly partial) signature.

The unknowns are products over cyclic runs of positions.  Two disjoint runs
X, Y whose traces violate the common-eigenvector identity are put in a
normal form; every other run product W is then pinned down by the linear
equations Tr(W B) = t for known products B whose traces are signature cells
(I, X, Y and XY or YX span M_2 when X, Y are irreducible).  Known runs are
closed under concatenation, quotients and complements, which recovers the
individual matrices.  The result is checked against every defined cell.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from ..arith import CycloNumber, angle_conductor, cyclo_embed, normalize_angle, two_cos
from ..arith.cyclotomic import common_order
from ..monodromy import Mat2, MonodromyTuple, verify_tuple
from .cells import all_cells, cell_index
from .signature import Signature, cell_trace, trace_vector

DEFAULT_MAX_ORDER = 5040

Run = tuple[int, int]  # (start, length), 0-based start


class FieldOverflow(ArithmeticError):
    """Required cyclotomic order exceeds the configured bound."""


class Underdetermined(ValueError):
    """The defined cells do not pin down a tuple."""


@dataclass(frozen=True)
class Reconstruction:
    verdict: str  # "unique" | "triangular" | "inconsistent" | "ambiguous"
    tuple: Optional[MonodromyTuple] = None
    reason: str = ""
    witness: Optional[tuple[int, ...]] = None  # sign pattern for triangular
    candidates: tuple[MonodromyTuple, ...] = ()  # all completions when ambiguous

    @property
    def is_unique(self) -> bool:
        return self.verdict == "unique"


def _run_set(run: Run, n: int) -> frozenset:
    s, ln = run
    return frozenset((s + j) % n for j in range(ln))


class _Engine:
    def __init__(self, sig: Signature, order: int) -> None:
        self.sig = sig
        self.n = sig.n
        self.order = order
        self.traces: dict[int, CycloNumber] = {}
        for i, v in enumerate(sig.values):
            if v is not None:
                self.traces[i] = two_cos(v.value).lift(order)
        self.known: dict[Run, Mat2] = {}

    # ---- trace lookup --------------------------------------------------
    def cell_trace(self, members: frozenset) -> Optional[CycloNumber]:
        i = cell_index(self.n, members)
        if i is None:
            return None
        return self.traces.get(i)

    def run_trace(self, run: Run) -> Optional[CycloNumber]:
        return self.cell_trace(_run_set(run, self.n))

    # ---- pivot -----------------------------------------------------------
    def pivots(self):
        n = self.n
        runs = [(s, ln) for ln in range(1, n - 1) for s in range(n)]
        runs.sort(key=lambda r: (r[1], r[0]))
        seen = set()
        for a in runs:
            sa = _run_set(a, n)
            for b in runs:
                sb = _run_set(b, n)
                if sa & sb:
                    continue
                key = frozenset([sa, sb])
                if key in seen:
                    continue
                seen.add(key)
                ta, tb = self.run_trace(a), self.run_trace(b)
                tab = self.cell_trace(sa | sb)
                if ta is None or tb is None or tab is None:
                    continue
                if ta * ta + tb * tb + tab * tab - ta * tb * tab != 4:
                    yield a, b, ta, tb, tab

    def realize(self, a: Run, b: Run, ta, tb, tab) -> None:
        xa = self.sig.values[cell_index(self.n, _run_set(a, self.n))].value
        if ta == 2 or ta == -2:
            eps = 1 if ta == 2 else -1
            beta = tab * eps - tb
            x = Mat2(CycloNumber.rational(eps), CycloNumber.rational(0), CycloNumber.rational(eps), CycloNumber.rational(eps))
            y = Mat2(CycloNumber.rational(0), beta, -beta.inverse(), tb)
        else:
            lam = cyclo_embed(xa)
            order = common_order(self.order, lam.order)
            self._relift(order)
            ta, tb, tab = ta.lift(order), tb.lift(order), tab.lift(order)
            lam = lam.lift(order)
            li = lam.inverse()
            y11 = (tab - tb * li) / (lam - li)
            y22 = tb - y11
            x = Mat2.diag(lam, li)
            y = Mat2(y11, y11 * y22 - 1, CycloNumber.rational(1), y22)
        self.known = {a: x.lift(self.order), b: y.lift(self.order)}

    def _relift(self, order: int) -> None:
        if order == self.order:
            return
        self.order = order
        self.traces = {i: t.lift(order) for i, t in self.traces.items()}
        self.known = {r: m.lift(order) for r, m in self.known.items()}

    # ---- propagation ---------------------------------------------------
    def close(self) -> None:
        n = self.n
        changed = True
        while changed:
            changed = False
            items = list(self.known.items())
            for (s, ln), m in items:
                comp = ((s + ln) % n, n - ln)
                if comp not in self.known:
                    self.known[comp] = m.inv()
                    changed = True
            items = list(self.known.items())
            for (s1, l1), m1 in items:
                for (s2, l2), m2 in items:
                    if s2 == (s1 + l1) % n and l1 + l2 <= n - 1:
                        r = (s1, l1 + l2)
                        if r not in self.known:
                            self.known[r] = m1 * m2
                            changed = True
                    if s1 == s2 and l1 < l2:
                        r = ((s1 + l1) % n, l2 - l1)
                        if r not in self.known:
                            self.known[r] = m1.inv() * m2
                            changed = True
                    if (s1 + l1) % n == (s2 + l2) % n and l1 < l2:
                        r = (s2, l2 - l1)
                        if r not in self.known:
                            self.known[r] = m2 * m1.inv()
                            changed = True

    def singles_known(self) -> bool:
        return all((i, 1) in self.known for i in range(self.n))

    def try_solve(self, w: Run) -> Optional[Mat2]:
        return _solve_trace_system(self.trace_rows(w))

    def trace_rows(self, w: Run) -> list[tuple[Mat2, CycloNumber]]:
        n = self.n
        sw = _run_set(w, n)
        rows: list[tuple[Mat2, CycloNumber]] = []
        t = self.run_trace(w)
        if t is not None:
            rows.append((Mat2.identity(), t))
        disjoint = [(r, m) for r, m in self.known.items() if not (_run_set(r, n) & sw)]
        for r, m in disjoint:
            t = self.cell_trace(sw | _run_set(r, n))
            if t is not None:
                rows.append((m, t))
        for i, (r1, m1) in enumerate(disjoint):
            s1 = _run_set(r1, n)
            for r2, m2 in disjoint[i + 1 :]:
                s2 = _run_set(r2, n)
                if s1 & s2:
                    continue
                t = self.cell_trace(sw | s1 | s2)
                if t is None:
                    continue
                # cyclic order of the three blocks starting from w
                d1 = (r1[0] - w[0]) % n
                d2 = (r2[0] - w[0]) % n
                b = m1 * m2 if d1 < d2 else m2 * m1
                rows.append((b, t))
        return rows

    def missing_rows(self, w: Run):
        """(cell index, B) for undefined cells W*B with B a known disjoint run."""
        n = self.n
        sw = _run_set(w, n)
        for r, m in self.known.items():
            sr = _run_set(r, n)
            if sr & sw:
                continue
            i = cell_index(n, sw | sr)
            if i is not None and i not in self.traces:
                yield i, m

    def copy(self) -> "_Engine":
        e = _Engine.__new__(_Engine)
        e.sig, e.n, e.order = self.sig, self.n, self.order
        e.traces = dict(self.traces)
        e.known = dict(self.known)
        return e

    def branch(self) -> Optional[list["_Engine"]]:
        """Pin an extra cell of a run fixed up to one degree of freedom.

        With three independent trace rows W = W0 + s*D, and det W = 1 leaves
        at most two values for any further trace Tr(W B).  Candidates are
        found numerically, then confirmed exactly by the full-rank solve.
        """
        n = self.n
        for w in [(s, ln) for ln in range(1, n) for s in range(n)]:
            if w in self.known:
                continue
            aff = _affine_solution(self.trace_rows(w))
            if aff is None:
                continue
            w0, d = aff
            for i, b in self.missing_rows(w):
                tb = (d * b).trace()
                if tb.is_zero():
                    continue
                out = []
                for q in _trace_candidates(w0, d, b):
                    t = two_cos(q)
                    order = common_order(self.order, t.order)
                    e = self.copy()
                    e._relift(order)
                    e.traces[i] = t.lift(order)
                    m = e.try_solve(w)
                    if m is None or m.det() != 1:
                        continue
                    e.known[w] = m
                    e.close()
                    out.append(e)
                return out
        return None
    def run(self) -> bool:
        """Linear propagation only; True once every single matrix is known."""
        n = self.n
        self.close()
        targets = [(s, ln) for ln in range(1, n) for s in range(n)]
        progress = True
        while not self.singles_known() and progress:
            progress = False
            for w in targets:
                if w in self.known:
                    continue
                m = self.try_solve(w)
                if m is not None:
                    self.known[w] = m
                    self.close()
                    progress = True
                    break
        return self.singles_known()

    def run_all(self, depth: int = 0) -> list["_Engine"]:
        """Every completion, branching on det = 1 where linear rows run out."""
        if self.run():
            return [self]
        if depth >= 2 * self.n:
            return []
        kids = self.branch()
        if kids is None:
            raise Underdetermined("no run with three independent trace rows")
        out = []
        for k in kids:
            out.extend(k.run_all(depth + 1))
        return out

    def result(self) -> MonodromyTuple:
        return MonodromyTuple(tuple(self.known[(i, 1)] for i in range(self.n)))


def _solve_trace_system(rows: list[tuple[Mat2, CycloNumber]]) -> Optional[Mat2]:
    """W with Tr(W B) = t for every row, if the rows have rank 4.

    Tr(W B) = w11 b11 + w12 b21 + w21 b12 + w22 b22.
    """
    if len(rows) < 4:
        return None
    aug = [[b.a, b.c, b.b, b.d, t] for b, t in rows]
    piv_rows = []
    r = 0
    for col in range(4):
        p = next((i for i in range(r, len(aug)) if not aug[i][col].is_zero()), None)
        if p is None:
            return None
        aug[r], aug[p] = aug[p], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    w = [aug[i][4] for i in range(4)]
    return Mat2(w[0], w[1], w[2], w[3])


def _affine_solution(rows):
    """(W0, D) with Tr((W0 + s D) B) = t on all rows, when the rows have rank 3."""
    if len(rows) < 3:
        return None
    aug = [[b.a, b.c, b.b, b.d, t] for b, t in rows]
    pivcols = []
    r = 0
    for col in range(4):
        p = next((i for i in range(r, len(aug)) if not aug[i][col].is_zero()), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivcols.append(col)
        r += 1
    if r != 3 or any(not aug[i][4].is_zero() for i in range(r, len(aug))):
        return None
    free = next(c for c in range(4) if c not in pivcols)
    zero = aug[0][4] - aug[0][4]
    one = zero + 1
    w0 = [zero] * 4
    d = [zero] * 4
    d[free] = one
    for i, c in enumerate(pivcols):
        w0[c] = aug[i][4]
        d[c] = -aug[i][free]
    return Mat2(w0[0], w0[1], w0[2], w0[3]), Mat2(d[0], d[1], d[2], d[3])


def _trace_candidates(w0: Mat2, d: Mat2, b: Mat2, max_den: int = 5040) -> list[Fraction]:
    """Angles q with 2cos(pi q) close to Tr(W B) at a root of det(W0 + s D) = 1."""
    c0 = w0.det() - 1
    c2 = d.det()
    c1 = (w0 + d).det() - w0.det() - c2
    a, bb, c = c2.to_complex(), c1.to_complex(), c0.to_complex()
    if abs(a) < 1e-12:
        roots = [-c / bb] if abs(bb) > 1e-12 else []
    else:
        raw = bb * bb - 4 * a * c
        # double roots are common; exact confirmation follows anyway
        if abs(raw) < 1e-9 * max(1.0, abs(bb) ** 2, abs(a * c)):
            raw = 0j
        disc = cmath.sqrt(raw)
        roots = [(-bb + disc) / (2 * a), (-bb - disc) / (2 * a)]
    t0, t1 = (w0 * b).trace().to_complex(), (d * b).trace().to_complex()
    out: list[Fraction] = []
    for s in roots:
        t = t0 + s * t1
        if abs(t.imag) > 1e-6 or abs(t.real) > 2 + 1e-6:
            continue
        x = max(-1.0, min(1.0, t.real / 2))
        q = Fraction(math.acos(x) / math.pi).limit_denominator(max_den)
        if q not in out:
            out.append(q)
    return out


def signature_order(sig: Signature) -> int:
    order = 1
    for v in sig.values:
        if v is not None:
            order = common_order(order, angle_conductor(v.value))
    return order


def triangular_witness(sig: Signature) -> Optional[tuple[int, ...]]:
    """Signs e with every defined cell equal to sum over its members of e_i*theta_i."""
    n = sig.n
    thetas = sig.values[:n]
    if any(t is None for t in thetas):
        return None
    th = [t.value for t in thetas]
    cells = all_cells(n)
    for tail in iproduct((1, -1), repeat=n - 1):
        eps = (1,) + tail
        total = sum(e * t for e, t in zip(eps, th))
        if total % 2 != 0:
            continue
        ok = True
        for cid, v in zip(cells, sig.values):
            if v is None:
                continue
            if normalize_angle(sum(eps[m] * th[m] for m in cid.members)) != v:
                ok = False
                break
        if ok:
            return eps
    return None


def triangular_tuple(sig: Signature, eps: Sequence[int]) -> MonodromyTuple:
    """A lower-triangular witness realizing the signs ``eps``."""
    n = sig.n
    mats = []
    for i in range(n):
        lam = cyclo_embed(eps[i] * sig.values[i].value)
        mats.append(Mat2.diag(lam))
    return MonodromyTuple(tuple(mats))


def reconstruct_tuple(
    sig: Signature, max_order: int = DEFAULT_MAX_ORDER, check: bool = True
) -> Reconstruction:
    """Unique tuple (up to conjugation), or a Triangular / Inconsistent verdict."""
    if sig.is_parametric():
        raise ValueError("reconstruction needs a parameter-free signature")
    order = signature_order(sig)
    if order > max_order:
        raise FieldOverflow(f"cyclotomic order {order} exceeds bound {max_order}")

    found_pivot = False
    last_reason = ""
    for a, b, ta, tb, tab in _Engine(sig, order).pivots():
        found_pivot = True
        eng = _Engine(sig, order)
        eng.realize(a, b, ta.lift(order), tb.lift(order), tab.lift(order))
        if eng.order > max_order:
            raise FieldOverflow(f"cyclotomic order {eng.order} exceeds bound {max_order}")
        try:
            done = eng.run_all()
        except ZeroDivisionError:
            return Reconstruction("inconsistent", reason="singular normal form")
        except Underdetermined as exc:
            last_reason = f"pivot {a},{b}: {exc}"
            continue
        if any(e.order > max_order for e in done):
            raise FieldOverflow(f"cyclotomic order exceeds bound {max_order}")
        good: dict[tuple, MonodromyTuple] = {}
        bad = "no completion"
        for e in done:
            t = e.result()
            why = _check_against(t, sig) if check else None
            if why:
                bad = why
                continue
            good.setdefault(trace_vector(t), t)
        if not good:
            return Reconstruction("inconsistent", reason=bad)
        if len(good) > 1:
            cands = tuple(good.values())
            return Reconstruction(
                "ambiguous",
                cands[0],
                reason=f"{len(cands)} non-conjugate tuples share the defined cells",
                candidates=cands,
            )
        return Reconstruction("unique", next(iter(good.values())))
    if found_pivot:
        raise Underdetermined(last_reason)
    eps = triangular_witness(sig)
    if eps is not None:
        return Reconstruction("triangular", triangular_tuple(sig, eps), witness=eps)
    return Reconstruction("inconsistent", reason="no irreducible pair and no triangular witness")


def _check_against(t: MonodromyTuple, sig: Signature) -> Optional[str]:
    v = verify_tuple(t)
    if v is not None:
        return str(v)
    for cid, val in zip(all_cells(sig.n), sig.values):
        if val is None:
            continue
        tr = cell_trace(t, cid)
        if tr != two_cos(val.value):
            return f"cell {cid} does not match {val}"
    return None


__all__ = [
    "FieldOverflow",
    "Reconstruction",
    "Underdetermined",
    "reconstruct_tuple",
    "signature_order",
    "triangular_witness",
]
