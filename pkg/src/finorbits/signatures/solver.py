"""Linear systems over R/2Z with integer coefficients.

Each equation reads  sum_v c_v * v = f  (mod 2).  Elimination follows a
fixed six-step loop: pick the smallest coefficient, substitute on a unit
pivot, reduce other rows, redefine the pivot variable, and finally divide
with an m-branch.  Every variable that survives is a free parameter which
is an integer combination of the original variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..arith import PIPELINE_DENOMINATOR, AffineAngle


class SolverConsistencyError(ArithmeticError):
    """Step-5 divisibility guard failed (pipeline mode)."""


def _mod2(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True)
class Equation:
    coeffs: tuple[tuple[str, int], ...]
    free: Fraction

    @classmethod
    def of(cls, coeffs: Mapping[str, int], free) -> "Equation":
        return cls(tuple(sorted((k, int(v)) for k, v in coeffs.items() if v)), _mod2(Fraction(free)))

    @classmethod
    def from_affine(cls, a: AffineAngle) -> "Equation":
        """The equation a = 0 (mod 2)."""
        return cls.of(dict(a.coeffs), -a.free)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coeffs)


@dataclass(frozen=True)
class ModularLinearSystem:
    equations: tuple[Equation, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = set(self.variables)
        for e in self.equations:
            names.update(k for k, _ in e.coeffs)
        object.__setattr__(self, "variables", tuple(sorted(names)))

    @classmethod
    def of(cls, rows: Iterable[tuple[Mapping[str, int], object]], variables: Sequence[str] = ()):
        return cls(tuple(Equation.of(c, f) for c, f in rows), tuple(variables))


@dataclass(frozen=True)
class SolutionFamily:
    """x_v = subst[v](params) for every original variable v.

    ``param_def[p]`` writes the parameter p as an integer combination of the
    original variables, so membership of a point x is decidable exactly.
    """

    subst: tuple[tuple[str, AffineAngle], ...]
    params: tuple[str, ...]
    param_def: tuple[tuple[str, tuple[tuple[str, int], ...]], ...]

    def substitution(self) -> dict[str, AffineAngle]:
        return dict(self.subst)

    def contains(self, point: Mapping[str, Fraction]) -> bool:
        t = {p: _mod2(sum((c * Fraction(point[v]) for v, c in d), Fraction(0))) for p, d in self.param_def}
        for v, expr in self.subst:
            if _mod2(expr.evaluate(t) - Fraction(point[v])) != 0:
                return False
        return True

    def is_constant(self) -> bool:
        return not self.params

    def __str__(self) -> str:
        body = ", ".join(f"{v}={e}" for v, e in self.subst)
        return f"{{{body}}}" + (f" free {list(self.params)}" if self.params else "")


class _State:
    __slots__ = ("rows", "subst", "defs")

    def __init__(self, rows, subst, defs):
        self.rows: list[tuple[dict[str, int], Fraction]] = rows
        self.subst: dict[str, AffineAngle] = subst
        self.defs: dict[str, dict[str, int]] = defs

    def copy(self) -> "_State":
        return _State(
            [(dict(c), f) for c, f in self.rows],
            dict(self.subst),
            {k: dict(v) for k, v in self.defs.items()},
        )

    def replace(self, var: str, expr: AffineAngle) -> None:
        """Substitute var := expr everywhere (rows and solution map)."""
        new_rows = []
        for c, f in self.rows:
            k = c.pop(var, 0)
            if k:
                for name, e in expr.coeffs:
                    c[name] = c.get(name, 0) + k * e
                    if c[name] == 0:
                        del c[name]
                f = _mod2(f - k * expr.free)
            new_rows.append((c, f))
        self.rows = new_rows
        sub = {var: expr}
        self.subst = {v: e.substitute(sub) for v, e in self.subst.items()}


def solve_modular_system(
    system: ModularLinearSystem, strict: bool = False, max_branches: int = 1_000_000
) -> list[SolutionFamily]:
    """All solution families; ``strict`` enforces the pipeline divisibility guard."""
    variables = list(system.variables)
    rows = [(dict(e.coeffs), e.free) for e in system.equations]
    start = _State(
        rows,
        {v: AffineAngle.param(v) for v in variables},
        {v: {v: 1} for v in variables},
    )
    out: list[SolutionFamily] = []
    stack = [start]
    branches = 0
    while stack:
        st = stack.pop()
        res = _run(st, strict)
        if res is None:
            continue
        if isinstance(res, list):
            branches += len(res)
            if branches > max_branches:
                raise RuntimeError("solver branch budget exceeded")
            # reversed so that m = 0 is explored first
            stack.extend(reversed(res))
            continue
        out.append(res)
    return out


def _run(st: _State, strict: bool):
    """Advance one state until it finishes (family), dies (None) or branches (list)."""
    while True:
        # drop trivial rows; a contradiction kills the branch
        live = []
        for c, f in st.rows:
            if c:
                live.append((c, f))
            elif f != 0:
                return None
        st.rows = live
        if not live:
            return _finish(st)

        # Step 0
        k, ei, var = min(
            ((abs(v), i, name) for i, (c, _) in enumerate(live) for name, v in c.items()),
        )
        c_e, f_e = live[ei]
        k_ev = c_e[var]

        # Step 1
        if k == 1:
            expr = AffineAngle(
                tuple((name, -k_ev * v) for name, v in c_e.items() if name != var), k_ev * f_e
            )
            del st.rows[ei]
            st.replace(var, expr)
            st.defs.pop(var, None)
            continue

        # Step 3
        touched = False
        for j, (c, f) in enumerate(live):
            if j == ei:
                continue
            v = c.get(var, 0)
            if v and abs(v) >= k:
                q = v // k_ev
                nc = dict(c)
                for name, e in c_e.items():
                    nc[name] = nc.get(name, 0) - q * e
                    if nc[name] == 0:
                        del nc[name]
                st.rows[j] = (nc, _mod2(f - q * f_e))
                touched = True
        if touched:
            continue

        # Step 4: var := var' - q*u, keeping the name for var'
        big = [(name, v) for name, v in c_e.items() if name != var and abs(v) >= k]
        if big:
            sub_terms = [(var, 1)]
            for name, v in big:
                q = v // k_ev
                sub_terms.append((name, -q))
                d = st.defs[var]
                for o, w in st.defs[name].items():
                    d[o] = d.get(o, 0) + q * w
                    if d[o] == 0:
                        del d[o]
            st.replace(var, AffineAngle(tuple(sub_terms), Fraction(0)))
            continue

        # Step 5: kV = f with V isolated
        # steps 3 and 4 left var alone in E and absent elsewhere
        if strict:
            if 5040 % k:
                raise SolverConsistencyError(f"pivot coefficient {k} does not divide 5040")
            if (f_e * PIPELINE_DENOMINATOR / k).denominator != 1:
                raise SolverConsistencyError(
                    f"free term {f_e} is not a multiple of {k}/{PIPELINE_DENOMINATOR}"
                )
        del st.rows[ei]
        children = []
        for m in range(k):
            ch = st.copy()
            val = (f_e + 2 * m) / k_ev
            ch.replace(var, AffineAngle((), val))
            ch.defs.pop(var, None)
            children.append(ch)
        return children


def _finish(st: _State) -> SolutionFamily:
    params = tuple(sorted(st.defs))
    return SolutionFamily(
        tuple(sorted(st.subst.items())),
        params,
        tuple((p, tuple(sorted(st.defs[p].items()))) for p in params),
    )


# ---------------------------------------------------------------------------
# brute force (test oracle and small-scale fallback)


def brute_force_solutions(
    system: ModularLinearSystem, denominator: int
) -> set[tuple[Fraction, ...]]:
    """All grid points x in ((1/D)Z / 2Z)^vars satisfying the system."""
    import numpy as np

    names = list(system.variables)
    nv = len(names)
    D = denominator
    size = 2 * D
    if nv == 0:
        ok = all(_mod2(-e.free) == 0 for e in system.equations)
        return {()} if ok else set()
    grids = np.indices((size,) * nv).reshape(nv, -1).astype(np.int64)
    mask = np.ones(grids.shape[1], dtype=bool)
    for e in system.equations:
        # sum c*j/D - f = 0 mod 2  <=>  sum c*j*L - f*D*L = 0 mod 2DL
        L = e.free.denominator
        acc = np.zeros(grids.shape[1], dtype=np.int64)
        cd = e.as_dict()
        for i, v in enumerate(names):
            c = cd.get(v, 0)
            if c:
                acc += c * L * grids[i]
        target = e.free * D * L
        if target.denominator != 1:
            return set()
        acc -= int(target)
        mask &= (acc % (2 * D * L)) == 0
    pts = grids[:, mask].T
    return {tuple(Fraction(int(j), D) for j in row) for row in pts}


__all__ = [
    "Equation",
    "ModularLinearSystem",
    "SolutionFamily",
    "SolverConsistencyError",
    "brute_force_solutions",
    "solve_modular_system",
]
