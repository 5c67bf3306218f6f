"""Row verification against the catalog, and orbits straight from signatures."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from ..monodromy import MonodromyTuple, is_triangular
from ..signatures.reconstruct import Reconstruction, reconstruct_tuple
from ..signatures.signature import Signature, signature_of_tuple, values_agree
from .bfs import DEFAULT_BUDGET, OrbitReport, enumerate_orbit
from .catalog import CatalogRow
from .dihedral import dihedral_length
from .subgroup import ICOSAHEDRAL, OCTAHEDRAL, TETRAHEDRAL, classify_subgroup

PASS, FAIL, BUDGET = "pass", "fail", "budget"

# rational bounds around pi^2
_PI2_LO = Fraction("9.8696044")
_PI2_HI = Fraction("9.8696045")

GROUP_OF_TYPE = {"D": TETRAHEDRAL, "E": OCTAHEDRAL, "F": ICOSAHEDRAL}


class SignatureVerdictError(ValueError):
    """A signature that does not reconstruct to exactly one tuple."""

    def __init__(self, verdict: Reconstruction):
        super().__init__(f"{verdict.verdict}: {verdict.reason}".rstrip(": "))
        self.reconstruction = verdict


@dataclass
class RowResult:
    table: int
    row: str
    status: str
    expected: Optional[object]
    observed: Optional[object]
    source: str  # "constructor" or "signature"
    verdict: str = ""
    detail: str = ""
    seconds: float = 0.0
    reports: list[OrbitReport] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "status": self.status,
            "expected": self.expected,
            "observed": self.observed,
            "source": self.source,
            "verdict": self.verdict,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "orbits": [r.as_dict() for r in self.reports],
        }


def orbit_of_signature(sig: Signature, budget: int = DEFAULT_BUDGET, **kw) -> OrbitReport:
    """enumerate_orbit on the tuple a signature reconstructs to."""
    rec = reconstruct_tuple(sig)
    if not rec.is_unique:
        raise SignatureVerdictError(rec)
    return enumerate_orbit(rec.tuple, budget, **kw)


def _agrees(sig: Signature, t: MonodromyTuple) -> bool:
    full = signature_of_tuple(t)
    return all(v is None or values_agree(v, full.values[i]) for i, v in enumerate(sig.values))


def _tuples_for(row: CatalogRow, prefer_constructor: bool):
    """(source, verdict, tuples, detail) for the row at its sample point."""
    sig = row.signature()
    if prefer_constructor and row.constructor is not None:
        t = row.tuple()
        if not _agrees(sig, t):
            return "constructor", "mismatch", [], "constructor does not reproduce the row signature"
        if is_triangular(t):
            return "constructor", "triangular", [], ""
        return "constructor", "unique", [t], ""
    rec = reconstruct_tuple(sig)
    if rec.verdict == "unique":
        return "signature", "unique", [rec.tuple], ""
    if rec.verdict == "ambiguous":
        return "signature", "ambiguous", list(rec.candidates), rec.reason
    return "signature", rec.verdict, [], rec.reason


def _expected(row: CatalogRow):
    if row.kind == "dihedral":
        s = row.sample_fractions()
        return dihedral_length(s["x"], s["y"], s["z"])
    if row.kind == "bounded":
        d = lcm(*(v.denominator for v in row.sample_fractions().values()))
        return {"denominator": d}
    return row.length


def _within_bounds(length: int, d: int) -> bool:
    # 4 d^2 / pi^2 < length < d^2 / 2 + 1
    return length * _PI2_LO > 4 * d * d and 2 * length < d * d + 2


def verify_catalog_row(
    row: CatalogRow,
    budget: int = DEFAULT_BUDGET,
    *,
    prefer_constructor: Optional[bool] = None,
    check_group: bool = False,
) -> RowResult:
    """Rebuild the row's tuple, enumerate its orbit and compare with the table.

    Table 10 rows are built from their explicit matrices by default; all
    other rows are reconstructed from the signature.  Ambiguous rows pass
    only when every completion has the tabulated length.
    """
    start = time.perf_counter()
    if prefer_constructor is None:
        prefer_constructor = row.table == 10
    source, verdict, tuples, detail = _tuples_for(row, prefer_constructor)
    res = RowResult(row.table, row.row, FAIL, None, None, source, verdict, detail)

    if row.kind in ("triangular", "inconsistent"):
        res.expected = row.kind
        res.observed = verdict
        res.status = PASS if verdict == row.kind else FAIL
    elif not tuples:
        res.expected = _expected(row)
        res.observed = verdict
    else:
        res.expected = _expected(row)
        lengths = []
        for t in tuples:
            rep = enumerate_orbit(t, budget)
            res.reports.append(rep)
            if not rep.finite:
                res.status, res.observed = BUDGET, None
                res.detail = f"budget {budget} exceeded"
                break
            lengths.append(rep.length)
        else:
            res.observed = lengths[0] if len(set(lengths)) == 1 else lengths
            if row.kind == "bounded":
                d = res.expected["denominator"]
                good = all(_within_bounds(x, d) for x in lengths)
            else:
                good = all(x == res.expected for x in lengths)
            res.status = PASS if good else FAIL
        if res.status == PASS and check_group and row.type in GROUP_OF_TYPE:
            kinds = {classify_subgroup(t) for t in tuples}
            if kinds != {GROUP_OF_TYPE[row.type]}:
                res.status = FAIL
                res.detail = f"group {sorted(kinds)} but type {row.type}"
    res.seconds = time.perf_counter() - start
    return res


__all__ = [
    "BUDGET",
    "FAIL",
    "PASS",
    "RowResult",
    "SignatureVerdictError",
    "orbit_of_signature",
    "verify_catalog_row",
]
