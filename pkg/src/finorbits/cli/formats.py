"""Exact JSON encodings and the 5-signature table layout.

Rationals are "p/q" strings.  A cyclotomic number is ``[order, [c0, c1, ...]]``
with coefficients of the power basis of Q(zeta_order), again as strings.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Any, Iterable, Optional

from ..arith import CycloNumber, format_rational
from ..monodromy import Mat2, MonodromyTuple
from ..orbits.constructors import CONSTRUCTORS, build
from ..signatures.signature import Signature, format_value

TABLE_COLUMNS = ("length", "θ1", "θ2", "θ3", "θ4", "θ5", "σ12", "σ23", "σ34", "σ45", "σ51", "σ13", "σ24")


class FormatError(ValueError):
    """Input does not follow the documented format."""


def rational_to_json(q) -> str:
    return format_rational(Fraction(q))


def rational_from_json(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}") from exc


def cyclo_to_json(x: CycloNumber) -> list:
    return [x.order, [rational_to_json(Fraction(c, x.den)) for c in x.num]]


def cyclo_from_json(d) -> CycloNumber:
    if not (isinstance(d, (list, tuple)) and len(d) == 2 and isinstance(d[1], (list, tuple))):
        raise FormatError(f"cyclotomic number must be [order, coefficients], got {d!r}")
    order = int(d[0])
    coeffs = [rational_from_json(c) for c in d[1]]
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    try:
        return CycloNumber(order, [int(c * den) for c in coeffs], den)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def matrix_to_json(m: Mat2) -> list:
    return [[cyclo_to_json(m.a), cyclo_to_json(m.b)], [cyclo_to_json(m.c), cyclo_to_json(m.d)]]


def matrix_from_json(d) -> Mat2:
    try:
        (a, b), (c, e) = d
    except (TypeError, ValueError) as exc:
        raise FormatError("a matrix is [[a, b], [c, d]]") from exc
    return Mat2(cyclo_from_json(a), cyclo_from_json(b), cyclo_from_json(c), cyclo_from_json(e))


def tuple_to_json(t: MonodromyTuple) -> dict:
    return {
        "kind": "tuple",
        "n": t.n,
        "labels": list(t.labels),
        "matrices": [matrix_to_json(m) for m in t.mats],
    }


def signature_to_json(s: Signature) -> dict:
    return {"kind": "signature", "n": s.n, "cells": {k: v for k, v in s.to_dict().items() if v is not None}}


def load_object(doc: Any):
    """A MonodromyTuple or Signature from one of the documented JSON shapes.

    ``{"kind": "tuple", "matrices": [...], "labels": [...]}``,
    ``{"kind": "constructor", "name": "3letterbig", "params": {"x": "1/2"}}`` or
    ``{"kind": "signature", "n": 5, "cells": {"t1": "1/3", ...}}``.
    """
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("expected an object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "tuple":
            mats = [matrix_from_json(m) for m in doc["matrices"]]
            return MonodromyTuple(tuple(mats), tuple(doc.get("labels", ())))
        if kind == "constructor":
            name = doc["name"]
            if name not in CONSTRUCTORS:
                raise FormatError(f"unknown constructor {name!r}; known: {sorted(CONSTRUCTORS)}")
            return build(name, doc.get("params"))
        if kind == "signature":
            return Signature.from_mapping(int(doc["n"]), doc["cells"])
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        raise FormatError(f"malformed {kind} document: {exc}") from exc
    raise FormatError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# table layout


def _ascii(col: str) -> str:
    return col.replace("θ", "t").replace("σ", "s")


def table_rows(entries: Iterable[tuple[Optional[int], Signature]]) -> list[list[str]]:
    """Rows in column order; undefined cells and unknown lengths are empty."""
    out = []
    for length, sig in entries:
        cells = [_cell_text(sig, _ascii(c)) for c in TABLE_COLUMNS[1:]]
        out.append(["" if length is None else str(length)] + cells)
    return out


def _cell_text(sig: Signature, name: str) -> str:
    # columns naming a position beyond n (smaller tuples) stay empty
    try:
        v = sig[name]
    except ValueError:
        return ""
    return "" if v is None else format_value(v)


def export_table(entries: Iterable[tuple[Optional[int], Signature]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    w.writerows(table_rows(entries))
    return buf.getvalue()


def import_table(text: str, n: int = 5) -> list[tuple[Optional[int], Signature]]:
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    if not rows or tuple(rows[0]) != TABLE_COLUMNS:
        raise FormatError(f"table header must be {TABLE_COLUMNS}")
    out = []
    for r in rows[1:]:
        if len(r) != len(TABLE_COLUMNS):
            raise FormatError(f"row has {len(r)} fields, expected {len(TABLE_COLUMNS)}")
        length = int(r[0]) if r[0] else None
        cells = {_ascii(c): v for c, v in zip(TABLE_COLUMNS[1:], r[1:]) if v}
        out.append((length, Signature.from_mapping(n, cells)))
    return out


__all__ = [
    "FormatError",
    "TABLE_COLUMNS",
    "cyclo_from_json",
    "cyclo_to_json",
    "export_table",
    "import_table",
    "load_object",
    "matrix_from_json",
    "matrix_to_json",
    "rational_from_json",
    "rational_to_json",
    "signature_to_json",
    "table_rows",
    "tuple_to_json",
]
