"""Build the shipped catalog from the LaTeX tables.

Usage: python3 tools/build_catalog.py TABLES.md src/finorbits/orbits/data/catalog.json

Adds to the raw rows: a type letter, a kind that tells the verifier what to
check, sample parameters for parametric rows, and constructor references
for the rows with explicit matrices.  Constructor references are checked
against the row signature before they are written.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from extract_tables import extract  # noqa: E402

from finorbits.orbits.constructors import build  # noqa: E402
from finorbits.signatures.signature import Signature, signature_of_tuple, values_agree  # noqa: E402

SCHEMA_VERSION = 1
SAMPLE = {"x": "1/5", "y": "1/3", "z": "1/4", "w": "2/5"}

EXPLICIT = {
    "0": ("lowertriangular", ["x", "y", "z", "w"]),
    "1": ("3letter4", ["x", "y", "z"]),
    "2": ("3letterbig", ["x", "y", "z"]),
    "3": ("1letter9", ["x"]),
    "4": ("1letter12", ["x"]),
    "5": ("noletter105", None),
    "6": ("noletter105", None),
    "7": ("noletter105", None),
    "8": ("noletter192", []),
}

TYPES_5 = [((1, 1), "A"), ((2, 2), "B"), ((3, 4), "C"), ((5, 7), "G"), ((8, 8), "H"),
           ((9, 11), "D"), ((12, 30), "E"), ((31, 101), "F")]

NOTES = {
    ("9", "87"): "an earlier published list gives 432 for this orbit, probably a misprint",
    ("9", "99"): "an earlier published list gives 1440 for this orbit, probably a misprint",
}


def type_5(row: str) -> str:
    if row == "0":
        return "I"
    if row == "A":
        return "-"
    r = int(row)
    return next(t for (lo, hi), t in TYPES_5 if lo <= r <= hi)


def kind_of(table: str, row: str, params: list[str], length) -> str:
    if (table, row) in {("1", "1"), ("10", "0")}:
        return "triangular"
    if (table, row) == ("10", "A"):
        return "inconsistent"
    if table != "1" and row == "2":
        return "dihedral"
    if table == "1" and row in ("8", "9"):
        return "bounded"
    return "parametric" if params else "explicit"


def params_of(values: list[str]) -> list[str]:
    return sorted({ch for v in values for ch in v if ch.isalpha()})


def matches(sig: Signature, t) -> bool:
    full = signature_of_tuple(t)
    return all(v is None or values_agree(v, full.values[i]) for i, v in enumerate(sig.values))


def constructor_for(row: str, n: int, cells, values, sample):
    name, keys = EXPLICIT[row]
    sig = Signature.from_row(n, cells, values)
    if sig.is_parametric():
        sig = sig.evaluate({k: Fraction(v) for k, v in sample.items()})
    options = [{"k": k} for k in (1, 2, 3)] if keys is None else [{k: sample[k] for k in keys}]
    for params in options:
        if matches(sig, build(name, params)):
            return {"name": name, "params": {k: str(v) for k, v in params.items()}}
    raise SystemExit(f"row {row}: constructor {name} does not reproduce the row")


def main(src: str, dst: str) -> None:
    raw = extract(Path(src).read_text(encoding="utf-8"))
    out = {"schema_version": SCHEMA_VERSION, "sample_parameters": SAMPLE, "tables": {}}
    for table, tab in raw.items():
        n = 4 if table == "1" else 5
        rows = []
        for r in tab["rows"]:
            params = params_of(r["values"])
            entry = {
                "table": int(table),
                "row": r["row"],
                "length": r["length"],
                "values": r["values"],
                "type": None if table == "1" else type_5(r["row"]),
                "kind": kind_of(table, r["row"], params, r["length"]),
                "params": params,
            }
            if params:
                entry["sample"] = {p: SAMPLE[p] for p in params}
            if table != "1" and r["row"] in EXPLICIT:
                entry["constructor"] = constructor_for(r["row"], n, tab["cells"], r["values"], SAMPLE)
            note = NOTES.get((table, r["row"]))
            if note:
                entry["note"] = note
            rows.append(entry)
        out["tables"][table] = {"caption": tab["caption"], "n": n, "cells": tab["cells"], "rows": rows}
    Path(dst).write_text(json.dumps(out, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
