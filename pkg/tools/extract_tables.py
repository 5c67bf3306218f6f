"""Extract the signature tables from the LaTeX source into a JSON catalog.

Usage: python3 tools/extract_tables.py TABLES.md > rows.json
The output holds raw rows only; build_catalog.py adds constructors,
samples and types.
"""

from __future__ import annotations

import json
import re
import sys

ARRAY = re.compile(r"\\begin\{array\}\{\|c\|c\|\|[c|]+\}(.*?)\\end\{array\}\\\]", re.S)
INNER = re.compile(r"\\begin\{array\}\{c\}(.*?)\\end\{array\}", re.S)
CAPTION = re.compile(r"Table (\d+): ([^\\]*)\\end\{center\}")


def clean(cell: str) -> str:
    for tok in ("\\!", "\\,", "\\hline", "\n"):
        cell = cell.replace(tok, "")
    return re.sub(r"\s+", "", cell)


def parse_array(body: str) -> tuple[list[str], list[list[str]]]:
    body = INNER.sub(lambda m: m.group(1).replace("\\\\", ""), body)
    raw = body.split("\\\\")
    rows = [[clean(c) for c in r.split("&")] for r in raw]
    rows = [r for r in rows if any(r)]
    header = rows[0]
    return header, rows[1:]


def header_name(h: str) -> str:
    m = re.fullmatch(r"\\(theta|sigma)_\{?(\d+)\}?", h)
    if m:
        return ("t" if m.group(1) == "theta" else "s") + m.group(2)
    return h


def extract(text: str) -> dict[str, dict]:
    caps = [(m.start(), int(m.group(1)), m.group(2).strip()) for m in CAPTION.finditer(text)]
    tables: dict[str, dict] = {}
    for m in ARRAY.finditer(text):
        owner = [c for c in caps if c[0] < m.start()][-1]
        header, rows = parse_array(m.group(1))
        cells = [header_name(h) for h in header[2:]]
        tab = tables.setdefault(str(owner[1]), {"caption": owner[2], "cells": cells, "rows": []})
        if tab["cells"] != cells:
            raise SystemExit(f"table {owner[1]}: header changed")
        for r in rows:
            if len(r) != len(cells) + 2:
                raise SystemExit(f"table {owner[1]}: bad row {r}")
            tab["rows"].append({"row": r[0], "length": int(r[1]) if r[1] else None, "values": r[2:]})
    return {k: tables[k] for k in ("1", "9", "10")}


if __name__ == "__main__":
    with open(sys.argv[1], encoding="utf-8") as fh:
        json.dump(extract(fh.read()), sys.stdout, indent=1)
