"""The shipped catalog of known finite orbits.

Rows keep their table and row number.  ``kind`` tells the verifier what a
row asserts: an orbit length (explicit, parametric), a closed-form length
(dihedral), a length window (bounded), or a verdict (triangular,
inconsistent).
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from ..monodromy import MonodromyTuple
from ..signatures.signature import Signature
from .constructors import build

CATALOG_ENV = "FINORBITS_CATALOG"
SCHEMA_VERSION = 1


class CatalogError(ValueError):
    """Missing, unreadable or malformed catalog, or an unknown row."""


@dataclass(frozen=True)
class CatalogRow:
    table: int
    row: str
    n: int
    cells: tuple[str, ...]
    values: tuple[str, ...]
    length: Optional[int]
    kind: str
    type: Optional[str] = None
    params: tuple[str, ...] = ()
    sample: dict = field(default_factory=dict)
    constructor: Optional[dict] = None
    note: str = ""

    @property
    def ident(self) -> str:
        return f"{self.table}:{self.row}"

    def signature(self, values: Optional[dict] = None) -> Signature:
        """Row signature; parametric rows are evaluated at ``values`` or the sample."""
        sig = Signature.from_row(self.n, self.cells, self.values)
        if sig.is_parametric():
            point = values if values is not None else self.sample
            sig = sig.evaluate({k: Fraction(v) for k, v in point.items()})
        return sig

    def parametric_signature(self) -> Signature:
        return Signature.from_row(self.n, self.cells, self.values)

    def tuple(self) -> Optional[MonodromyTuple]:
        if self.constructor is None:
            return None
        return build(self.constructor["name"], self.constructor.get("params"))

    def sample_fractions(self) -> dict[str, Fraction]:
        return {k: Fraction(v) for k, v in self.sample.items()}


@dataclass
class Catalog:
    schema_version: int
    tables: dict[int, list[CatalogRow]]
    captions: dict[int, str]
    source: str = ""

    def row(self, table: int, row: Union[int, str]) -> CatalogRow:
        for r in self.tables.get(int(table), []):
            if r.row == str(row):
                return r
        raise CatalogError(f"no row {row} in table {table}")

    def select(self, table: int, selector: Optional[str] = None) -> list[CatalogRow]:
        if int(table) not in self.tables:
            raise CatalogError(f"no table {table}")
        if not selector:
            return list(self.tables[int(table)])
        return [self.row(table, r) for r in parse_rows(selector)]


def parse_rows(selector: str) -> list[str]:
    """'3-8', '10,28,131', 'A' or a mix; ranges are numeric and inclusive."""
    out: list[str] = []
    for part in selector.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise CatalogError(f"empty row range {part}")
            out.extend(str(i) for i in range(lo, hi + 1))
        elif re.fullmatch(r"\d+|[A-Za-z]", part):
            out.append(part.upper() if part.isalpha() else str(int(part)))
        else:
            raise CatalogError(f"bad row selector {part!r}")
    return out


def default_catalog_path() -> Optional[Path]:
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else None


def load_catalog(path: Union[str, Path, None] = None) -> Catalog:
    """Load from ``path``, else $FINORBITS_CATALOG, else the packaged file."""
    path = Path(path) if path else default_catalog_path()
    try:
        if path is None:
            text = resources.files(__package__).joinpath("data/catalog.json").read_text("utf-8")
            source = "<packaged>"
        else:
            text = path.read_text(encoding="utf-8")
            source = str(path)
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog: {exc}") from exc
    return _parse(doc, source)


def _parse(doc: dict, source: str) -> Catalog:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CatalogError(f"unsupported catalog schema_version {version!r}")
    tables: dict[int, list[CatalogRow]] = {}
    captions: dict[int, str] = {}
    try:
        for key, tab in doc["tables"].items():
            t = int(key)
            captions[t] = tab.get("caption", "")
            tables[t] = [
                CatalogRow(
                    table=t,
                    row=str(r["row"]),
                    n=int(tab["n"]),
                    cells=tuple(tab["cells"]),
                    values=tuple(r["values"]),
                    length=r.get("length"),
                    kind=r["kind"],
                    type=r.get("type"),
                    params=tuple(r.get("params", ())),
                    sample=dict(r.get("sample", {})),
                    constructor=r.get("constructor"),
                    note=r.get("note", ""),
                )
                for r in tab["rows"]
            ]
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"malformed catalog: {exc}") from exc
    return Catalog(int(version), tables, captions, source)


__all__ = [
    "CATALOG_ENV",
    "Catalog",
    "CatalogError",
    "CatalogRow",
    "SCHEMA_VERSION",
    "default_catalog_path",
    "load_catalog",
    "parse_rows",
]
