"""Click entry point: verify, orbit and classify."""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import Optional

import click

from .. import __version__
from ..orbits.bfs import DEFAULT_BUDGET, OrbitConsistencyError, TriangularInput, enumerate_orbit
from ..orbits.catalog import CATALOG_ENV, CatalogError, load_catalog
from ..orbits.verify import verify_catalog_row
from ..pipeline.checkpoint import Checkpoint, CheckpointError
from ..pipeline.runner import SCHEMA_VERSION, Pipeline, PipelineOptions, report_dict
from ..signatures.reconstruct import reconstruct_tuple
from ..signatures.signature import Signature
from ..signatures.solver import SolverConsistencyError
from .formats import FormatError, export_table, load_object, tuple_to_json

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
INTERNAL_ERRORS = (OrbitConsistencyError, SolverConsistencyError, AssertionError)


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


class InternalError(click.ClickException):
    exit_code = EXIT_INTERNAL


def _emit(doc: dict, output: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False, default=str)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)


def _catalog(path: Optional[str]):
    try:
        return load_catalog(path)
    except CatalogError as exc:
        raise InputError(str(exc)) from exc


class _Group(click.Group):
    """Maps unexpected exceptions to the internal-error exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as exc:
            raise InternalError(f"{type(exc).__name__}: {exc}") from exc


@click.group(cls=_Group, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="finorbits")
def main() -> None:
    """Finite braid-group orbits of 2x2 monodromy tuples."""


# ---------------------------------------------------------------------------
@main.command()
@click.option("--table", "table", type=int, required=True, help="Catalog table (1, 9 or 10).")
@click.option("--rows", default=None, help="Row selector such as 3-8, 10,28,131 or A.")
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True, help="Labeled-state cap per orbit.")
@click.option("--catalog", "catalog_path", default=None, help=f"Catalog JSON (default: ${CATALOG_ENV} or packaged).")
@click.option("--check-group", is_flag=True, help="Also check the projective group of typed rows.")
@click.option("--source", type=click.Choice(["auto", "constructor", "signature"]), default="auto")
@click.option("-o", "--output", default=None, help="Write the JSON report here instead of stdout.")
@click.option("--table-out", default=None, help="Also write observed lengths in table column order.")
def verify(table, rows, budget, catalog_path, check_group, source, output, table_out) -> None:
    """Rebuild catalog rows, enumerate their orbits and compare lengths."""
    if budget <= 0:
        raise InputError("--budget must be positive")
    cat = _catalog(catalog_path)
    try:
        selected = cat.select(table, rows)
    except CatalogError as exc:
        raise InputError(str(exc)) from exc
    prefer = {"auto": None, "constructor": True, "signature": False}[source]
    results = []
    t0 = time.perf_counter()
    for row in selected:
        try:
            res = verify_catalog_row(row, budget, prefer_constructor=prefer, check_group=check_group)
        except INTERNAL_ERRORS as exc:
            raise InternalError(f"row {row.ident}: {exc}") from exc
        except (KeyError, ValueError) as exc:
            raise InputError(f"row {row.ident}: {exc}") from exc
        click.echo(f"{res.status:4} {row.ident:>6}  expected {res.expected}  observed {res.observed}  "
                   f"({res.source}, {res.seconds:.1f}s) {res.detail}", err=True)
        results.append(res)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "catalog": cat.source,
        "table": table,
        "rows": [r.as_dict() for r in results],
        "passed": sum(r.ok for r in results),
        "failed": sum(not r.ok for r in results),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    _emit(doc, output)
    if table_out:
        entries = [
            (r.observed if isinstance(r.observed, int) else None, row.signature())
            for r, row in zip(results, selected)
        ]
        Path(table_out).write_text(export_table(entries))
    if doc["failed"]:
        sys.exit(EXIT_MISMATCH)


# ---------------------------------------------------------------------------
def _read_input(path: str):
    try:
        doc = json.loads(Path(path).read_text())
        return load_object(doc)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except FormatError as exc:
        raise InputError(str(exc)) from exc


@main.command()
@click.argument("input_file", required=False)
@click.option("--row", default=None, help="Catalog row such as 9:101 instead of a file.")
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True)
@click.option("--catalog", "catalog_path", default=None)
@click.option("--states", is_flag=True, help="Include every labeled state in the report.")
@click.option("--expect-length", type=int, default=None, help="Exit 1 unless the length matches.")
@click.option("-o", "--output", default=None)
def orbit(input_file, row, budget, catalog_path, states, expect_length, output) -> None:
    """Enumerate the orbit of a tuple, constructor or signature."""
    if (input_file is None) == (row is None):
        raise InputError("give exactly one of INPUT_FILE or --row")
    if row is not None:
        try:
            table, r = row.split(":")
            obj = _catalog(catalog_path).row(int(table), r).signature()
        except (ValueError, CatalogError) as exc:
            raise InputError(str(exc)) from exc
    else:
        obj = _read_input(input_file)
    if isinstance(obj, Signature):
        if obj.is_parametric():
            raise InputError("signature has free parameters; substitute values first")
        rec = reconstruct_tuple(obj)
        if rec.verdict not in ("unique", "ambiguous"):
            raise InputError(f"{rec.verdict}: {rec.reason or 'no unique tuple'}")
        tuples = [rec.tuple] if rec.verdict == "unique" else list(rec.candidates)
    else:
        tuples = [obj]
    reports = []
    for t in tuples:
        try:
            rep = enumerate_orbit(t, budget, keep_states=states)
        except TriangularInput as exc:
            raise InputError(f"triangular: {exc}") from exc
        except INTERNAL_ERRORS as exc:
            raise InternalError(str(exc)) from exc
        d = rep.as_dict()
        d["tuple"] = tuple_to_json(t)
        if states:
            d["states"] = [tuple_to_json(s) for s in rep.states]
        reports.append(d)
    lengths = sorted({d["length"] for d in reports if d["finite"]})
    doc = {"schema_version": SCHEMA_VERSION, "command": "orbit", "orbits": reports, "lengths": lengths}
    _emit(doc, output)
    if expect_length is not None and lengths != [expect_length]:
        sys.exit(EXIT_MISMATCH)


# ---------------------------------------------------------------------------
@main.command()
@click.option("--seed-rows", default=None, help="Table 1 rows to seed with (default 1,2,5,15).")
@click.option("--denominator", type=int, default=6, show_default=True,
              help="Instantiate seed parameters on multiples of 1/D (D divides 2520).")
@click.option("--parametric", is_flag=True, help="Keep seeds parametric instead of instantiating.")
@click.option("--inject", default="10:A", show_default=True, help="Extra catalog rows added before closure.")
@click.option("--full", is_flag=True, help="All of Table 1, parametric, strict 2520 solver. Long-running.")
@click.option("--checkpoint", "checkpoint_path", default=None, help="Write a checkpoint after every stage.")
@click.option("--resume", "resume_path", default=None, help="Continue from a checkpoint.")
@click.option("--orbit-budget", default=2_000_000, show_default=True)
@click.option("--catalog", "catalog_path", default=None)
@click.option("--expect-tetrahedral", is_flag=True, help="Exit 1 unless the tetrahedral part is non-empty.")
@click.option("-o", "--output", default=None)
@click.option("--table-out", default=None, help="Representatives of kept components in table column order.")
@click.option("-v", "--verbose", is_flag=True)
def classify(seed_rows, denominator, parametric, inject, full, checkpoint_path, resume_path,
             orbit_budget, catalog_path, expect_tetrahedral, output, table_out, verbose) -> None:
    """Run the four-stage construction and report the typed partition."""
    cat = _catalog(catalog_path)
    resume = None
    try:
        if resume_path:
            resume = Checkpoint.load(resume_path)
            options = PipelineOptions.from_dict(resume.options)
        elif full:
            options = PipelineOptions.full(cat)
        else:
            options = PipelineOptions(
                seed_rows=tuple(seed_rows.split(",")) if seed_rows else PipelineOptions().seed_rows,
                denominator=None if parametric else denominator,
                inject=tuple(x for x in inject.split(",") if x),
                orbit_budget=orbit_budget,
            )
        for r in options.seed_rows:
            cat.row(options.seed_table, r)
    except (CheckpointError, CatalogError, ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    log = (lambda m: click.echo(m, err=True)) if verbose else None
    pipe = Pipeline(options, catalog=cat, checkpoint=checkpoint_path or resume_path, log=log)
    try:
        result = pipe.run(resume)
    except CheckpointError as exc:
        raise InputError(str(exc)) from exc
    except INTERNAL_ERRORS as exc:
        raise InternalError(str(exc)) from exc
    doc = report_dict(result)
    doc["command"] = "classify"
    _emit(doc, output)
    if table_out:
        entries = [(c.length, c.representative) for c in result.types.kept()]
        Path(table_out).write_text(export_table(entries))
    if expect_tetrahedral and not any(c.kind == "tetrahedral" for c in result.types.components):
        sys.exit(EXIT_MISMATCH)


__all__ = ["EXIT_INPUT", "EXIT_INTERNAL", "EXIT_MISMATCH", "EXIT_OK", "main"]
