"""End-to-end driver for the four stages with checkpoint and resume."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

from ..arith import PIPELINE_DENOMINATOR
from ..orbits.catalog import Catalog, load_catalog
from ..signatures.signature import Signature
from .checkpoint import (
    STAGES,
    Checkpoint,
    CheckpointError,
    options_hash,
    signature_from_json,
    signature_to_json,
)
from .stage1 import Seed, expand_seeds, instantiate_seeds
from .stage2 import Candidate, build_candidates
from .stage3 import closure_filter
from .stage4 import TypeReport, recognize_types

SCHEMA_VERSION = 1
WORKED_EXAMPLE_ROWS = ("1", "2", "5", "15")
EXCEPTIONAL_TABLE = 10


@dataclass(frozen=True)
class PipelineOptions:
    seed_rows: tuple[str, ...] = WORKED_EXAMPLE_ROWS
    seed_table: int = 1
    denominator: Optional[int] = 6  # None keeps seeds parametric
    strict: bool = False
    inject: tuple[str, ...] = ("10:A",)
    orbit_budget: int = 2_000_000
    max_partials: int = 2_000_000

    def __post_init__(self) -> None:
        if self.denominator is not None:
            if self.denominator <= 0 or PIPELINE_DENOMINATOR % self.denominator:
                raise ValueError(f"denominator {self.denominator} must divide {PIPELINE_DENOMINATOR}")
        if self.orbit_budget <= 0 or self.max_partials <= 0:
            raise ValueError("budgets must be positive")

    @classmethod
    def full(cls, catalog: Catalog) -> "PipelineOptions":
        rows = tuple(r.row for r in catalog.tables[1])
        return cls(seed_rows=rows, denominator=None, strict=True)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["seed_rows"] = list(self.seed_rows)
        d["inject"] = list(self.inject)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineOptions":
        d = dict(d)
        d["seed_rows"] = tuple(d["seed_rows"])
        d["inject"] = tuple(d["inject"])
        return cls(**d)

    @property
    def digest(self) -> str:
        return options_hash(self.to_dict())


@dataclass
class PipelineResult:
    options: PipelineOptions
    seeds: list[Seed]
    candidates: list[Signature]
    closed: list[Signature]
    types: TypeReport
    stages_run: list[str] = field(default_factory=list)
    seconds: dict[str, float] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        return {
            "seeds": len(self.seeds),
            "candidates": len(self.candidates),
            "closed": len(self.closed),
            "components": len(self.types.components),
        }


def _seeds_json(seeds: list[Seed]) -> list:
    return [{"origin": s.origin, "signature": signature_to_json(s.signature)} for s in seeds]


def _seeds_from(data: list) -> list[Seed]:
    return [Seed(signature_from_json(d["signature"]), d["origin"]) for d in data]


def _sigs_json(sigs) -> list:
    return [signature_to_json(s) for s in sigs]


def _sigs_from(data) -> list[Signature]:
    return [signature_from_json(d) for d in data]


class Pipeline:
    """Runs stages in order; each finished stage can be written to a checkpoint."""

    def __init__(
        self,
        options: PipelineOptions,
        *,
        catalog: Optional[Catalog] = None,
        checkpoint: Optional[Union[str, Path]] = None,
        log: Optional[Callable[[str], None]] = None,
    ) -> None:
        self.options = options
        self.catalog = catalog or load_catalog()
        self.checkpoint = Path(checkpoint) if checkpoint else None
        self.log = log or (lambda msg: None)

    # ---- stage bodies -------------------------------------------------
    def _seed_rows(self) -> list[tuple[str, Signature]]:
        out = []
        for r in self.options.seed_rows:
            row = self.catalog.row(self.options.seed_table, r)
            sig = row.parametric_signature() if row.params else row.signature()
            out.append((row.ident, sig))
        return out

    def _injected(self) -> list[Signature]:
        out = []
        for ident in self.options.inject:
            table, row = ident.split(":")
            out.append(self.catalog.row(int(table), row).signature())
        return out

    def _known(self) -> list[tuple[str, Signature]]:
        rows = self.catalog.tables.get(EXCEPTIONAL_TABLE, [])
        return [(r.ident, r.parametric_signature()) for r in rows if r.kind in ("explicit", "parametric")]

    def _stage_seeds(self) -> list[Seed]:
        seeds = expand_seeds(self._seed_rows())
        if self.options.denominator is not None:
            seeds = instantiate_seeds(seeds, self.options.denominator)
        return seeds

    def _stage_candidates(self, seeds, start=None, start_level=0) -> list[Signature]:
        def progress(level: int, size: int) -> None:
            self.log(f"stage 2 level {level}: {size} partial signatures")

        def on_level(next_level: int, partials: list[Candidate]) -> None:
            self._save(
                "candidates-partial",
                {"seeds": len(seeds), "partials": len(partials), "level": next_level},
                {
                    "seeds": _seeds_json(seeds),
                    "level": next_level,
                    "partials": [
                        {"signature": signature_to_json(c.signature), "provenance": c.provenance}
                        for c in partials
                    ],
                },
            )

        cands = build_candidates(
            seeds,
            strict=self.options.strict,
            max_partials=self.options.max_partials,
            progress=progress,
            on_level=on_level,
            start=start,
            start_level=start_level,
        )
        out = {s.key(): s for s in cands.signatures()}
        for s in self._injected():
            out.setdefault(s.key(), s)
        return list(out.values())

    # ---- checkpoint plumbing ------------------------------------------
    def _save(self, stage: str, counts: dict, payload: dict) -> None:
        if self.checkpoint is None:
            return
        Checkpoint(stage, self.options.to_dict(), counts, payload).save(self.checkpoint)
        self.log(f"checkpoint {stage} -> {self.checkpoint}")

    def run(self, resume: Optional[Checkpoint] = None) -> PipelineResult:
        seeds: list[Seed] = []
        cands: list[Signature] = []
        closed: list[Signature] = []
        done = -1
        if resume is not None:
            if resume.options_hash != self.options.digest:
                raise CheckpointError(
                    f"checkpoint options hash {resume.options_hash} does not match {self.options.digest}"
                )
            done = STAGES.index(resume.stage)
            seeds = _seeds_from(resume.payload.get("seeds", []))
            cands = _sigs_from(resume.payload.get("candidates", []))
            closed = _sigs_from(resume.payload.get("closed", []))
        result = PipelineResult(self.options, seeds, cands, closed, TypeReport())

        def timed(name, fn):
            t0 = time.perf_counter()
            out = fn()
            result.seconds[name] = round(time.perf_counter() - t0, 3)
            result.stages_run.append(name)
            self.log(f"{name}: {result.seconds[name]} s")
            return out

        if done < STAGES.index("seeds"):
            result.seeds = timed("seeds", self._stage_seeds)
            self._save("seeds", {"seeds": len(result.seeds)}, {"seeds": _seeds_json(result.seeds)})
        if done < STAGES.index("candidates"):
            start, level = None, 0
            if resume is not None and resume.stage == "candidates-partial":
                level = int(resume.payload["level"])
                start = [
                    Candidate(
                        signature_from_json(d["signature"]),
                        tuple((o, int(p)) for o, p in d["provenance"]),
                    )
                    for d in resume.payload["partials"]
                ]
            result.candidates = timed(
                "candidates", lambda: self._stage_candidates(result.seeds, start, level)
            )
            self._save(
                "candidates",
                {"seeds": len(result.seeds), "candidates": len(result.candidates)},
                {"seeds": _seeds_json(result.seeds), "candidates": _sigs_json(result.candidates)},
            )
        if done < STAGES.index("closed"):
            rep = timed("closed", lambda: closure_filter(result.candidates, strict=self.options.strict))
            result.closed = rep.signatures
            self._save(
                "closed",
                {"seeds": len(result.seeds), "candidates": len(result.candidates), "closed": len(result.closed)},
                {
                    "seeds": _seeds_json(result.seeds),
                    "candidates": _sigs_json(result.candidates),
                    "closed": _sigs_json(result.closed),
                },
            )
        result.types = timed(
            "typed",
            lambda: recognize_types(
                result.closed, orbit_budget=self.options.orbit_budget, known=self._known()
            ),
        )
        return result


def report_dict(result: PipelineResult, columns: Optional[list[str]] = None) -> dict:
    """Machine-readable classification report."""
    comps = []
    for c in result.types.components:
        d = c.as_dict()
        d["signatures"] = [s.to_dict() for s in c.signatures]
        comps.append(d)
    return {
        "schema_version": SCHEMA_VERSION,
        "options": result.options.to_dict(),
        "options_hash": result.options.digest,
        "counts": result.counts(),
        "partition": {k: v for k, v in result.types.counts().items() if v},
        "stages_run": result.stages_run,
        "seconds": result.seconds,
        "components": comps,
    }


__all__ = [
    "SCHEMA_VERSION",
    "WORKED_EXAMPLE_ROWS",
    "Pipeline",
    "PipelineOptions",
    "PipelineResult",
    "report_dict",
]
