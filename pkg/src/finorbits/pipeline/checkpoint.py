"""Versioned, self-describing checkpoint files."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from ..signatures.signature import Signature

FORMAT = "finorbits-checkpoint"
CHECKPOINT_VERSION = 1
STAGES = ("seeds", "candidates-partial", "candidates", "closed", "typed")


class CheckpointError(ValueError):
    """Unreadable, foreign or incompatible checkpoint."""


def options_hash(options: dict) -> str:
    blob = json.dumps(options, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def signature_to_json(s: Signature) -> dict:
    return {"n": s.n, "cells": {k: v for k, v in s.to_dict().items() if v is not None}}


def signature_from_json(d: dict) -> Signature:
    return Signature.from_mapping(int(d["n"]), d["cells"])


@dataclass
class Checkpoint:
    stage: str
    options: dict
    counts: dict[str, int] = field(default_factory=dict)
    payload: dict[str, Any] = field(default_factory=dict)

    @property
    def options_hash(self) -> str:
        return options_hash(self.options)

    def header(self) -> dict:
        return {
            "format": FORMAT,
            "version": CHECKPOINT_VERSION,
            "stage": self.stage,
            "options_hash": self.options_hash,
            "options": self.options,
            "counts": self.counts,
        }

    def save(self, path: Union[str, Path]) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w") as fh:
            json.dump({"header": self.header(), "payload": self.payload}, fh)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Checkpoint":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
        head = doc.get("header", {}) if isinstance(doc, dict) else {}
        if head.get("format") != FORMAT:
            raise CheckpointError(f"{path} is not a checkpoint file")
        if head.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(f"checkpoint version {head.get('version')} is not supported")
        if head.get("stage") not in STAGES:
            raise CheckpointError(f"unknown stage {head.get('stage')!r}")
        ck = cls(head["stage"], head["options"], head.get("counts", {}), doc.get("payload", {}))
        if ck.options_hash != head.get("options_hash"):
            raise CheckpointError("options hash does not match the recorded options")
        return ck


__all__ = [
    "CHECKPOINT_VERSION",
    "FORMAT",
    "STAGES",
    "Checkpoint",
    "CheckpointError",
    "options_hash",
    "signature_from_json",
    "signature_to_json",
]
