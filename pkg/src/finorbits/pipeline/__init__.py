"""Construction of 5-matrix finite orbits from the 4-matrix list, in four stages."""

from .checkpoint import Checkpoint, CheckpointError
from .runner import SCHEMA_VERSION, Pipeline, PipelineOptions, PipelineResult, report_dict
from .stage1 import Seed, expand_seeds, instantiate_seeds
from .stage2 import CandidateList, build_candidates
from .stage3 import closure_filter
from .stage4 import TypeReport, recognize_types

__all__ = [
    "CandidateList",
    "Checkpoint",
    "CheckpointError",
    "Pipeline",
    "PipelineOptions",
    "PipelineResult",
    "SCHEMA_VERSION",
    "Seed",
    "TypeReport",
    "build_candidates",
    "closure_filter",
    "expand_seeds",
    "instantiate_seeds",
    "recognize_types",
    "report_dict",
]
