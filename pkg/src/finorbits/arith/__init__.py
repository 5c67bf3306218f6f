"""Exact number types."""

from .angles import (
    PIPELINE_DENOMINATOR,
    AffineAngle,
    Angle,
    CellValue,
    CoefficientOverflow,
    NotRepresentable,
    angle_conductor,
    as_affine,
    cyclo_embed,
    format_rational,
    normalize_angle,
    parse_cell_value,
    trace_to_angle,
    try_trace_to_angle,
    two_cos,
)
from .cyclotomic import CycloNumber, common_order, cyclotomic_poly, normalize_order

__all__ = [
    "PIPELINE_DENOMINATOR",
    "AffineAngle",
    "Angle",
    "CellValue",
    "CoefficientOverflow",
    "CycloNumber",
    "NotRepresentable",
    "angle_conductor",
    "as_affine",
    "common_order",
    "cyclo_embed",
    "cyclotomic_poly",
    "format_rational",
    "normalize_angle",
    "normalize_order",
    "parse_cell_value",
    "trace_to_angle",
    "try_trace_to_angle",
    "two_cos",
]
