"""Signature formalism: cells, merging, the modular solver and reconstruction."""

from .cells import CellId, all_cells, cell_count, cell_index, parse_cell, sigma_count, theta_count
from .merge import MergeResult, can_merge, merge_signatures, normal_form
from .reconstruct import Reconstruction, reconstruct_tuple
from .signature import (
    Signature,
    braid_signature,
    induct_signature,
    reduce_signature,
    signature_of_tuple,
    trace_vector,
)
from .solver import (
    Equation,
    ModularLinearSystem,
    SolutionFamily,
    SolverConsistencyError,
    brute_force_solutions,
    solve_modular_system,
)

__all__ = [
    "CellId",
    "Equation",
    "MergeResult",
    "ModularLinearSystem",
    "Reconstruction",
    "Signature",
    "SolutionFamily",
    "SolverConsistencyError",
    "all_cells",
    "braid_signature",
    "brute_force_solutions",
    "can_merge",
    "cell_count",
    "cell_index",
    "induct_signature",
    "merge_signatures",
    "normal_form",
    "parse_cell",
    "reconstruct_tuple",
    "reduce_signature",
    "sigma_count",
    "signature_of_tuple",
    "solve_modular_system",
    "theta_count",
    "trace_vector",
]
