"""Orbit enumeration, group recognition and the catalog of known orbits."""

from .bfs import ClassGraph, OrbitReport, TriangularInput, enumerate_orbit
from .catalog import Catalog, CatalogRow, load_catalog
from .dihedral import dihedral_length
from .kernels import BACKEND
from .subgroup import classify_subgroup

__all__ = [
    "BACKEND",
    "Catalog",
    "CatalogRow",
    "ClassGraph",
    "OrbitReport",
    "TriangularInput",
    "classify_subgroup",
    "dihedral_length",
    "enumerate_orbit",
    "load_catalog",
]
