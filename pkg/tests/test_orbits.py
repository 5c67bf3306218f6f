import json
import os
import random
import subprocess
import sys
from fractions import Fraction
from importlib import resources

import pytest

from finorbits.orbits import (
    BACKEND,
    TriangularInput,
    classify_subgroup,
    enumerate_orbit,
    load_catalog,
)
from finorbits.orbits import constructors as C
from finorbits.orbits import kernels
from finorbits.orbits.catalog import CATALOG_ENV, CatalogError, parse_rows
from finorbits.orbits.verify import verify_catalog_row
from finorbits.signatures import signature_of_tuple

from helpers import diagonal_tuple

THIRD = Fraction(1, 3)

SMALL = {
    "F": (C.tuple_f, 16),
    "one-letter-9": (lambda: C.one_letter_9(THIRD), 9),
    "one-letter-12": (lambda: C.one_letter_12(THIRD), 12),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_python_kernel_matches_default(name):
    build, length = SMALL[name]
    t = build()
    fast = enumerate_orbit(t)
    slow = enumerate_orbit(t, kernel=kernels.python_labeled_bfs)
    assert (fast.length, fast.total_states) == (slow.length, slow.total_states) == (length, length * 120)
    assert fast.finite and fast.generator_closure_checked


def test_compiled_kernel_when_built():
    compiled = kernels.compiled_labeled_bfs()
    if compiled is None:
        pytest.skip("extension not built")
    assert BACKEND == "cython" or os.environ.get(kernels.PURE_ENV)
    rep = enumerate_orbit(C.tuple_f(), kernel=compiled)
    assert rep.length == 16


def test_env_var_forces_python_kernel():
    code = "from finorbits.orbits import BACKEND; print(BACKEND)"
    env = dict(os.environ, FINORBITS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_exact_matrix_walk_agrees_with_group_table():
    t = C.tuple_f()
    table = enumerate_orbit(t)
    exact = enumerate_orbit(t, check_conjugacy=True)
    assert table.backend.endswith("/table")
    assert exact.backend.endswith("/pool")
    assert (exact.length, exact.total_states) == (table.length, table.total_states)


def test_kept_states_are_the_distinct_classes():
    rep = enumerate_orbit(C.tuple_f(), keep_states=True)
    assert len(rep.states) == rep.classes == 240
    keys = {signature_of_tuple(s).key() for s in rep.states}
    assert len(keys) == 240


def test_budget_overflow_reports_unknown():
    rep = enumerate_orbit(C.no_letter_192(), budget=100)
    assert not rep.finite
    assert rep.length == 0


def test_triangular_input_is_refused():
    with pytest.raises(TriangularInput):
        enumerate_orbit(diagonal_tuple(random.Random(3), 5))


@pytest.mark.parametrize(
    "build,kind",
    [
        (C.tuple_f, "tetrahedral"),
        (lambda: C.one_letter_9(THIRD), "tetrahedral"),
        (lambda: C.three_letter_4(THIRD, Fraction(1, 4), Fraction(1, 5)), "dihedral"),
        (C.no_letter_192, "infinite/other"),
    ],
)
def test_subgroup_recognition(build, kind):
    assert classify_subgroup(build()) == kind


def test_row_selectors():
    assert parse_rows("3-8") == ["3", "4", "5", "6", "7", "8"]
    assert parse_rows("1,3,A") == ["1", "3", "A"]


def test_verify_small_row_from_its_signature():
    res = verify_catalog_row(load_catalog().row(1, 10))
    assert res.ok
    assert res.as_dict()["observed"] == 5
    assert res.as_dict()["source"] == "signature"


def test_catalog_env_var(tmp_path, monkeypatch):
    doc = json.loads(resources.files("finorbits.orbits").joinpath("data/catalog.json").read_text("utf-8"))
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(CATALOG_ENV, str(path))
    assert load_catalog().row(1, 10).length == 5

    monkeypatch.setenv(CATALOG_ENV, str(tmp_path / "missing.json"))
    with pytest.raises(CatalogError):
        load_catalog()

    doc["schema_version"] = 999
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(CATALOG_ENV, str(path))
    with pytest.raises(CatalogError):
        load_catalog()


def test_unknown_row():
    with pytest.raises((KeyError, CatalogError)):
        load_catalog().row(1, 99999)
