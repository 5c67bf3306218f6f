import json
import random
from fractions import Fraction
from importlib import resources

import pytest
from click.testing import CliRunner
from hypothesis import given
from hypothesis import strategies as st

from finorbits.arith import CycloNumber
from finorbits.cli import app
from finorbits.cli.formats import (
    TABLE_COLUMNS,
    FormatError,
    cyclo_from_json,
    cyclo_to_json,
    export_table,
    import_table,
    load_object,
    rational_from_json,
    rational_to_json,
    signature_to_json,
    tuple_to_json,
)
from finorbits.monodromy import are_conjugate
from finorbits.orbits import load_catalog
from finorbits.orbits import constructors as C
from finorbits.orbits.bfs import OrbitConsistencyError
from finorbits.pipeline import Checkpoint
from finorbits.signatures import signature_of_tuple

from helpers import random_tuple


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(app.main, [str(a) for a in args], catch_exceptions=False)

    return invoke


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


# ---------------------------------------------------------------------------
# encodings


@given(st.fractions(max_denominator=1000))
def test_rational_round_trip(q):
    s = rational_to_json(q)
    assert isinstance(s, str)
    assert rational_from_json(s) == q


def test_rational_spelling():
    assert rational_to_json(Fraction(-2, 6)) == "-1/3"
    assert rational_to_json(Fraction(4)) == "4"
    with pytest.raises(FormatError):
        rational_from_json("1/0")


@given(st.sampled_from([3, 4, 5, 12, 15]), st.lists(st.fractions(max_denominator=9), min_size=1, max_size=4))
def test_cyclotomic_round_trip(order, coeffs):
    x = CycloNumber.rational(0, order)
    z = CycloNumber.zeta(order)
    for c in coeffs:
        x = x * z + c
    enc = cyclo_to_json(x)
    assert enc[0] == x.order and all(isinstance(c, str) for c in enc[1])
    assert cyclo_from_json(json.loads(json.dumps(enc))) == x


@pytest.mark.parametrize("bad", [5, [3], [3, "1/2"], {"order": 3}])
def test_cyclotomic_rejects_other_shapes(bad):
    with pytest.raises(FormatError):
        cyclo_from_json(bad)


def test_tuple_and_signature_documents_round_trip():
    for seed in range(5):
        t = random_tuple(random.Random(seed))
        back = load_object(json.loads(json.dumps(tuple_to_json(t))))
        assert back.mats == t.mats and back.labels == t.labels
    s = signature_of_tuple(C.tuple_f())
    assert load_object(signature_to_json(s)).key() == s.key()
    f = load_object({"kind": "constructor", "name": "F"})
    assert are_conjugate(f, C.tuple_f())


@pytest.mark.parametrize(
    "doc",
    [[], {"name": "F"}, {"kind": "constructor", "name": "nope"}, {"kind": "matrix"}, {"kind": "tuple"}],
)
def test_bad_documents(doc):
    with pytest.raises(FormatError):
        load_object(doc)


def test_table_export_column_order_and_import():
    assert TABLE_COLUMNS == (
        "length", "θ1", "θ2", "θ3", "θ4", "θ5", "σ12", "σ23", "σ34", "σ45", "σ51", "σ13", "σ24",
    )
    s = signature_of_tuple(C.tuple_f())
    text = export_table([(16, s), (None, s)])
    lines = text.splitlines()
    assert lines[0].split("\t") == list(TABLE_COLUMNS)
    assert lines[1].split("\t")[:2] == ["16", str(s["t1"].value)]
    (l1, s1), (l2, _) = import_table(text)
    assert (l1, l2) == (16, None)
    for col in TABLE_COLUMNS[1:]:
        name = col.replace("θ", "t").replace("σ", "s")
        assert s1[name] == s[name]
    with pytest.raises(FormatError):
        import_table("length\tθ1\n")


# ---------------------------------------------------------------------------
# commands


def test_orbit_of_f(run, tmp_path):
    p = write(tmp_path, "f.json", {"kind": "constructor", "name": "F"})
    res = run("orbit", p, "--expect-length", 16)
    assert res.exit_code == 0
    doc = json.loads(res.stdout)
    assert doc["schema_version"] == 1
    assert doc["lengths"] == [16]
    assert doc["orbits"][0]["total_states"] == 1920
    assert run("orbit", p, "--expect-length", 15).exit_code == 1


def test_orbit_of_three_letter_big_at_halves(run, tmp_path):
    half = "1/2"
    p = write(tmp_path, "c.json", {"kind": "constructor", "name": "3letterbig",
                                   "params": {"x": half, "y": half, "z": half}})
    res = run("orbit", p)
    assert res.exit_code == 0
    assert json.loads(res.stdout)["lengths"] == [4]


def test_orbit_from_signature_document(run, tmp_path):
    p = write(tmp_path, "s.json", signature_to_json(signature_of_tuple(C.tuple_f())))
    res = run("orbit", p)
    assert res.exit_code == 0 and json.loads(res.stdout)["lengths"] == [16]


def test_orbit_input_errors(run, tmp_path):
    tri = write(tmp_path, "tri.json", {"kind": "constructor", "name": "lowertriangular",
                                       "params": {"x": "1/3", "y": "1/3", "z": "1/3", "w": "1/3"}})
    res = run("orbit", tri)
    assert res.exit_code == 2 and "triangular" in res.output
    assert run("orbit", "--row", "10:A").exit_code == 2
    assert run("orbit").exit_code == 2
    assert run("orbit", tmp_path / "missing.json").exit_code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("orbit", bad).exit_code == 2
    par = write(tmp_path, "p.json", {"kind": "signature", "n": 5, "cells": {"t1": "x"}})
    assert run("orbit", par).exit_code == 2


def test_verify_rows_with_table_export(run, tmp_path):
    out, tsv = tmp_path / "v.json", tmp_path / "v.tsv"
    res = run("verify", "--table", 1, "--rows", "10,28", "-o", out, "--table-out", tsv)
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert [r["observed"] for r in doc["rows"]] == [5, 7]
    assert doc["passed"] == 2 and doc["failed"] == 0
    rows = tsv.read_text().splitlines()
    assert rows[0].split("\t") == list(TABLE_COLUMNS)
    assert [r.split("\t")[0] for r in rows[1:]] == ["5", "7"]


def test_verify_mismatch_exit_code(run, tmp_path):
    doc = json.loads(resources.files("finorbits.orbits").joinpath("data/catalog.json").read_text("utf-8"))
    (row,) = [r for r in doc["tables"]["1"]["rows"] if r["row"] == "10"]
    row["length"] = 6
    path = write(tmp_path, "cat.json", doc)
    res = run("verify", "--table", 1, "--rows", 10, "--catalog", path)
    assert res.exit_code == 1
    assert json.loads(res.stdout)["rows"][0]["status"] != "pass"


def test_catalog_env_var_reaches_the_cli(run, tmp_path, monkeypatch):
    monkeypatch.setenv("FINORBITS_CATALOG", str(tmp_path / "nowhere.json"))
    assert run("verify", "--table", 1, "--rows", 10).exit_code == 2


def test_verify_input_errors(run):
    assert run("verify", "--table", 99).exit_code == 2
    assert run("verify", "--table", 1, "--rows", "zzz").exit_code == 2
    assert run("verify", "--table", 1, "--rows", 10, "--budget", 0).exit_code == 2


def test_internal_consistency_exit_code(run, monkeypatch):
    def broken(*a, **k):
        raise OrbitConsistencyError("total 7 != length 1 x 120")

    monkeypatch.setattr(app, "verify_catalog_row", broken)
    assert run("verify", "--table", 1, "--rows", 10).exit_code == 3


def test_unexpected_errors_are_internal(run, monkeypatch):
    def broken(*a, **k):
        raise ZeroDivisionError("boom")

    monkeypatch.setattr(app, "verify_catalog_row", broken)
    assert run("verify", "--table", 1, "--rows", 10).exit_code == 3


def test_classify_small_run_with_checkpoint_and_resume(run, tmp_path):
    ck, out, tsv = tmp_path / "run.ck", tmp_path / "r.json", tmp_path / "r.tsv"
    res = run("classify", "--seed-rows", "4,7", "--inject", "", "--checkpoint", ck, "-o", out,
              "--table-out", tsv)
    assert res.exit_code == 0
    first = json.loads(out.read_text())
    assert first["schema_version"] == 1 and first["command"] == "classify"
    assert first["options"]["seed_rows"] == ["4", "7"]
    assert Checkpoint.load(ck).stage == "closed"
    assert tsv.read_text().splitlines()[0].split("\t") == list(TABLE_COLUMNS)

    res = run("classify", "--resume", ck, "-o", out)
    assert res.exit_code == 0
    again = json.loads(out.read_text())
    assert again["partition"] == first["partition"]
    assert again["stages_run"] == ["typed"]
    assert again["options_hash"] == first["options_hash"]


def test_classify_expect_tetrahedral_fails_without_it(run):
    res = run("classify", "--seed-rows", "4,7", "--inject", "", "--expect-tetrahedral")
    assert res.exit_code == 1


def test_classify_input_errors(run, tmp_path):
    assert run("classify", "--seed-rows", "99999").exit_code == 2
    assert run("classify", "--denominator", 11).exit_code == 2
    junk = tmp_path / "junk.ck"
    junk.write_text("{}")
    assert run("classify", "--resume", junk).exit_code == 2


def test_version_and_help(run):
    assert run("--version").exit_code == 0
    for cmd in ("verify", "orbit", "classify"):
        assert run(cmd, "--help").exit_code == 0


def test_verify_table9_small_rows(run):
    res = run("verify", "--table", 9, "--rows", "3-8")
    assert res.exit_code == 0
    assert [r["observed"] for r in json.loads(res.stdout)["rows"]] == [9, 12, 105, 105, 105, 192]
