import json
import shutil

import pytest

from finorbits.monodromy import Mat2, MonodromyTuple, reduce_tuple, verify_tuple
from finorbits.orbits import ClassGraph, load_catalog
from finorbits.orbits import constructors as C
from finorbits.pipeline import (
    SCHEMA_VERSION,
    Checkpoint,
    CheckpointError,
    Pipeline,
    PipelineOptions,
    closure_filter,
    recognize_types,
    report_dict,
)
from finorbits.pipeline.stage1 import (
    negate_signature,
    reverse_signature,
    shift_signature,
    symmetry_closure,
)
from finorbits.pipeline.stage4 import unit_position
from finorbits.signatures import signature_of_tuple

SMALL = PipelineOptions(seed_rows=("4", "7"), inject=())


@pytest.fixture(scope="module")
def f_orbit():
    g = ClassGraph(C.tuple_f())
    return [g.signature(s) for s in range(len(g))]


@pytest.fixture(scope="module")
def small_run():
    return Pipeline(SMALL).run()


def keys(sigs):
    return {s.key() for s in sigs}


# ---------------------------------------------------------------------------
# symmetries


def test_symmetries_on_four_signatures():
    row = load_catalog().row(1, "10").signature()
    s = row
    for _ in range(4):
        s = shift_signature(s)
    assert s.key() == row.key()
    assert reverse_signature(reverse_signature(row)).key() == row.key()
    assert negate_signature(negate_signature(row, 0, 1), 0, 1).key() == row.key()
    closure = symmetry_closure([row])
    assert row.key() in keys(closure)
    assert keys(symmetry_closure(closure)) == keys(closure)


# ---------------------------------------------------------------------------
# closure


def test_braid_orbit_is_closed(f_orbit):
    rep = closure_filter(f_orbit)
    assert len(f_orbit) == 240
    assert keys(rep.signatures) == keys(f_orbit)


def test_lone_orbit_member_is_excluded(f_orbit):
    assert closure_filter(f_orbit[:1]).signatures == []


def test_inconsistent_row_survives_closure():
    a = load_catalog().row(10, "A").signature()
    assert len(closure_filter([a]).signatures) == 1


def test_closure_is_a_fixpoint(small_run):
    again = closure_filter(small_run.closed)
    assert keys(again.signatures) == keys(small_run.closed)


# ---------------------------------------------------------------------------
# typing


def _with_unit(k: int, sign: int) -> MonodromyTuple:
    mats = list(reduce_tuple(C.tuple_f(), 5).mats)
    unit = Mat2.identity()
    if sign < 0:
        mats[k % 4] = -mats[k % 4]
        unit = -unit
    return MonodromyTuple(tuple(mats[:k]) + (unit,) + tuple(mats[k:]))


@pytest.mark.parametrize("k", range(5))
@pytest.mark.parametrize("sign", [1, -1])
def test_unit_position_detects_plus_and_minus_identity(k, sign):
    t = _with_unit(k, sign)
    assert verify_tuple(t) is None
    assert unit_position(signature_of_tuple(t)) == k


def test_unit_position_on_f():
    assert unit_position(signature_of_tuple(C.tuple_f())) is None


def test_f_orbit_types_as_tetrahedral(f_orbit):
    rep = recognize_types(f_orbit)
    (comp,) = rep.components
    assert comp.kind == "tetrahedral"
    assert comp.length == 16
    assert len(comp.signatures) == 240


def test_row_a_is_culled():
    rep = recognize_types([load_catalog().row(10, "A").signature()])
    assert [c.kind for c in rep.components] == ["inconsistent"]
    assert rep.culled()


def test_exceptional_component_is_matched():
    rows = load_catalog().tables[10]
    known = [(r.ident, r.parametric_signature()) for r in rows if r.kind in ("explicit", "parametric")]
    t = C.one_letter_9(0)
    g = ClassGraph(t)
    orbit = [g.signature(s) for s in range(len(g))]
    (comp,) = recognize_types(orbit, known=known).components
    assert (comp.kind, comp.detail, comp.length) == ("exceptional", "matches 10:3", 9)


# ---------------------------------------------------------------------------
# runs, reports and checkpoints


def test_small_run_counts(small_run):
    c = small_run.counts()
    assert c["candidates"] >= c["closed"] > 0
    assert small_run.stages_run == ["seeds", "candidates", "closed", "typed"]
    assert sum(small_run.types.counts().values()) == c["components"]


def test_report_has_schema_and_column_order(small_run):
    d = report_dict(small_run)
    assert d["schema_version"] == SCHEMA_VERSION
    assert d["options_hash"] == SMALL.digest
    json.dumps(d)
    comp = d["components"][0]
    names = list(comp["signatures"][0])
    assert names[:8] == ["t1", "t2", "t3", "t4", "t5", "s12", "s23", "s34"]


def test_resume_from_every_stage(tmp_path, small_run):
    path = tmp_path / "run.ck"
    snaps = {}

    def grab(msg):
        if msg.startswith("checkpoint "):
            stage = msg.split()[1]
            shutil.copy(path, tmp_path / f"{stage}.ck")
            snaps[stage] = tmp_path / f"{stage}.ck"

    first = Pipeline(SMALL, checkpoint=path, log=grab).run()
    assert keys(first.closed) == keys(small_run.closed)
    assert {"seeds", "candidates-partial", "candidates", "closed"} <= set(snaps)

    for stage, snap in snaps.items():
        ck = Checkpoint.load(snap)
        assert ck.stage == stage
        assert ck.header()["version"] == 1
        again = Pipeline(SMALL).run(resume=ck)
        assert keys(again.closed) == keys(small_run.closed), stage
        assert again.types.counts() == small_run.types.counts()


def test_resume_rejects_other_options(tmp_path):
    path = tmp_path / "seeds.ck"
    Checkpoint("seeds", SMALL.to_dict(), {}, {"seeds": []}).save(path)
    other = PipelineOptions(seed_rows=("4",), inject=())
    with pytest.raises(CheckpointError):
        Pipeline(other).run(resume=Checkpoint.load(path))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d["header"].update(version=99),
        lambda d: d["header"].update(format="other"),
        lambda d: d["header"].update(stage="bogus"),
        lambda d: d["header"].update(options_hash="0" * 16),
    ],
)
def test_bad_checkpoint_headers(tmp_path, mutate):
    path = tmp_path / "x.ck"
    Checkpoint("seeds", SMALL.to_dict(), {}, {"seeds": []}).save(path)
    doc = json.loads(path.read_text())
    mutate(doc)
    path.write_text(json.dumps(doc))
    with pytest.raises(CheckpointError):
        Checkpoint.load(path)


def test_invalid_options():
    with pytest.raises(ValueError):
        PipelineOptions(denominator=11)
    with pytest.raises(ValueError):
        PipelineOptions(orbit_budget=0)
    assert PipelineOptions.from_dict(SMALL.to_dict()) == SMALL


@pytest.mark.slow
def test_augmented_seeds_keep_f_tetrahedral(f_orbit):
    opts = PipelineOptions(seed_rows=("1", "2", "4", "5", "7", "15"))
    res = Pipeline(opts).run()
    closed = keys(res.closed)
    assert keys(f_orbit) <= closed
    where = {s.key(): c for c in res.types.components for s in c.signatures}
    comp = where[f_orbit[0].key()]
    assert comp.kind == "tetrahedral" and comp.length == 16
    assert where[load_catalog().row(10, "A").signature().key()].kind == "inconsistent"
    for c in res.types.components:
        if c.kind == "exceptional":
            assert c.detail.startswith("matches ")
