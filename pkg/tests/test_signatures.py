"""Cells, braiding, induction, merging, the modular solver and reconstruction."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finorbits.arith import AffineAngle, Angle
from finorbits.monodromy import reduce_tuple
from finorbits.orbits import classify_subgroup, load_catalog
from finorbits.signatures import (
    ModularLinearSystem,
    brute_force_solutions,
    Signature,
    all_cells,
    braid_signature,
    cell_count,
    cell_index,
    induct_signature,
    merge_signatures,
    normal_form,
    parse_cell,
    reconstruct_tuple,
    reduce_signature,
    signature_of_tuple,
    sigma_count,
    solve_modular_system,
    theta_count,
)
from finorbits.signatures.signature import conflicts, incomplete_pattern_cells

from helpers import random_tuple

CELLS4 = ["t1", "t2", "t3", "t4", "s12", "s23", "s13", "s24"]
CELLS5 = [
    "t1", "t2", "t3", "t4", "t5", "s12", "s23", "s34", "s45", "s51", "s13", "s24",
    "s35", "s41", "s52", "s134", "s245", "s351", "s412", "s523",
]


def sig5(values):
    """A 5-signature from a column in CELLS5 order; empty strings are undefined."""
    return Signature.from_row(5, [c for c, v in zip(CELLS5, values) if v], [v for v in values if v])


F = sig5(["1/3", "1/3", "1/3", "1/3", "1/2", "0", "0", "1/2", "1/3", "1/3", "2/3",
          "1/3", "1/3", "1/2", "2/3", "2/3", "2/3", "1/3", "1/3", "1/2"])

# four-signatures A..E and their inductions at positions 1..5
FOUR = {
    "A": ["0", "1/3", "1/3", "1/2", "1/3", "1/2", "1/3", "1/3"],
    "B": ["1/3", "0", "1/3", "1/2", "1/3", "1/3", "1/2", "1/2"],
    "C": ["1/3", "1/3", "1/2", "1/2", "0", "1/3", "2/3", "2/3"],
    "D": ["1/3", "1/3", "1/3", "1/3", "0", "0", "2/3", "2/3"],
    "E": ["1/3", "1/3", "1/3", "1/3", "0", "1/2", "1/3", "1/3"],
}
PARTICULAR = {
    "A": ["", "", "1/3", "1/3", "1/2", "0", "", "1/2", "1/3", "", "", "", "1/3", "", "", "", "", "", "1/3", ""],
    "B": ["1/3", "", "", "1/3", "1/2", "", "0", "", "1/3", "1/3", "", "", "", "1/2", "", "", "", "", "", "1/2"],
    "C": ["1/3", "1/3", "", "", "1/2", "0", "", "1/2", "", "1/3", "", "", "", "", "2/3", "2/3", "", "", "", ""],
    "D": ["1/3", "1/3", "1/3", "", "", "0", "0", "", "1/3", "", "2/3", "", "", "", "", "", "2/3", "", "", ""],
    "E": ["", "1/3", "1/3", "1/3", "", "", "0", "1/2", "", "1/3", "", "1/3", "", "", "", "", "", "1/3", "", ""],
}
FOUR_PARAM = {
    "A": ["0", "x", "y", "z", "x", "z", "y", "y"],
    "B": ["a", "0", "b", "c", "a", "b", "c", "c"],
    "C": ["1/3", "1/3", "1/2", "1/2", "0", "1/3", "2/3", "2/3"],
    "D": ["f", "g", "h", "f+g+h", "f+g", "g+h", "f+h", "f+h"],
    "E": ["2u+1", "u", "1/3", "u", "3u+1", "1/2", "1/3", "1/3"],
}
PARTICULAR_PARAM = {
    "A": ["", "", "x", "y", "z", "0", "", "z", "x", "", "", "", "y", "", "", "", "", "", "y", ""],
    "B": ["a", "", "", "b", "c", "", "0", "", "a", "b", "", "", "", "c", "", "", "", "", "", "c"],
    "C": ["1/3", "1/3", "", "", "1/2", "0", "", "1/2", "", "1/3", "", "", "", "", "2/3", "2/3", "", "", "", ""],
    "D": ["f", "g", "h", "", "", "f+g", "g+h", "", "f+g+h", "", "f+h", "", "", "", "", "", "f+h", "", "", ""],
}


def four(values):
    return Signature.from_row(4, CELLS4, values)


# ---------------------------------------------------------------------------
# cells


def test_cell_counts_for_small_n():
    assert [cell_count(n) for n in (4, 5)] == [8, 20]
    assert theta_count(5) == 5
    assert sigma_count(5) == 15
    assert len(all_cells(5)) == 20


def test_cell_count_formula_for_n6_gives_45():
    # n(n-1)(n^2-5n+12)/12 at n = 6
    assert cell_count(6) == 45 == len(all_cells(6))


@pytest.mark.parametrize(
    "n,a,b",
    [(4, "s14", "s23"), (4, "s12", "s34"), (5, "t1", "s2345"), (5, "s123", "s45"), (5, "s51", "s234")],
)
def test_alternate_notations_name_one_cell(n, a, b):
    assert parse_cell(a, n) == parse_cell(b, n)


def test_cell_index_handles_complements():
    assert cell_index(5, {0, 1, 2}) == cell_index(5, {3, 4})
    assert cell_index(5, {0}) == cell_index(5, {1, 2, 3, 4})
    assert cell_index(4, {0, 2}) is not None


def test_unknown_cell_name():
    with pytest.raises(ValueError):
        parse_cell("q12", 5)


# ---------------------------------------------------------------------------
# braiding


@pytest.mark.parametrize(
    "before,after",
    [
        (
            ["1/3", "1/3", "1/3", "1/3", "1/2", "0", "0", "1/2", "1/3", "1/3", "2/3",
             "1/3", "1/3", "1/2", "2/3", "2/3", "2/3", "1/3", "1/3", "1/2"],
            ["1/3", "1/3", "1/3", "1/3", "1/2", "2/3", "0", "1/3", "1/3", "1/3", "",
             "1/2", "", "1/2", "1/3", "", "0", "", "2/3", "1/2"],
        ),
        (
            ["1/2", "1/2", "1/2", "1/2", "1/2", "1/3", "1/5", "1/5", "1/3", "2/5", "3/5",
             "2/3", "3/5", "1/2", "1/2", "3/5", "2/3", "4/5", "2/3", "3/5"],
            ["1/2", "1/2", "1/2", "1/2", "1/2", "3/5", "1/5", "4/5", "1/3", "2/5", "",
             "1/5", "", "1/2", "3/5", "", "1/3", "", "3/5", "3/5"],
        ),
        (
            ["y", "z", "1/2", "x", "1/2", "y+z", "1/2", "1/2", "1/2", "1/2", "1/2",
             "x+z", "x+y+z", "x+y", "1/2", "1/2", "1/2", "x-z", "x-y-z", "x-y"],
            ["y", "1/2", "z", "x", "1/2", "1/2", "1/2", "x-z", "1/2", "1/2", "",
             "1/2", "", "x+y", "x+y+z", "", "y+z", "", "1/2", "x-y"],
        ),
    ],
    ids=["A", "B", "C-parametric"],
)
def test_braid_b32_examples(before, after):
    got = braid_signature(sig5(before), 2, forward=False)
    assert got.key() == sig5(after).key()
    undefined = {c for c, v in zip(CELLS5, after) if not v}
    assert undefined == {"s13", "s35", "s134", "s351"}


def test_braid_of_all_zero_signature():
    zero = Signature.from_mapping(5, {c: "0" for c in CELLS5})
    for k in range(1, 6):
        for fwd in (True, False):
            b = braid_signature(zero, k, fwd)
            assert all(v == Angle(0) for v in b.values if v is not None)
            assert b.defined_count() >= 16


def test_incomplete_pattern():
    assert sorted(all_cells(5)[i].name(ascii=True) for i in incomplete_pattern_cells(5, 3, 2)) == [
        "s13", "s134", "s35", "s351"
    ]


@settings(max_examples=25)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_braid_signature_agrees_with_matrices(seed):
    t = random_tuple(random.Random(seed))
    s = signature_of_tuple(t)
    for k in range(1, t.n + 1):
        formal = braid_signature(s, k, False)
        actual = signature_of_tuple(t.braid(k, False))
        assert not conflicts(formal, actual)
        assert merge_signatures(formal, actual)


# ---------------------------------------------------------------------------
# induction and reduction


@pytest.mark.parametrize("name,position", list(zip("ABCDE", range(1, 6))))
def test_induction_gives_the_particular_signatures(name, position):
    assert induct_signature(four(FOUR[name]), position).key() == sig5(PARTICULAR[name]).key()


@pytest.mark.parametrize("name,position", list(zip("ABCD", range(1, 5))))
def test_parametric_induction(name, position):
    got = induct_signature(four(FOUR_PARAM[name]), position)
    assert got.key() == sig5(PARTICULAR_PARAM[name]).key()


def test_induction_of_all_zero_signature():
    zero = four(["0"] * 8)
    p = induct_signature(zero, 2)
    assert p.defined_count() == 8
    assert all(v == Angle(0) for v in p.values if v is not None)


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=5))
def test_reduction_commutes_with_signatures(seed, k):
    t = random_tuple(random.Random(seed), n=5)
    big = signature_of_tuple(t)
    small = signature_of_tuple(reduce_tuple(t, k))
    assert reduce_signature(big, k).key() == small.key()
    induced = induct_signature(small, k)
    assert not conflicts(induced, big)


# ---------------------------------------------------------------------------
# merging


def test_constant_merge_of_the_particular_signatures_gives_f():
    acc = None
    for pos, name in enumerate("ABCDE", 1):
        part = induct_signature(four(FOUR[name]), pos)
        acc = part if acc is None else merge_signatures(acc, part)[0].signature
    assert acc.key() == F.key()
    assert acc.is_complete()


def test_parametric_merge_gives_f():
    parts = [induct_signature(four(FOUR_PARAM[n]), p) for p, n in enumerate("ABCDE", 1)]
    families = [parts[0]]
    for part in parts[1:]:
        out = {}
        for fam in families:
            for r in merge_signatures(fam, part):
                out[r.signature.key()] = r.signature
        families = list(out.values())
    assert [f.key() for f in families] == [F.key()]


def test_parametric_merge_with_the_stated_relations():
    rel = {"a": "-1/3", "b": "-1/3", "c": "-1/2", "x": "1/3", "y": "1/3", "z": "1/2",
           "f": "1/3", "h": "1/3", "g": "-1/3", "u": "1/3"}
    acc = None
    for pos, name in enumerate("ABCDE", 1):
        part = induct_signature(four(FOUR_PARAM[name]), pos)
        part = part.evaluate({k: Fraction(v) for k, v in rel.items() if k in part.params()})
        acc = part if acc is None else merge_signatures(acc, part)[0].signature
    assert acc.key() == F.key()


def test_direct_conflict_gives_no_merge():
    p = Signature.from_mapping(5, {"t1": "1/3"})
    q = Signature.from_mapping(5, {"t1": "1/2"})
    assert merge_signatures(p, q) == []


def test_merge_up_to_sign_mod_2():
    p = Signature.from_mapping(5, {"t1": "1/3", "s12": "x"})
    q = Signature.from_mapping(5, {"t1": "5/3", "s12": "1/4"})
    res = merge_signatures(p, q)
    assert len(res) == 1
    assert res[0].signature["s12"] == Angle(Fraction(1, 4))
    assert res[0].constrains(["x"])


def test_sign_branches_with_equal_signatures_collapse():
    # x = y and x = -y give the same signature up to sign, so one family survives
    p = Signature.from_mapping(5, {"t1": "x", "t2": "y"})
    q = Signature.from_mapping(5, {"t1": "y"})
    (res,) = merge_signatures(p, q, shared_params=True)
    assert res.signature["t1"] == res.signature["t2"]


def test_normal_form_is_idempotent_and_renames():
    s = Signature.from_mapping(5, {"t1": "q+1/3", "t2": "2q", "s12": "q+r"})
    n1 = normal_form(s)
    assert normal_form(n1).key() == n1.key()
    assert normal_form(s.rename({"q": "w", "r": "v"})).key() == n1.key()


# ---------------------------------------------------------------------------
# solver


def test_single_value():
    fams = solve_modular_system(ModularLinearSystem.of([({"x": 1}, Fraction(1, 3))]))
    assert [str(f.substitution()["x"]) for f in fams] == ["1/3"]


def test_halving_splits_into_two_families():
    fams = solve_modular_system(ModularLinearSystem.of([({"x": 2}, Fraction(1, 3))]))
    values = sorted(f.substitution()["x"].free for f in fams)
    assert values == [Fraction(1, 6), Fraction(7, 6)]


def test_two_equations_pin_both_variables():
    # 2x = 0 (mod 2) leaves x in {0, 1}, and y follows x
    system = ModularLinearSystem.of([({"x": 1, "y": 1}, 0), ({"x": 1, "y": -1}, 0)])
    fams = solve_modular_system(system)
    assert all(f.is_constant() for f in fams)
    got = {(f.substitution()["x"].free, f.substitution()["y"].free) for f in fams}
    assert got == {(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))}
    assert brute_force_solutions(system, 12) == got


def test_family_membership():
    (fam,) = solve_modular_system(ModularLinearSystem.of([({"x": 1, "y": -1}, Fraction(1, 2))]))
    assert fam.contains({"x": Fraction(3, 4), "y": Fraction(1, 4)})
    assert not fam.contains({"x": Fraction(3, 4), "y": Fraction(1, 3)})


def test_inconsistent_system():
    assert solve_modular_system(ModularLinearSystem.of([({"x": 2}, 0), ({"x": 1}, Fraction(1, 2)), ({"x": 4}, 1)])) == []


# ---------------------------------------------------------------------------
# reconstruction


def test_row_a_is_inconsistent():
    assert reconstruct_tuple(load_catalog().row(10, "A").signature()).verdict == "inconsistent"


def test_all_zero_signature_is_triangular():
    rec = reconstruct_tuple(Signature.from_mapping(5, {c: "0" for c in CELLS5}))
    assert rec.verdict == "triangular"
    assert rec.tuple is not None


def test_largest_row_is_unique_and_icosahedral():
    rec = reconstruct_tuple(load_catalog().row(9, "101").signature())
    assert rec.verdict == "unique"
    assert classify_subgroup(rec.tuple) == "icosahedral"
    assert not conflicts(signature_of_tuple(rec.tuple), load_catalog().row(9, "101").signature())


def test_parametric_signature_is_rejected():
    with pytest.raises(ValueError):
        reconstruct_tuple(Signature.from_mapping(5, {"t1": "x"}))


def test_signature_substitution_and_evaluation():
    s = Signature.from_mapping(4, {"t1": "x", "t2": "x+1/2"})
    assert s.params() == ("x",)
    t = s.substitute({"x": AffineAngle.const(Fraction(1, 3))})
    assert t["t2"] == Angle(Fraction(5, 6))
    assert s.evaluate({"x": Fraction(1, 3)}).key() == t.key()
