import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finorbits.arith import CycloNumber
from finorbits.monodromy import (
    Mat2,
    MonodromyTuple,
    SymmetryOp,
    algebra_dimension,
    apply_symmetry,
    are_conjugate,
    braid_tuple,
    conjugator,
    induct_tuple,
    is_triangular,
    reduce_tuple,
    shares_eigenvector,
    verify_tuple,
)
from finorbits.orbits import constructors as C
from finorbits.signatures import signature_of_tuple

from helpers import diagonal_tuple, random_tuple

seeds = st.integers(min_value=0, max_value=2**32 - 1)
I = Mat2.identity()


def test_matrix_basics():
    m = Mat2.of([[2, 1], [1, 1]])
    assert m.det() == 1
    assert m * m.inv() == I
    assert m.adjugate() == m.inv()
    assert (m**3) * (m**-3) == I
    assert m.trace() == 3
    assert Mat2.diag(CycloNumber.zeta(5)).det() == 1
    assert (-I).is_scalar() and not m.is_scalar()


def test_verify_tuple_reports_violations():
    assert verify_tuple(C.tuple_f()) is None
    bad_det = MonodromyTuple((Mat2.of([[2, 0], [0, 1]]), Mat2.of([[1, 0], [0, 2]])))
    assert verify_tuple(bad_det).kind == "determinant"
    m = Mat2.of([[1, 1], [0, 1]])
    assert verify_tuple(MonodromyTuple((m, m))).kind == "product"


def test_labels_must_be_a_permutation():
    with pytest.raises(ValueError):
        MonodromyTuple((I, I), (1, 1))


def test_known_tuples_are_valid():
    big = C.three_letter_big(Fraction(1, 5), Fraction(1, 3), Fraction(1, 4))
    for t in (C.tuple_f(), C.no_letter_192(), C.no_letter_105(2), big):
        assert verify_tuple(t) is None
        assert not is_triangular(t)


@settings(max_examples=30)
@given(seeds)
def test_braid_moves_invert_each_other(seed):
    t = random_tuple(random.Random(seed))
    for k in range(1, t.n + 1):
        assert braid_tuple(braid_tuple(t, k), k, False) == t
        assert braid_tuple(braid_tuple(t, k, False), k) == t


@settings(max_examples=30)
@given(seeds)
def test_braids_preserve_product_and_conjugacy_class(seed):
    t = random_tuple(random.Random(seed))
    k = random.Random(seed).randint(1, t.n)
    u = braid_tuple(t, k)
    assert verify_tuple(u) is None
    # the moved pair keeps the trace of its product
    p, q = (k - 1) % t.n, k % t.n
    assert (u.mats[p] * u.mats[q]).trace() == (t.mats[p] * t.mats[q]).trace()
    assert sorted(u.labels) == sorted(t.labels)


def test_far_commutation():
    t = C.no_letter_192()
    assert braid_tuple(braid_tuple(t, 1), 3) == braid_tuple(braid_tuple(t, 3), 1)


def test_pair_test_and_algebra_dimension():
    u = Mat2.of([[1, 1], [0, 1]])
    l = Mat2.of([[1, 0], [1, 1]])
    assert shares_eigenvector(u, u.inv())
    assert not shares_eigenvector(u, l)
    assert algebra_dimension([u]) == 2
    assert algebra_dimension([u, l]) == 4
    assert algebra_dimension([I, -I]) == 1


@settings(max_examples=10)
@given(seeds, st.sampled_from([4, 5]))
def test_diagonal_tuples_are_triangular(seed, n):
    t = diagonal_tuple(random.Random(seed), n)
    assert verify_tuple(t) is None
    assert is_triangular(t)


@settings(max_examples=25)
@given(seeds)
def test_conjugator_recovers_the_conjugation(seed):
    r = random.Random(seed)
    t = random_tuple(r)
    g = Mat2.of([[1, r.randint(-3, 3)], [0, 1]]) * Mat2.of([[1, 0], [r.randint(-3, 3), 1]])
    s = t.conj(g)
    h = conjugator(t, s)
    assert h is not None
    assert t.conj(h) == s
    assert are_conjugate(s, t)


def test_non_conjugate_tuples():
    assert not are_conjugate(C.tuple_f(), C.no_letter_192())
    a = C.three_letter_big(Fraction(1, 5), Fraction(1, 3), Fraction(1, 4))
    b = C.three_letter_big(Fraction(2, 5), Fraction(1, 3), Fraction(1, 4))
    assert not are_conjugate(a, b)


def test_reduce_and_induct():
    t = C.tuple_f()
    r = reduce_tuple(t, 2)
    assert r.n == 4 and verify_tuple(r) is None
    assert r.mats[1] == t.mats[1] * t.mats[2]
    w = reduce_tuple(t, 5)  # wraps: (M2, M3, M4, M5 M1)
    assert w.mats == t.mats[1:4] + (t.mats[4] * t.mats[0],)
    assert verify_tuple(w) is None
    back = induct_tuple(r, 2, t.mats[1])
    assert back.mats == t.mats
    assert back.labels == t.labels


@pytest.mark.parametrize(
    "op",
    [SymmetryOp("cyclic-shift"), SymmetryOp("negate-pair", 1, 3), SymmetryOp("invert-reverse")],
)
def test_symmetries_keep_tuples_valid(op):
    t = C.tuple_f()
    u = apply_symmetry(t, op)
    assert verify_tuple(u) is None
    assert not is_triangular(u)


def test_symmetry_validation():
    with pytest.raises(ValueError):
        SymmetryOp("mirror")
    with pytest.raises(ValueError):
        SymmetryOp("negate-pair", 2, 2)


def test_signature_of_tuple_is_conjugation_invariant():
    t = C.tuple_f()
    g = Mat2.of([[2, 1], [1, 1]])
    assert signature_of_tuple(t.conj(g)).key() == signature_of_tuple(t).key()
