import random

import pytest
from hypothesis import given, settings, strategies as st

from eqslice.exact_linalg import matvec
from eqslice.spinc import (
    NotCharacteristic,
    SpincLattice,
    canonicalize,
    enumerate_spinc,
    is_characteristic,
    same_class,
)
from oracles import class_by_solving
from reference_data import APLUS_12A1105, CHAR_PARITY_12A1105, METABOLIZER_A1, SPINC_S, SPINC_S_IMAGE

Q = APLUS_12A1105


def test_is_characteristic_examples():
    diag = tuple(Q[i][i] for i in range(6))
    assert is_characteristic(diag, Q)
    assert is_characteristic(SPINC_S, Q)
    assert not is_characteristic((0,) * 6, Q)
    assert is_characteristic(CHAR_PARITY_12A1105, Q)


def test_is_characteristic_dimension():
    with pytest.raises(ValueError):
        is_characteristic((1, 1), Q)


def test_same_class_examples():
    shifted = tuple(a + 2 * b for a, b in zip(SPINC_S, matvec(Q, (1, 0, 0, 0, 0, 0))))
    assert same_class(SPINC_S, shifted, Q)
    assert same_class(SPINC_S, SPINC_S, Q)
    for v in METABOLIZER_A1:
        assert not same_class(SPINC_S_IMAGE, v, Q)
        assert not class_by_solving(SPINC_S_IMAGE, v, Q)


def test_same_class_rejects_non_characteristic():
    with pytest.raises(NotCharacteristic):
        same_class((0,) * 6, SPINC_S, Q)


def test_one_dimensional_canonicalization():
    q = ((5,),)
    assert canonicalize((1,), q) == canonicalize((11,), q) == canonicalize((-9,), q)
    assert canonicalize((1,), q) != canonicalize((3,), q)


@pytest.mark.parametrize("q, count", [(((5,),), 5), (Q, 289), (((1,),), 1)])
def test_enumerate_counts(q, count):
    space = enumerate_spinc(q)
    assert space.order == count == len(space.classes) == len(set(space.classes))
    assert space.order % 2 == 1


def test_enumerated_reps_are_canonical_and_characteristic():
    lat = SpincLattice(Q)
    for c in lat.classes():
        assert is_characteristic(c.rep, Q)
        assert lat.canonicalize(c.rep) == c


def test_negation_has_unique_fixed_class():
    lat = SpincLattice(Q)
    fixed = [c for c in lat.classes() if lat.negate(c) == c]
    assert len(fixed) == 1
    neg = {lat.negate(c) for c in lat.classes()}
    assert len(neg) == 289


def test_coset_stability_random_shifts():
    rng = random.Random(7)
    lat = SpincLattice(Q)
    for _ in range(200):
        u = tuple(p + 2 * rng.randint(-10, 10) for p in CHAR_PARITY_12A1105)
        k = [rng.randint(-20, 20) for _ in range(6)]
        assert lat.canonicalize(lat.shift(u, k)) == lat.canonicalize(u)


@st.composite
def pd_form_and_vectors(draw):
    n = draw(st.integers(1, 3))
    b = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n))
    q = [[sum(b[k][i] * b[k][j] for k in range(n)) + (i == j) for j in range(n)] for i in range(n)]
    par = [q[i][i] % 2 for i in range(n)]
    u = [p + 2 * draw(st.integers(-6, 6)) for p in par]
    v = [p + 2 * draw(st.integers(-6, 6)) for p in par]
    return q, u, v


@given(pd_form_and_vectors())
@settings(max_examples=200)
def test_canonicalize_agrees_with_same_class(data):
    q, u, v = data
    lat = SpincLattice(q)
    expected = class_by_solving(u, v, q)
    assert same_class(u, v, q) == expected
    assert (lat.canonicalize(u) == lat.canonicalize(v)) == expected


@given(pd_form_and_vectors())
@settings(max_examples=100)
def test_class_count_equals_determinant(data):
    q, _, _ = data
    space = enumerate_spinc(q)
    lat = SpincLattice(q)
    assert len(space.classes) == lat.order
    assert len({lat.canonicalize(c.rep) for c in space.classes}) == lat.order
