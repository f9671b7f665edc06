from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from twisted_zhu.fock import A, ID, OMEGA, THETA, TWISTED, VAC, VACUUM
from twisted_zhu.zhu import ZhuAlgebra, bottom_action, stabilization

ONE = Fraction(1)
ALG = {g: ZhuAlgebra(g, 6) for g in (ID, THETA)}


def test_untwisted_is_polynomial_in_a():
    alg = ALG[ID]
    assert alg.reps == [(2,) * k for k in range(7)]
    assert [d for _, d in alg.layer_dims()] == [1, 2, 3, 4, 5, 6, 7]


def test_theta_algebra_is_one_dimensional():
    alg = ALG[THETA]
    assert alg.reps == [()]
    assert alg.reduce(OMEGA) == {(): Fraction(1, 16)}
    assert alg.reduce(A) == {}


def test_reductions_in_untwisted():
    alg = ALG[ID]
    assert alg.reduce({(4,): ONE}) == {(2,): -ONE}
    # omega = (1/2) a_{-1}^2 1 is already a representative
    assert alg.reduce(OMEGA) == OMEGA


def test_products_of_representatives():
    alg = ALG[ID]
    assert alg.product(A, A) == {(2, 2): ONE}
    assert alg.product({(2, 2): ONE}, A) == {(2, 2, 2): ONE}


def test_stabilization():
    for g in (ID, THETA):
        stable, rows = stabilization(g, 5)
        assert stable and rows


def test_zero_cap():
    alg = ZhuAlgebra(THETA, 0)
    assert alg.reps == [()]
    assert alg.reduce(VAC) == VAC


def test_bottom_action():
    assert bottom_action(OMEGA, {(): ONE}, TWISTED) == {(): Fraction(1, 16)}
    assert bottom_action(A, {(): ONE}, VACUUM) == {}
    with pytest.raises(ValueError):
        bottom_action(OMEGA, {(1,): ONE}, TWISTED)


def test_product_table():
    reps, table = ALG[ID].product_table()
    assert len(reps) == 7
    assert all(sum(reps[i]) + sum(reps[j]) <= 12 for i, j, _ in table)


basis6 = VACUUM.basis(6)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(basis6), st.sampled_from(basis6), st.sampled_from([ID, THETA]))
def test_circ_rows_lie_in_O(u, v, g):
    alg = ALG[g]
    row = alg.circ({u: ONE}, {v: ONE})
    assume(alg.quotient.fits(row))
    assert alg.in_O(row)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(VACUUM.basis(12)), st.sampled_from([ID, THETA]))
def test_reduce_is_idempotent_and_lands_on_reps(u, g):
    alg = ALG[g]
    r = alg.reduce({u: ONE})
    assert alg.reduce(r) == r
    assert set(r) <= set(alg.reps)
    assert max((sum(s) for s in r), default=0) <= sum(u)
