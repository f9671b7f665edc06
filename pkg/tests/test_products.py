from fractions import Fraction

import pytest

from oracles import a_residue
from twisted_zhu.fock import A, ID, OMEGA, THETA, TWISTED, VAC, VACUUM
from twisted_zhu.products import (ALGEBRA_RULES, BIMODULE_RULES, AlgebraProducts, BimoduleProducts,
                                  ResidueSpec, circ_g, delta_pair, delta_r, residue_product,
                                  specialize_check, star_g)
from twisted_zhu.scalar import CycScalar, binomial

ONE = Fraction(1)
BOTTOM = {(): ONE}


def test_deltas():
    assert delta_r(0) == 1 and delta_r(1) == 0 and delta_r(2) == 1
    assert delta_pair(0, 0) == 1 and delta_pair(1, 0) == 1
    assert delta_pair(0, 1) == 0 and delta_pair(1, 1) == 1
    with pytest.raises(ValueError):
        delta_r(-1)
    with pytest.raises(ValueError):
        delta_pair(2, 0)


def test_circ_theta_of_a_on_vacuum_is_a():
    # (1+z)^{1/2}/z: only the i = 0 term survives on the vacuum
    assert circ_g(A, VAC, THETA) == {(2,): ONE}


def test_algebra_products_of_a():
    assert star_g(A, A, ID) == {(2, 2): ONE}
    assert circ_g(A, A, ID) == {(4, 2): ONE, (2, 2): ONE}
    assert circ_g(A, A, THETA) == {(2, 2): ONE, (): Fraction(-1, 8)}
    assert star_g(A, A, THETA) == {}


def test_star_with_vacuum():
    for g in (ID, THETA):
        for u in VACUUM.basis(6):
            if AlgebraProducts(g).spec("star", u) is not None:
                assert star_g({u: ONE}, VAC, g) == {u: ONE} or u == ()


def test_star_omega_vacuum():
    # omega * 1 = omega_{-1} 1 + 2 omega_0 1 + omega_1 1 = omega
    assert star_g(OMEGA, VAC, ID) == OMEGA


def test_bimodule_products_theta_theta_on_bottom():
    P = BimoduleProducts(THETA, THETA, TWISTED)
    # circ: alpha = 1/2, beta = 3/2
    assert P.circ(A, BOTTOM) == a_residue(TWISTED, Fraction(1, 2), 3, BOTTOM)
    assert P.circ(A, BOTTOM) == {(3,): ONE, (1,): Fraction(1, 2)}
    # left: alpha = 1/2, beta = 1/2
    w = {(1,): ONE}
    assert P.left(A, w) == a_residue(TWISTED, Fraction(1, 2), 1, w)
    assert P.left(A, w) == {(1, 1): ONE, (): Fraction(1, 4)}
    # right needs j2 = 0
    assert P.right(w, A) == {}


def test_right_product_phase():
    P = BimoduleProducts(THETA, ID, TWISTED)
    got = P.right(BOTTOM, A)
    minus_i = CycScalar.zeta(2, 3)
    assert got == {(1,): minus_i}
    assert minus_i * minus_i == -1


def test_module_twist_must_match():
    with pytest.raises(ValueError):
        BimoduleProducts(THETA, ID, VACUUM)


def test_residue_product_vacuum_u():
    spec = ResidueSpec(Fraction(3), Fraction(1))
    for w in TWISTED.basis(4):
        assert residue_product(spec, (), w, TWISTED) == {w: ONE}


def test_rule_tables_zero_branches():
    assert BIMODULE_RULES["left"].spec(1, 1, 0) is None
    assert BIMODULE_RULES["left"].spec(1, 1, 1) is not None
    assert BIMODULE_RULES["right"].spec(1, 0, 1) is None
    assert ALGEBRA_RULES["star"].spec(1, 0, 1) is None


@pytest.mark.parametrize("kind,g2", [("FZ", THETA), ("DLM", THETA), ("DLM", ID)])
def test_specializations(kind, g2):
    ok, diff, count = specialize_check(kind, 5, g2=g2)
    assert ok, diff
    assert count > 100


def test_degree_bound_holds():
    for g1, g2, M in [(THETA, THETA, TWISTED), (ID, THETA, VACUUM), (THETA, ID, TWISTED)]:
        P = BimoduleProducts(g1, g2, M)
        for u in VACUUM.basis(6):
            for w in M.basis(4):
                for kind in ("circ", "left", "right"):
                    b = P.degree_bound(kind, u, sum(w))
                    for s in P.product_states(kind, u, w):
                        assert sum(s) <= b
