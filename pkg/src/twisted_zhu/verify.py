"""
Verification sweeps shared by the CLI and the test-suite.

Each function returns a plain dict with at least ``check``, ``passed`` and
``instances``; failures carry a short residual string so reports stay small.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import fock
from .fock import T, VACUUM, TWISTED, VAC, OMEGA, j_of, module_for
from .intertwiner import (check_associativity, check_kills_relations, check_zero_mode_products,
                          composite_weight_units, evaluate_terms, s_i_image, straighten,
                          straighten_lhs, zero_weight_terms_ok)
from .scalar import binomial
from .vec import add_into, sub
from .zhu import ZhuAlgebra

ONE = Fraction(1)


def _result(name, instances, failures, **extra):
    out = {"check": name, "passed": not failures, "instances": instances,
           "failures": failures[:5]}
    out.update(extra)
    return out


# -- twisted Jacobi identity, commutator component

def commutator_sides(module, u, m, v, n, w):
    """[u_m, v_n] w and sum_i C(m, i) (u_i v)_{m+n-i} w (mode indices in units)."""
    lhs = sub(module.act({u: ONE}, m, module.mode(v, n, w)),
              module.act({v: ONE}, n, module.mode(u, m, w)))
    rhs = {}
    mf = Fraction(m, T)
    i = 0
    top = sum(u) + sum(v) - T          # u_i v = 0 beyond this
    while i * T <= top:
        c = binomial(mf, i)
        if c:
            uv = VACUUM.mode(u, i * T, v)
            if uv:
                add_into(rhs, module.act(uv, m + n - i * T, {w: ONE}), c)
        i += 1
    return lhs, rhs


def commutator_check(module, count=100, max_weight=6, seed=0, mode_range=3):
    """Seeded random triples (u, v, w) with weights <= max_weight."""
    rnd = random.Random(seed)
    vb = VACUUM.basis(max_weight * T)
    mb = module.basis(max_weight * T)
    failures = []
    nontrivial = 0
    for _ in range(count):
        u, v, w = rnd.choice(vb), rnd.choice(vb), rnd.choice(mb)
        m = rnd.randint(-mode_range, mode_range) * T + module.residue(u)
        n = rnd.randint(-mode_range, mode_range) * T + module.residue(v)
        lhs, rhs = commutator_sides(module, u, m, v, n, w)
        nontrivial += bool(lhs)
        if lhs != rhs:
            failures.append({"u": u, "m": str(Fraction(m, T)), "v": v, "n": str(Fraction(n, T)),
                             "w": w, "residual": fock.fmt_vec(sub(lhs, rhs), module.twisted)})
    return _result("commutator_formula[%s]" % module.kind, count, failures, nonzero_instances=nontrivial)


# -- bottom weight

def normal_ordered_L0(module, w):
    """L(0) from the normal-ordered oracle: sum_{k>0} a_{-k} a_k + c, with c the
    zeta-regularized vacuum energy of the mode set (1/2) sum_k k."""
    out = {}
    for k in sorted(set(w)):
        add_into(out, module.generator_mode(-k, module.generator_mode(k, {w: ONE})))
    add_into(out, {w: ONE}, vacuum_energy(module))
    return out


def _bernoulli2(x):
    return x * x - x + Fraction(1, 6)


def vacuum_energy(module):
    """(1/2) sum over positive modes k of k, zeta-regularized relative to the
    untwisted module: (1/2)(zeta(-1, r) - zeta(-1)) with r the mode offset,
    zeta(-1, r) = -B_2(r)/2."""
    r = Fraction(module.offset, T) or Fraction(1)
    return (-_bernoulli2(r) / 2 + _bernoulli2(Fraction(1)) / 2) / 2


def bottom_weight_check(max_deg=8):
    """h from the recursion vs. the oracle, plus the L(0) grading invariant."""
    failures = []
    states = TWISTED.basis(max_deg)
    for w in states:
        got = fock.L0(TWISTED, {w: ONE})
        want = {w: TWISTED.h + fock.deg(w)}
        oracle = normal_ordered_L0(TWISTED, w)
        if got != want or got != oracle:
            failures.append({"w": w, "recursion": fock.fmt_vec(got, True), "oracle": fock.fmt_vec(oracle, True)})
    return _result("bottom_weight", len(states), failures,
                   h=str(TWISTED.h), oracle_h=str(vacuum_energy(TWISTED)),
                   matches=TWISTED.h == vacuum_energy(TWISTED))


# -- Zhu algebra

def odd_states_vanish(N=6):
    """Odd states of weight <= N-1 lie in O_theta(V); retried at N+2 if not."""
    alg = ZhuAlgebra(fock.THETA, N)
    odd = [s for s in VACUUM.basis((N - 1) * T) if j_of(s, fock.THETA)]
    failures = []
    big = None
    for s in odd:
        if not alg.in_O({s: ONE}):
            big = big or ZhuAlgebra(fock.THETA, N + 2)
            if not big.in_O({s: ONE}):
                failures.append({"state": s, "residual": fock.fmt_vec(big.reduce({s: ONE}))})
    return _result("odd_states_in_O", len(odd), failures, cap=N)


def algebra_axioms(g, N=6):
    """Unit, centrality of omega and associativity in truncated A_g(V).

    Associativity and the unit law are checked on all basis triples whose
    weights sum to at most N, both as membership of the unreduced difference
    in O and as equality of reduced representatives computed step by step.
    """
    alg = ZhuAlgebra(g, N)
    big = None
    cap = alg.cap
    basis = alg.basis
    out = []

    def certify(vec):
        nonlocal big
        if alg.in_O(vec):
            return True
        big = big or ZhuAlgebra(g, N + 2)
        return big.in_O(vec)

    fails = []
    for x in basis:
        X = {x: ONE}
        for d in (sub(alg.star(VAC, X), X), sub(alg.star(X, VAC), X)):
            if not certify(d):
                fails.append({"x": x})
    out.append(_result("unit[%s]" % g, len(basis), fails, cap=N))

    fails = []
    count = 0
    for x in basis:
        if sum(x) + 2 * T > cap:
            break
        count += 1
        X = {x: ONE}
        if not certify(sub(alg.star(OMEGA, X), alg.star(X, OMEGA))):
            fails.append({"x": x})
    out.append(_result("omega_central[%s]" % g, count, fails, cap=N))

    fails = []
    count = 0
    for x in basis:
        for y in basis:
            if sum(x) + sum(y) > cap:
                break
            xy = alg.star({x: ONE}, {y: ONE})
            for z in basis:
                if sum(x) + sum(y) + sum(z) > cap:
                    break
                count += 1
                Z = {z: ONE}
                d = sub(alg.star(xy, Z), alg.star({x: ONE}, alg.star({y: ONE}, Z)))
                if not certify(d):
                    fails.append({"x": x, "y": y, "z": z})
    out.append(_result("associativity[%s]" % g, count, fails, cap=N))

    fails = []
    count = 0
    reps = alg.reps
    for x in reps:
        for y in reps:
            for z in reps:
                if sum(x) + sum(y) + sum(z) > cap:
                    continue
                count += 1
                X, Y, Z = {x: ONE}, {y: ONE}, {z: ONE}
                lhs = alg.product(alg.product(X, Y), Z)
                rhs = alg.product(X, alg.product(Y, Z))
                if lhs != rhs:
                    big = big or ZhuAlgebra(g, N + 2)
                    if big.product(big.product(X, Y), Z) != big.product(X, big.product(Y, Z)):
                        fails.append({"x": x, "y": y, "z": z})
    out.append(_result("associativity_on_representatives[%s]" % g, count, fails, cap=N))
    return out


def bottom_representation(g, N=6):
    """o(u) o(v) = o(u * v) on the bottom of the g-twisted module, and o kills O."""
    alg = ZhuAlgebra(g, N)
    M = module_for(g)
    cap = alg.cap
    fails = []
    count = 0
    for u in alg.basis:
        for v in alg.basis:
            if sum(u) + sum(v) > cap:
                break
            for w in M.bottom():
                count += 1
                W = {w: ONE}
                lhs = M.o({u: ONE}, M.o({v: ONE}, W))
                rhs = M.o(alg.star({u: ONE}, {v: ONE}), W)
                if lhs != rhs:
                    fails.append({"u": u, "v": v, "residual": fock.fmt_vec(sub(lhs, rhs), M.twisted)})
    res = [_result("zero_mode_product[%s]" % g, count, fails, cap=N)]
    fails = []
    rows = alg.quotient.relation_rows
    for row in rows:
        for w in M.bottom():
            r = M.o(row, {w: ONE})
            if r:
                fails.append({"row_pivot": max(row, key=fock.sort_key), "residual": fock.fmt_vec(r, M.twisted)})
    res.append(_result("zero_mode_kills_O[%s]" % g, len(rows), fails, cap=N))
    return res


# -- intertwiner of type (M; V M)

def zero_mode_identities(I, bim):
    """Both zero-mode product identities for every pair (u, w1) within the cap."""
    fails = []
    count = 0
    for u in VACUUM.basis(bim.cap - bim.cap % T):
        for w1 in bim.basis:
            if sum(u) + sum(w1) > bim.cap:
                break
            for w2 in I.M2.bottom():
                count += 1
                for side, resid in check_zero_mode_products(I, bim, u, w1, w2):
                    fails.append({"side": side, "u": u, "w1": w1, "residual": fock.fmt_vec(resid, I.M3.twisted)})
    return _result("zero_mode_bimodule_identities", count, fails, cap=str(bim.N))


def zero_mode_kills_bimodule_O(I, bim):
    rows = bim.O.relation_rows + bim.build_Oprime() + bim.build_Odoubleprime()
    bad = check_kills_relations(I, rows)
    fails = [{"residual": fock.fmt_vec(r, I.M3.twisted)} for _, _, r in bad]
    return _result("zero_mode_kills_bimodule_O", len(rows), fails, cap=str(bim.N))


def image_map_check(I, bim, expected_rank=1):
    info = s_i_image(I, bim)
    fails = []
    if info["rank"] != expected_rank:
        fails.append({"rank": info["rank"], "expected": expected_rank})
    fails += [{"kernel_violation": fock.fmt_vec(r, I.M3.twisted)} for _, _, r in info["kernel_violations"]]
    fails += [{"equivariance": side, "residual": fock.fmt_vec(r, I.M3.twisted)}
              for side, _, _, r in info["equivariance_violations"]]
    return _result("image_bimodule_map", len(bim.reps), fails, rank=info["rank"], expected_rank=expected_rank)


def associativity_sample(I, count=20, max_weight=3, seed=0):
    rnd = random.Random(seed)
    vb = VACUUM.basis(max_weight * T)
    mb = I.M2.basis(max_weight * T)
    fails = []
    coeffs = 0
    for _ in range(count):
        u, w1, w2 = rnd.choice(vb), rnd.choice(vb), rnd.choice(mb)
        ok, diff, c = check_associativity(I, u, w1, w2)
        coeffs += c
        if not ok:
            fails.append({"u": u, "w1": w1, "w2": w2, "A": diff["A"], "B": str(diff["B"])})
    return _result("intertwiner_associativity", count, fails, coefficients_compared=coeffs)


def straighten_sample(I, count=50, max_weight=4, seed=0):
    """Seeded straightening instances; half of them forced to weight zero."""
    rnd = random.Random(seed)
    vb = VACUUM.basis(max_weight * T)
    mb = I.M2.basis(max_weight * T)
    fails = []
    nonzero = zero_weight = 0
    for idx in range(count):
        u, w1, w2 = rnd.choice(vb), rnd.choice(vb), rnd.choice(mb)
        p = rnd.randint(-3, 3)
        n = rnd.randint(-4, 4) * T + I.M2.residue(w1)
        if idx % 2:
            # choose n so that the composite has weight zero
            q = p * T + (j_of(u, I.g1) + j_of(u, I.g2)) % T
            n = (sum(u) - q - T) + fock.deg_units(w1) - T
        terms = straighten(I, u, p, w1, n, w2)
        lhs = straighten_lhs(I, u, p, w1, n, w2)
        rhs = evaluate_terms(I, terms, w2)
        nonzero += bool(lhs)
        w0 = composite_weight_units(u, p, w1, n, I.g1, I.g2) == 0
        zero_weight += w0
        if lhs != rhs or (w0 and not zero_weight_terms_ok(terms)):
            fails.append({"u": u, "p": p, "w1": w1, "n": str(Fraction(n, T)), "w2": w2,
                          "residual": fock.fmt_vec(sub(lhs, rhs), I.M3.twisted)})
    return _result("straighten", count, fails, nonzero_instances=nonzero, weight_zero_instances=zero_weight)
