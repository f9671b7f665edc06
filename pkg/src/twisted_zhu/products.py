"""
Residue products.

Every product here has the shape

    prefactor * Res_z (1+z)^alpha / z^beta  Y_M(u, z) w  =  prefactor * sum_i C(alpha, i) u_{i-beta} w

and is evaluated by ``residue_product``.  The exponent tables of the twisted
Zhu algebra products and of the three bimodule products are kept as data in
``ALGEBRA_RULES`` and ``BIMODULE_RULES``; nothing else knows the formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import fock
from .fock import T, VACUUM, j_of, bigrade_state
from .scalar import binomial, phase
from .vec import add_into


def delta_r(r, T=T):
    """1 if r = 0 mod T, else 0."""
    if r < 0:
        raise ValueError("delta_r expects r >= 0")
    return 1 if r % T == 0 else 0


def delta_pair(j1, j2, T=T):
    if not (0 <= j1 < T and 0 <= j2 < T):
        raise ValueError("delta_pair: indices out of range")
    if j2 == 0:
        return 1
    return 1 if j1 + j2 >= T else 0


@dataclass(frozen=True)
class ResidueSpec:
    alpha: Fraction
    beta: Fraction
    prefactor: object = Fraction(1)

    @property
    def beta_units(self):
        b = self.beta * T
        assert b.denominator == 1
        return int(b)


def residue_product(spec, u, w, module):
    """prefactor * sum_{i>=0} C(alpha, i) u_{i-beta} w for basis states u, w."""
    beta = spec.beta_units
    top = fock.deg_units(w) + sum(u) - T   # largest mode index that can act non-trivially
    out = {}
    i = 0
    while i * T - beta <= top:
        c = binomial(spec.alpha, i)
        if c:
            add_into(out, module.mode(u, i * T - beta, w), c)
        i += 1
    pre = spec.prefactor
    if pre != 1 and out:
        out = {k: v * pre for k, v in out.items()}
    return out


def residue_product_vec(spec_of, u, w, module):
    """Bilinear extension; ``spec_of(state)`` gives the ResidueSpec (or None) per u-state."""
    out = {}
    for us, uc in u.items():
        spec = spec_of(us)
        if spec is None:
            continue
        for ws, wc in w.items():
            add_into(out, residue_product(spec, us, ws, module), uc * wc)
    return out


@dataclass(frozen=True)
class ProductRule:
    """One row of an exponent table.  Functions take (wt u, j1, j2) with T fixed."""
    alpha: Callable
    beta: Callable
    nonzero: Callable
    phase_exp: Callable = lambda j1, j2: 0   # prefactor = e^{-phase_exp * pi i / T}

    def spec(self, wt, j1, j2):
        if not self.nonzero(j1, j2):
            return None
        k = self.phase_exp(j1, j2)
        pre = phase(k, T, -1) if k else Fraction(1)
        return ResidueSpec(Fraction(self.alpha(wt, j1, j2)), Fraction(self.beta(wt, j1, j2)), pre)


def _f(n):
    return Fraction(n, T)


# u o_g v and u *_g v on V, with r the g-eigenvalue exponent of u (passed as j2, j1 = 0)
ALGEBRA_RULES = {
    "circ": ProductRule(
        alpha=lambda wt, j1, r: wt - 1 + delta_r(r) + _f(r),
        beta=lambda wt, j1, r: 1 + delta_r(r),
        nonzero=lambda j1, r: True),
    "star": ProductRule(
        alpha=lambda wt, j1, r: wt,
        beta=lambda wt, j1, r: 1,
        nonzero=lambda j1, r: r == 0),
}

# the three products on M^1 for u in V^{(j1, j2)}
BIMODULE_RULES = {
    "circ": ProductRule(
        alpha=lambda wt, j1, j2: wt - 1 + delta_r(j2) + _f(j2),
        beta=lambda wt, j1, j2: 1 + delta_pair(j1, j2) - _f(j1),
        nonzero=lambda j1, j2: True),
    "left": ProductRule(
        alpha=lambda wt, j1, j2: wt - 1 + delta_r(j2) + _f(j2),
        beta=lambda wt, j1, j2: 1 - _f(j1),
        nonzero=lambda j1, j2: (j1 + j2) % T == 0),
    "right": ProductRule(
        alpha=lambda wt, j1, j2: wt - 1,
        beta=lambda wt, j1, j2: 1 - _f(j1),
        nonzero=lambda j1, j2: j2 == 0,
        phase_exp=lambda j1, j2: j1),
}

# untwisted forms of the A(V)-bimodule products on a V-module
FZ_RULES = {
    "circ": ProductRule(alpha=lambda wt, j1, j2: wt, beta=lambda wt, j1, j2: 2,
                        nonzero=lambda j1, j2: True),
    "left": ProductRule(alpha=lambda wt, j1, j2: wt, beta=lambda wt, j1, j2: 1,
                        nonzero=lambda j1, j2: True),
    "right": ProductRule(alpha=lambda wt, j1, j2: wt - 1, beta=lambda wt, j1, j2: 1,
                         nonzero=lambda j1, j2: True),
}


class AlgebraProducts:
    """u o_g v and u *_g v on V for one automorphism g."""

    def __init__(self, g):
        self.g = g
        self._cache = {}

    def spec(self, kind, u):
        return ALGEBRA_RULES[kind].spec(fock.weight(u), 0, j_of(u, self.g))

    def product_states(self, kind, u, v):
        key = (kind, u, v)
        hit = self._cache.get(key)
        if hit is None:
            spec = self.spec(kind, u)
            hit = {} if spec is None else residue_product(spec, u, v, VACUUM)
            self._cache[key] = hit
        return hit

    def product(self, kind, u, v):
        out = {}
        for us, uc in u.items():
            for vs, vc in v.items():
                add_into(out, self.product_states(kind, us, vs), uc * vc)
        return out

    def circ(self, u, v):
        return self.product("circ", u, v)

    def star(self, u, v):
        return self.product("star", u, v)


class BimoduleProducts:
    """The three products of V on a g1-twisted module M1, for the pair (g1, g2)."""

    def __init__(self, g1, g2, module, rules=None):
        if module.twist != g1:
            raise ValueError("M1 must be %s-twisted, got %s" % (g1, module.twist))
        self.g1, self.g2 = g1, g2
        self.module = module
        self.rules = BIMODULE_RULES if rules is None else rules
        self._cache = {}

    def spec(self, kind, u):
        j1, j2 = bigrade_state(u, self.g1, self.g2)
        return self.rules[kind].spec(fock.weight(u), j1, j2)

    def product_states(self, kind, u, w):
        key = (kind, u, w)
        hit = self._cache.get(key)
        if hit is None:
            spec = self.spec(kind, u)
            hit = {} if spec is None else residue_product(spec, u, w, self.module)
            self._cache[key] = hit
        return hit

    def product(self, kind, u, w):
        out = {}
        for us, uc in u.items():
            for ws, wc in w.items():
                add_into(out, self.product_states(kind, us, ws), uc * wc)
        return out

    def circ(self, u, w1):
        return self.product("circ", u, w1)

    def left(self, u, w1):
        return self.product("left", u, w1)

    def right(self, w1, u):
        return self.product("right", u, w1)

    def degree_bound(self, kind, u, w_deg_units):
        """Upper bound (units) on the degree of every term of the product."""
        spec = self.spec(kind, u)
        if spec is None:
            return None
        return sum(u) + w_deg_units + spec.beta_units - T


def circ_g(u, v, g):
    return AlgebraProducts(g).circ(u, v)


def star_g(u, v, g):
    return AlgebraProducts(g).star(u, v)


def specialize_check(kind, N, g2=fock.THETA):
    """Coefficient-level comparison of the bimodule products with their known
    special cases, over all basis pairs within the cap (N is a weight).

    kind = "FZ": g1 = g2 = 1, M1 = V, all three products against the untwisted
    formulas.  kind = "DLM": M1 = V, g1 = 1, circ and the left product against
    o_{g2} and *_{g2}.  Returns (passed, first_difference_or_None, count).
    """
    cap = N * T
    if kind == "FZ":
        pairs = [("circ", "circ"), ("left", "left"), ("right", "right")]
        bim = BimoduleProducts(fock.ID, fock.ID, VACUUM)
        ref = BimoduleProducts(fock.ID, fock.ID, VACUUM, rules=FZ_RULES)
        ref_prod = lambda k, u, w: ref.product_states(k, u, w)
    elif kind == "DLM":
        pairs = [("circ", "circ"), ("left", "star")]
        bim = BimoduleProducts(fock.ID, g2, VACUUM)
        alg = AlgebraProducts(g2)
        ref_prod = lambda k, u, w: alg.product_states(k, u, w)
    else:
        raise ValueError("kind must be FZ or DLM")
    basis = VACUUM.basis(cap)
    count = 0
    for u in basis:
        for w in basis:
            if sum(u) + sum(w) > cap:
                continue
            for mine, theirs in pairs:
                a = bim.product_states(mine, u, w)
                b = ref_prod(theirs, u, w)
                count += 1
                if a != b:
                    return False, {"product": mine, "u": u, "w": w, "bimodule": a, "reference": b}, count
    return True, None, count
