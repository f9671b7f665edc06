"""
Weight-truncated twisted Zhu algebras A_g(V) = V / O_g(V) for the free boson.

O_g(V) is infinite dimensional and its generators are not homogeneous, so at
cap N only generators whose whole support has weight <= N are kept.  A zero
after reduction is therefore a certificate of membership in O_g(V); a
non-zero remainder is only evidence, which is why checks retry at N + 2.
"""

from __future__ import annotations

from fractions import Fraction

from . import fock
from .fock import T, VACUUM, VAC, OMEGA, j_of
from .linalg import CapExceeded, QuotientBasis
from .products import AlgebraProducts, delta_r
from .vec import add_into, sub


class ZhuAlgebra:
    """Truncated A_g(V) at weight cap N."""

    def __init__(self, g, N):
        self.g = g
        self.N = N
        self.cap = N * T
        self.products = AlgebraProducts(g)
        self.basis = VACUUM.basis(self.cap)
        self.quotient = QuotientBasis(self.basis, fock.deg_units, self.cap, label="A_%s(V)" % g)
        self.quotient.add_relations(self.build_O_span())

    def __repr__(self):
        return "ZhuAlgebra(g=%s, N=%d)" % (self.g, self.N)

    def build_O_span(self):
        """All u o_g v fitting under the cap, plus (L(-1)+L(0))u for wt u <= N-1."""
        rows = []
        cap = self.cap
        for u in self.basis:
            top = sum(u) + T * delta_r(j_of(u, self.g))
            for v in self.basis:
                if top + sum(v) > cap:
                    break  # basis is sorted by weight
                rows.append(self.products.product_states("circ", u, v))
        for u in self.basis:
            if sum(u) > cap - T:
                break
            rows.append(add_into(fock.L_minus1(VACUUM, {u: Fraction(1)}), {u: fock.weight(u)}))
        return [r for r in rows if r]

    # -- quotient interface
    @property
    def reps(self):
        return self.quotient.reps

    def reduce(self, v):
        return self.quotient.reduce(v)

    def in_O(self, v):
        return self.quotient.in_span(v)

    def layer_dims(self):
        return [(Fraction(k, T), d) for k, d in self.quotient.layer_dims()]

    def product(self, x, y):
        """Reduced x *_g y; raises CapExceeded beyond the cap."""
        return self.reduce(self.products.star(x, y))

    def star(self, x, y):
        return self.products.star(x, y)

    def circ(self, x, y):
        return self.products.circ(x, y)

    def product_table(self):
        """Sparse structure constants on the representatives within the cap."""
        reps = self.reps
        table = []
        for i, x in enumerate(reps):
            for j, y in enumerate(reps):
                if sum(x) + sum(y) > self.cap:
                    continue
                prod = self.product({x: Fraction(1)}, {y: Fraction(1)})
                table.append((i, j, prod))
        return reps, table


def bottom_action(u, w2, module):
    """o_M(u) w2 for w2 in the bottom level of ``module``."""
    if any(fock.deg_units(s) for s in w2):
        raise ValueError("bottom_action: w2 is not in the bottom level")
    return module.o(u, w2)


def stabilization(g, N):
    """Per-layer dims at caps N and N+1, compared for k <= N-2 (weights)."""
    lo = ZhuAlgebra(g, N).quotient.layer_dims()
    hi = ZhuAlgebra(g, N + 1).quotient.layer_dims()
    hi_map = dict(hi)
    rows = []
    stable = True
    for k, d in lo:
        if k > (N - 2) * T:
            continue
        same = hi_map.get(k) == d
        stable &= same
        rows.append((Fraction(k, T), d, hi_map.get(k)))
    return stable, rows
