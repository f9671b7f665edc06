"""
The fusion-rule bound: dim Hom_{A_{g1g2}(V)}(B (x)_{A_{g2}(V)} M2(0), M3(0))
with B = A_{g1g2,g2}(M1), from the truncated bimodule.

Truncation leaves the top layers of B under-constrained (relations that
would tie them down live above the cap), so the Hom space is measured on the
part of the tensor product of degree <= N - margin.  Functionals are still
solved for on the whole truncated space, then projected.
"""

from __future__ import annotations

from fractions import Fraction

from . import fock
from .fock import T
from .linalg import QuotientBasis, RowSpace
from .vec import add_into

MARGIN = 2


class TensorOverAlgebra:
    """B (x)_{A2} M2(0) at cap N, ambient = representatives of B times M2(0) basis."""

    def __init__(self, bim, M2):
        self.bim = bim
        self.M2 = M2
        self.bottom = M2.bottom()
        self.ambient = sorted(((x, w) for x in bim.reps for w in self.bottom),
                              key=lambda t: (fock.sort_key(t[0]), t[1]))
        self.space = QuotientBasis(self.ambient, lambda t: sum(t[0]), bim.cap, label="tensor")
        self.space.add_relations(self.balancing_rows())

    def balancing_rows(self):
        """(x.b) (x) w - x (x) (b.w) for representatives x, b within the cap."""
        bim, one = self.bim, Fraction(1)
        rows = []
        for x in bim.reps:
            for b in bim.right_alg.reps:
                if sum(x) + sum(b) > bim.cap:
                    continue
                xb = bim.act_right({x: one}, {b: one})
                for w in self.bottom:
                    row = {(y, w): c for y, c in xb.items()}
                    for w2, c in self.M2.o({b: one}, {w: one}).items():
                        add_into(row, {(x, w2): c}, -1)
                    rows.append(row)
        return [r for r in rows if r]

    @property
    def reps(self):
        return self.space.reps

    def reduce(self, t):
        return self.space.reduce(t)

    def left_act(self, a, t):
        """a . t for an algebra state a and a tensor vector t."""
        one = Fraction(1)
        out = {}
        for (x, w), c in t.items():
            ax = self.bim.act_left({a: one}, {x: one})
            add_into(out, {(y, w): cy for y, cy in ax.items()}, c)
        return self.reduce(out)


class HomSpace:
    """Left A_{g1g2}(V)-equivariant maps from the tensor product to M3(0)."""

    def __init__(self, tensor, M3, margin=MARGIN):
        self.tensor = tensor
        self.M3 = M3
        self.margin = margin
        self.bottom3 = M3.bottom()
        bim = tensor.bim
        self.reps = tensor.reps
        self.t_index = {t: i for i, t in enumerate(self.reps)}
        self.e_index = {e: i for i, e in enumerate(self.bottom3)}
        n3 = len(self.bottom3)
        self.nvars = len(self.reps) * n3
        self.var = lambda ti, ei: ti * n3 + ei
        rows = self.equivariance_rows()
        self.system = RowSpace(self.nvars)
        self.system.extend(rows, prefilter=False)
        self.rows = rows
        self.null_basis = self._null_basis()
        lo = (bim.N - margin) * T
        self.low_vars = {self.var(ti, ei) for ti, t in enumerate(self.reps) if sum(t[0]) <= lo
                         for ei in range(n3)}
        proj = RowSpace(self.nvars)
        for v in self.null_basis:
            proj.insert({k: c for k, c in v.items() if k in self.low_vars})
        self.dim = len(proj)
        self.full_dim = len(self.null_basis)

    def equivariance_rows(self):
        """f(a.t) - o_{M3}(a) f(t) = 0 for algebra reps a and tensor reps t within the cap."""
        tensor, one = self.tensor, Fraction(1)
        bim = tensor.bim
        rows = []
        for a in bim.left_alg.reps:
            for ti, t in enumerate(self.reps):
                if sum(a) + sum(t[0]) > bim.cap:
                    continue
                at = tensor.left_act(a, {t: one})
                for e, ei in self.e_index.items():
                    row = {}
                    for s, c in at.items():
                        add_into(row, {self.var(self.t_index[s], ei): c})
                    # o(a) f(t): f(t) = sum_e' F[t, e'] e'; pick the e-coefficient
                    for e2, ei2 in self.e_index.items():
                        c = self.M3.o({a: one}, {e2: one}).get(e)
                        if c:
                            add_into(row, {self.var(ti, ei2): -c})
                    if row:
                        rows.append(row)
        return rows

    def _null_basis(self):
        piv = self.system.rows
        out = []
        for f in range(self.nvars):
            if f in piv:
                continue
            v = {f: Fraction(1)}
            for p, row in piv.items():
                c = row.get(f)
                if c:
                    v[p] = -c
            out.append(v)
        return out

    def satisfies(self, f):
        """Does the coordinate vector f (var -> scalar) solve the equivariance system?"""
        for row in self.rows:
            total = sum((c * f.get(k, 0) for k, c in row.items()), Fraction(0))
            if total:
                return False
        return True

    def contains(self, f):
        """Is f in the span of the computed solutions?"""
        space = RowSpace(self.nvars)
        for v in self.null_basis:
            space.insert(v)
        return not space.reduce(f)


def pi_of_I(I, hom):
    """Coordinates of pi(I): x (x) w -> o_I(x) w on the tensor representatives."""
    one = Fraction(1)
    f = {}
    for ti, (x, w) in enumerate(hom.reps):
        for e, c in I.o({x: one}, {w: one}).items():
            f[hom.var(ti, hom.e_index[e])] = c
    return f


def pi_respects_balancing(I, tensor):
    """pi(I) vanishes on every balancing relation row."""
    one = Fraction(1)
    for row in tensor.balancing_rows():
        total = {}
        for (x, w), c in row.items():
            add_into(total, I.o({x: one}, {w: one}), c)
        if total:
            return False
    return True


def fusion_bound(bim, M2, M3, margin=MARGIN):
    tensor = TensorOverAlgebra(bim, M2)
    hom = HomSpace(tensor, M3, margin)
    return tensor, hom


def fusion_sequence(g1, g2, M1, M2, M3, caps=(2, 4, 6, 8), margin=MARGIN, intertwiner=None):
    """hom_dim per cap, with a stabilization flag and the explicit lower bound if known."""
    from .bimodule import Bimodule
    seq = []
    pi_info = []
    for N in caps:
        bim = Bimodule(g1, g2, M1, N)
        tensor, hom = fusion_bound(bim, M2, M3, margin)
        seq.append({"N": N, "hom_dim": hom.dim, "unprojected_dim": hom.full_dim,
                    "tensor_dim": len(tensor.reps), "bimodule_dim": len(bim.reps)})
        if intertwiner is not None:
            f = pi_of_I(intertwiner, hom)
            pi_info.append({
                "N": N, "nonzero": bool(f), "solves": hom.satisfies(f), "in_span": hom.contains(f),
                "balanced": pi_respects_balancing(intertwiner, tensor),
                "coordinates": [[hom.reps[k // len(hom.bottom3)][0], str(c)] for k, c in sorted(f.items())],
            })
    dims = [s["hom_dim"] for s in seq]
    stable = len(dims) >= 2 and dims[-1] == dims[-2]
    lower = None
    if intertwiner is not None:
        lower = 1 if all(p["nonzero"] and p["solves"] for p in pi_info) else 0
    return {
        "sequence": seq, "stabilized": stable, "value": dims[-1] if stable else None,
        "lower_bound": lower, "pi": pi_info,
        "gap": None if (lower is None or not stable) else dims[-1] - lower,
    }
