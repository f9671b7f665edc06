"""
The bimodule A_{g1 g2, g2}(M1) = M1 / (O' + O'') with its left A_{g1 g2}(V)
and right A_{g2}(V) actions, truncated at degree cap N.

O' is spanned by the circle products u o w1.  O'' has four families:
(u * v) . w1 - u . (v . w1),  w1 . (v * u) - (w1 . v) . u,  u' . w1 and
w1 . v' with u', v' in the (truncated) O of the left/right Zhu algebra.
Both O' and O = O' + O'' are kept, so whether O'' enlarges O' is measured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import fock
from .fock import T, VACUUM, VAC, j_of
from .linalg import CapExceeded, QuotientBasis
from .products import BimoduleProducts, ResidueSpec, residue_product
from .vec import add_into, sub
from .zhu import ZhuAlgebra

ALL_FAMILIES = ("left-assoc", "right-assoc", "left-ideal", "right-ideal")


def compose(g1, g2):
    """Product of two automorphisms in {id, theta}."""
    return fock.THETA if (g1 == fock.THETA) != (g2 == fock.THETA) else fock.ID


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    passed: int = 0
    cap: int = 0
    retried: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.instances == self.passed

    def as_dict(self):
        return {
            "check": self.name, "passed": self.ok, "instances": self.instances,
            "instances_passed": self.passed, "cap": self.cap, "retried_at_cap_plus_2": self.retried,
            "failures": self.failures[:5],
        }


class Bimodule:
    """Truncated A_{g1g2,g2}(M1) at degree cap N (a weight, possibly fractional)."""

    def __init__(self, g1, g2, M1, N, algebras=None):
        self.g1, self.g2 = g1, g2
        self.g3 = compose(g1, g2)
        self.M1 = M1
        self.N = Fraction(N)
        self.cap = int(self.N * T)
        self.products = BimoduleProducts(g1, g2, M1)
        algebras = algebras or {}
        wcap = int(self.N)
        self.left_alg = algebras.get(self.g3) or ZhuAlgebra(self.g3, wcap)
        self.right_alg = algebras.get(g2) or ZhuAlgebra(g2, wcap)
        self.basis = M1.basis(self.cap)
        self.vbasis = VACUUM.basis(self.cap - self.cap % T)
        label = "A_{%s,%s}(%s)" % (self.g3, g2, M1.kind)
        self.O1 = QuotientBasis(self.basis, fock.deg_units, self.cap, label=label + "/O'")
        self.O = QuotientBasis(self.basis, fock.deg_units, self.cap, label=label)
        rows1 = self.build_Oprime()
        self.O1.add_relations(rows1)
        self.O.add_relations(rows1)
        self.O.add_relations(self.build_Odoubleprime())

    def __repr__(self):
        return "Bimodule(g1=%s, g2=%s, M1=%s, N=%s)" % (self.g1, self.g2, self.M1.kind, self.N)

    # -- products
    def circ(self, u, w1):
        return self.products.circ(u, w1)

    def left(self, u, w1):
        return self.products.left(u, w1)

    def right(self, w1, u):
        return self.products.right(w1, u)

    def _fits(self, kind, u, w):
        b = self.products.degree_bound(kind, u, fock.deg_units(w))
        return b is not None and b <= self.cap

    # -- relation spans
    def build_Oprime(self):
        rows = []
        for u in self.vbasis:
            for w in self.basis:
                b = self.products.degree_bound("circ", u, fock.deg_units(w))
                if b > self.cap:
                    continue
                rows.append(self.products.product_states("circ", u, w))
        return [r for r in rows if r]

    def build_Odoubleprime(self, families=ALL_FAMILIES):
        rows = []
        cap = self.cap
        left_v = [u for u in self.vbasis if j_of(u, self.g3) == 0]
        right_v = [u for u in self.vbasis if j_of(u, self.g2) == 0]
        P = self.products
        A3, A2 = self.left_alg.products, self.right_alg.products
        one = Fraction(1)
        if "left-assoc" in families:
            for u in left_v:
                for v in left_v:
                    if sum(u) + sum(v) > cap:
                        break
                    uv = A3.product_states("star", u, v)
                    for w in self.basis:
                        if sum(u) + sum(v) + sum(w) > cap:
                            break
                        vw = P.product_states("left", v, w)
                        row = P.left(uv, {w: one})
                        add_into(row, P.left({u: one}, vw), -1)
                        rows.append(row)
        if "right-assoc" in families:
            for u in right_v:
                for v in right_v:
                    if sum(u) + sum(v) > cap:
                        break
                    vu = A2.product_states("star", v, u)
                    for w in self.basis:
                        if sum(u) + sum(v) + sum(w) > cap:
                            break
                        wv = P.product_states("right", v, w)
                        row = P.right({w: one}, vu)
                        add_into(row, P.right(wv, {u: one}), -1)
                        rows.append(row)
        if "left-ideal" in families:
            for r in self.left_alg.quotient.relation_rows:
                top = max(sum(s) for s in r)
                for w in self.basis:
                    if top + sum(w) > cap:
                        break
                    rows.append(P.left(r, {w: one}))
        if "right-ideal" in families:
            for r in self.right_alg.quotient.relation_rows:
                top = max(sum(s) for s in r)
                for w in self.basis:
                    if top + sum(w) > cap:
                        break
                    rows.append(P.right({w: one}, r))
        return [r for r in rows if r]

    # -- quotient interface
    @property
    def reps(self):
        return self.O.reps

    def reduce(self, x):
        return self.O.reduce(x)

    def in_O(self, x):
        return self.O.in_span(x)

    def in_Oprime(self, x):
        return self.O1.in_span(x)

    def act_left(self, u, x):
        return self.reduce(self.left(u, x))

    def act_right(self, x, u):
        return self.reduce(self.right(x, u))

    def layer_dims(self, which="O"):
        q = self.O if which == "O" else self.O1
        return [(Fraction(k, T), d) for k, d in q.layer_dims()]

    def enlargement(self):
        """Does O'' enlarge the O' span at this cap?  (rank O' , rank O)."""
        return self.O.rank > self.O1.rank, self.O1.rank, self.O.rank

    # -- closure instances, each a (name, key, vector, span) generator
    def closure_instances(self):
        """Yield (check, key, vector, 'O1' or 'O') for every instance within the cap."""
        P = self.products
        cap = self.cap
        one = Fraction(1)
        # shifted exponents stay in O'
        for u in self.vbasis:
            base = P.spec("circ", u)
            for w in self.basis:
                for m in range(4):
                    if sum(u) + sum(w) + base.beta_units + m * T - T > cap:
                        break
                    for n in range(m + 1):
                        spec = ResidueSpec(base.alpha + n, base.beta + m)
                        yield "shifted_exponents_in_Oprime", (u, w, m, n), residue_product(spec, u, w, self.M1), "O1"
        circ_rows = []
        for v in self.vbasis:
            for w in self.basis:
                b = P.degree_bound("circ", v, sum(w))
                if b <= cap:
                    circ_rows.append(((v, w), b, P.product_states("circ", v, w)))
        # u . O' and O' . u stay in O'
        for u in self.vbasis:
            left_ok = P.spec("left", u) is not None
            right_ok = P.spec("right", u) is not None
            for key, b, row in circ_rows:
                if b + sum(u) > cap:
                    continue
                if left_ok:
                    yield "left_product_preserves_Oprime", (u,) + key, P.left({u: one}, row), "O1"
                if right_ok:
                    yield "right_product_preserves_Oprime", (u,) + key, P.right(row, {u: one}), "O1"
        # (u . w) . v - u . (w . v) in O'
        left_v = [u for u in self.vbasis if P.spec("left", u) is not None]
        right_v = [v for v in self.vbasis if P.spec("right", v) is not None]
        for u in left_v:
            for v in right_v:
                for w in self.basis:
                    if sum(u) + sum(v) + sum(w) > cap:
                        break
                    a = P.right(P.product_states("left", u, w), {v: one})
                    b = P.left({u: one}, P.product_states("right", v, w))
                    yield "mixed_associativity_in_Oprime", (u, v, w), sub(a, b), "O1"
        # V . O and O . V stay in O
        rows = self.O.relation_rows
        for r in rows:
            top = max(sum(s) for s in r)
            for a in self.vbasis:
                if top + sum(a) > cap:
                    break
                if P.spec("left", a) is not None:
                    yield "algebra_action_preserves_O_left", (a, min(r, key=fock.sort_key)), P.left({a: one}, r), "O"
                if P.spec("right", a) is not None:
                    yield "algebra_action_preserves_O_right", (a, min(r, key=fock.sort_key)), P.right(r, {a: one}), "O"

    def span(self, which):
        return self.O1 if which == "O1" else self.O


def _retry_check(instances, bim, rebuild, name_filter=None):
    """Run instances; failures are re-tested in a bimodule built at cap + 2."""
    results = {}
    failed = []
    for name, key, vec, which in instances:
        res = results.setdefault(name, CheckResult(name, cap=bim.N))
        res.instances += 1
        q = bim.span(which)
        if q.fits(vec) and q.in_span(vec):
            res.passed += 1
        else:
            failed.append((name, key, vec, which))
    if failed:
        big = rebuild()
        for name, key, vec, which in failed:
            res = results[name]
            res.retried += 1
            res.cap = big.N
            q = big.span(which)
            if q.fits(vec) and q.in_span(vec):
                res.passed += 1
            else:
                resid = q.reduce(vec) if q.fits(vec) else vec
                res.failures.append({"instance": repr(key), "residual": fock.fmt_vec(resid, bim.M1.twisted)})
    return list(results.values())


def closure_checks(bim):
    """Closure properties of O' and O on every instance within the cap; failures retried at N+2."""
    rebuild = lambda: Bimodule(bim.g1, bim.g2, bim.M1, bim.N + 2)
    return _retry_check(bim.closure_instances(), bim, rebuild)


def generator_checks(bim):
    """Every O' and O'' generator reduces to 0 (definitional sanity)."""
    res = CheckResult("generators_in_O", cap=bim.N)
    for row in bim.build_Oprime() + bim.build_Odoubleprime():
        res.instances += 1
        if bim.in_O(row):
            res.passed += 1
        else:
            res.failures.append({"residual": fock.fmt_vec(bim.reduce(row), bim.M1.twisted)})
    return res


def bimodule_axiom_checks(bim, big=None):
    """Unit, left/right associativity and compatibility on representative triples.

    Each instance compares fully reduced representatives computed through the
    quotient actions; instances that differ at cap N are recomputed at N + 2.
    """
    one = Fraction(1)
    cap = bim.cap
    A3, A2 = bim.left_alg, bim.right_alg
    lreps, rreps, mreps = A3.reps, A2.reps, bim.reps
    out = {n: CheckResult(n, cap=bim.N) for n in ("unit", "left_assoc", "right_assoc", "compat")}
    pending = []

    def run(b, name, args):
        x, y, m = args
        L, R = b.act_left, b.act_right
        X = {x: one} if x is not None else None
        Y = {y: one} if y is not None else None
        M = {m: one}
        if name == "unit":
            return sub(L(VAC, M), M), sub(R(M, VAC), M)
        if name == "left_assoc":
            return (sub(L(b.left_alg.reduce(b.left_alg.star(X, Y)), M), L(X, L(Y, M))),)
        if name == "right_assoc":
            return (sub(R(M, b.right_alg.reduce(b.right_alg.star(X, Y))), R(R(M, X), Y)),)
        return (sub(R(L(X, M), Y), L(X, R(M, Y))),)

    jobs = []
    for m in mreps:
        jobs.append(("unit", (None, None, m)))
        for x in lreps:
            for y in lreps:
                if sum(x) + sum(y) + sum(m) <= cap:
                    jobs.append(("left_assoc", (x, y, m)))
        for x in rreps:
            for y in rreps:
                if sum(x) + sum(y) + sum(m) <= cap:
                    jobs.append(("right_assoc", (x, y, m)))
        for x in lreps:
            for y in rreps:
                if sum(x) + sum(y) + sum(m) <= cap:
                    jobs.append(("compat", (x, y, m)))
    for name, args in jobs:
        res = out[name]
        res.instances += 1
        if all(not r for r in run(bim, name, args)):
            res.passed += 1
        else:
            pending.append((name, args))
    if pending:
        big = big or Bimodule(bim.g1, bim.g2, bim.M1, bim.N + 2)
        for name, args in pending:
            res = out[name]
            res.retried += 1
            res.cap = big.N
            resid = run(big, name, args)
            if all(not r for r in resid):
                res.passed += 1
            else:
                res.failures.append({"instance": repr(args),
                                     "residual": [fock.fmt_vec(r, bim.M1.twisted) for r in resid]})
    return list(out.values())
