"""
Intertwining operators of type (M; V M), realized by the module vertex
operator Y_M itself, with the checks that tie o_I to the bimodule.

Mode indices are integers in units of 1/T, like everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fock
from .fock import T, VACUUM, j_of
from .scalar import binomial
from .vec import add_into, scale, sub


def _ceil_div(a, b):
    return -((-a) // b)


@dataclass(frozen=True)
class IntertwinerHandle:
    """I(w1, z) w2 = sum_n w1(n) w2 z^{-n-1}, M1 -> Hom(M2, M3)."""
    M1: object
    M2: object
    M3: object
    g1: str
    g2: str
    coeff: Fraction = Fraction(1)

    @property
    def shift(self):
        """h1 + h2 - h3; I already has modes in (1/T)Z when this is 0."""
        return self.M1.h + self.M2.h - self.M3.h

    def mode(self, w1, n, w2):
        """w1(n) w2 for basis states; n in units."""
        out = self.M2.mode(w1, n, w2)
        if self.coeff != 1 and out:
            out = scale(out, self.coeff)
        return out

    def act(self, x, n, y):
        out = {}
        for xs, xc in x.items():
            for ys, yc in y.items():
                add_into(out, self.mode(xs, n, ys), xc * yc)
        return out

    def o(self, x, w2):
        """o_I(x) w2 = sum over homogeneous parts x_s(deg x_s - 1) w2."""
        out = {}
        for xs, xc in x.items():
            n = fock.deg_units(xs) - T
            for ys, yc in w2.items():
                add_into(out, self.mode(xs, n, ys), xc * yc)
        return out

    def scaled(self, c):
        return IntertwinerHandle(self.M1, self.M2, self.M3, self.g1, self.g2, self.coeff * c)


def module_as_intertwiner(M):
    """Y_M as an intertwiner of type (M; V M); g1 = 1, g2 = twist of M."""
    return IntertwinerHandle(VACUUM, M, M, fock.ID, M.twist)


def _bigrade(I, u):
    return j_of(u, I.g1), j_of(u, I.g2)


def associativity_k(I, u, w2):
    """Smallest integer k with z^{k + j2/T} Y_{M2}(u, z) w2 free of negative powers."""
    _, j2 = _bigrade(I, u)
    top = sum(u) + fock.deg_units(w2) - T   # largest index m with u_m w2 possibly nonzero
    return _ceil_div(top + T - j2, T)


def check_associativity(I, u, w1, w2, a_range=range(-3, 4), k=None):
    """Compare z0^A z2^B coefficients of

        (z0+z2)^K Y_{M3}(u, z0+z2) I(w1, z2) w2  and  (z2+z0)^K I(Y_{M1}(u, z0) w1, z2) w2

    with K = k + j2/T, for A in ``a_range`` and every B where either side can be nonzero.
    Returns (ok, first_difference_or_None, coefficients_compared).
    """
    _, j2 = _bigrade(I, u)
    if k is None:
        k = associativity_k(I, u, w2)
    Ku = k * T + j2            # K in units
    K = Fraction(Ku, T)
    dw1, dw2, wu = fock.deg_units(w1), fock.deg_units(w2), sum(u)
    s_max = dw1 + dw2 - T      # largest s with w1(s) w2 possibly nonzero
    t_max = wu + dw1 - T       # largest t with u_t w1 possibly nonzero
    compared = 0
    for A in a_range:
        Au = A * T
        # B = K - j - 1 - s  ranges down from K - 1 + s_max-ish; scan a generous window
        b_hi = Ku + 4 * T
        b_lo = -s_max - T - 4 * T - (t_max + T) - abs(Au)
        for Bu in range(b_lo, b_hi + 1):
            lhs = {}
            l = 0
            while True:
                s = l * T - Bu - T
                if s > s_max:
                    break
                inner = I.mode(w1, s, w2)
                if inner:
                    m = Ku - T - Au - l * T
                    c = binomial(Fraction(Au + l * T, T), l)
                    if c:
                        add_into(lhs, I.M3.act({u: Fraction(1)}, m, inner), c)
                l += 1
            rhs = {}
            j = 0
            while True:
                t = j * T - Au - T
                if t > t_max:
                    break
                x = I.M1.mode(u, t, w1)
                if x:
                    s = Ku - j * T - Bu - T
                    c = binomial(K, j)
                    if c:
                        add_into(rhs, I.act(x, s, {w2: Fraction(1)}), c)
                j += 1
            compared += 1
            if lhs != rhs:
                return False, {"A": A, "B": Fraction(Bu, T), "lhs": lhs, "rhs": rhs}, compared
    return True, None, compared


def check_zero_mode_products(I, bim, u, w1, w2):
    """o_I(u . w1) w2 = o_{M3}(u) o_I(w1) w2 and o_I(w1 . u) w2 = o_I(w1) o_{M2}(u) w2.

    ``bim`` supplies the left/right products on M1.  Returns a list of
    (side, residual) for every failing identity (empty means pass).
    """
    if fock.deg_units(w2):
        raise ValueError("w2 must lie in the bottom level")
    one = Fraction(1)
    U, W1, W2 = {u: one}, {w1: one}, {w2: one}
    bad = []
    lhs = I.o(bim.left(U, W1), W2)
    rhs = I.M3.o(U, I.o(W1, W2))
    if lhs != rhs:
        bad.append(("left", sub(lhs, rhs)))
    lhs = I.o(bim.right(W1, U), W2)
    rhs = I.o(W1, I.M2.o(U, W2))
    if lhs != rhs:
        bad.append(("right", sub(lhs, rhs)))
    return bad


def check_kills_relations(I, rows, bottom=None):
    """o_I(row) w2 = 0 for every row and bottom w2; returns the failing rows."""
    bottom = bottom if bottom is not None else I.M2.bottom()
    bad = []
    for row in rows:
        for w2 in bottom:
            r = I.o(row, {w2: Fraction(1)})
            if r:
                bad.append((row, w2, r))
    return bad


def straighten(I, u, p, w1, n, w2):
    """Rewrite u_{p + [j1+j2]/T} w1(n) w2 as sum_i x_i(n_i) w2.

    Returns a list of (x_i, n_i) with x_i a vector of M1 and n_i in units,
    one entry per distinct n_i.  The truncation integers k (associativity)
    and k' (lowest power of I(w1, z2) w2) are the smallest that the degrees
    of these particular arguments allow.
    """
    j1, j2 = _bigrade(I, u)
    r = (j1 + j2) % T
    k = associativity_k(I, u, w2)
    s_max = fock.deg_units(w1) + fock.deg_units(w2) - T
    # z2^{k'+n} I(w1, z2) w2 needs lowest power >= -1 + 1/T
    kp = max(0, _ceil_div(s_max - n + 1, T))
    alpha_u = p * T - k * T + r - j2            # p - k + [j1+j2]/T - j2/T, units
    alpha = Fraction(alpha_u, T)
    kk = Fraction(k * T + j2, T)
    t_max = sum(u) + fock.deg_units(w1) - T
    groups = {}
    for i in range(kp):
        ci = binomial(alpha, i)
        if not ci:
            continue
        j = 0
        while True:
            t = alpha_u - i * T + j * T
            if t > t_max:
                break
            cj = binomial(kk, j)
            if cj:
                x = I.M1.mode(u, t, w1)
                if x:
                    s = i * T + n + k * T + j2 - j * T
                    add_into(groups.setdefault(s, {}), x, ci * cj)
            j += 1
    return [(x, s) for s, x in sorted(groups.items()) if x]


def straighten_lhs(I, u, p, w1, n, w2):
    j1, j2 = _bigrade(I, u)
    q = p * T + (j1 + j2) % T
    return I.M3.act({u: Fraction(1)}, q, I.mode(w1, n, w2))


def evaluate_terms(I, terms, w2):
    out = {}
    for x, s in terms:
        add_into(out, I.act(x, s, {w2: Fraction(1)}))
    return out


def composite_weight_units(u, p, w1, n, g1, g2):
    """Weight of u_{p+[j1+j2]/T} w1(n) as an operator, in units."""
    q = p * T + (j_of(u, g1) + j_of(u, g2)) % T
    return (sum(u) - q - T) + (fock.deg_units(w1) - n - T)


def zero_weight_terms_ok(terms):
    """Every x(n) in a weight-zero straightening is o_I(x): n = deg x - 1 on each state."""
    return all(fock.deg_units(s) - T == n for x, n in terms for s in x)


def s_i_image(I, bim):
    """Induced map A_{g1g2,g2}(M1) -> S_I.

    Returns a dict with the rank of w1 -> o_I(w1)|_{M2(0)} over the ambient
    basis, the list of O rows it fails to kill, and the failures of the two
    equivariance identities on representatives.
    """
    bottom2 = I.M2.bottom()
    bottom3 = I.M3.bottom()
    idx3 = {s: i for i, s in enumerate(bottom3)}
    from .linalg import RowSpace
    space = RowSpace(len(bottom2) * len(bottom3))
    for w1 in bim.basis:
        row = {}
        for a, w2 in enumerate(bottom2):
            for s, c in I.o({w1: Fraction(1)}, {w2: Fraction(1)}).items():
                row[a * len(bottom3) + idx3[s]] = c
        if row:
            space.insert(row)
    kernel_bad = check_kills_relations(I, bim.O.relation_rows, bottom2)
    equiv_bad = []
    one = Fraction(1)
    for x in bim.reps:
        for w2 in bottom2:
            W2 = {w2: one}
            for a in bim.left_alg.reps:
                if sum(a) + sum(x) > bim.cap:
                    continue
                lhs = I.o(bim.act_left({a: one}, {x: one}), W2)
                rhs = I.M3.o({a: one}, I.o({x: one}, W2))
                if lhs != rhs:
                    equiv_bad.append(("left", a, x, sub(lhs, rhs)))
            for b in bim.right_alg.reps:
                if sum(b) + sum(x) > bim.cap:
                    continue
                lhs = I.o(bim.act_right({x: one}, {b: one}), W2)
                rhs = I.o({x: one}, I.M2.o({b: one}, W2))
                if lhs != rhs:
                    equiv_bad.append(("right", b, x, sub(lhs, rhs)))
    return {"rank": len(space), "kernel_violations": kernel_bad, "equivariance_violations": equiv_bad}
