"""
The rank-one free boson V = M(1) with the involution theta: a -> -a (T = 2),
its vacuum module and its theta-twisted Fock module M(1)(theta).

Basis states of either module are PBW monomials a_{-r_1} ... a_{-r_k} |bottom>
with r_1 >= ... >= r_k > 0, stored as descending tuples of integers counted
in units of 1/T.  An untwisted state has every part divisible by T, a twisted
one has every part congruent to T/2 mod T; the empty tuple is the vacuum
(resp. the twisted bottom vector).  V itself *is* the vacuum module, so the
same tuples index V.

Modes of a general state u on a module are produced by structural recursion
on the PBW length of u.  Writing u = a_{-n} v and taking residues of the
twisted Jacobi identity with z_0^{-n} z_1^{m} (m the mode offset of a on the
module, 0 or 1/2) gives

    (a_{-n} v)_q = sum_i C(n+i-1, i) a_{m-n-i} v_{q-m+i}
                 - (-1)^n sum_i C(n+i-1, i) v_{q-m-n-i} a_{m+i}
                 - sum_{i>=1} C(m, i) (a_{-n+i} v)_{q-i}

where a_{-n+i} v in the last sum is computed inside V.  Every term has strictly
smaller weight in the V slot, and every infinite sum is cut off exactly where
the degree of the argument forces the terms to vanish.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalar import binomial
from .vec import add_into, add_term

T = 2
HALF = T // 2  # mode offset of the generator on the twisted module, in units

ID = "id"
THETA = "theta"
TWISTS = (ID, THETA)


class ParityError(ValueError):
    """Raised when a generator mode index does not fit the module's twist."""


def insert_part(state, part):
    """Insert ``part`` into a descending tuple."""
    for idx, p in enumerate(state):
        if part >= p:
            return state[:idx] + (part,) + state[idx:]
    return state + (part,)


def remove_part(state, part):
    idx = state.index(part)
    return state[:idx] + state[idx + 1:]


def deg_units(state):
    """Degree above the bottom of the module, in units of 1/T."""
    return sum(state)


def weight(state):
    """Weight of a V-state (also its degree in the vacuum module)."""
    return Fraction(sum(state), T)


def deg(state):
    return Fraction(sum(state), T)


def wt_units(state):
    return sum(state)


def parity(state):
    return len(state) % 2


def sort_key(state):
    """Deterministic basis order: weight first, then lexicographic on parts."""
    return (sum(state), state)


@lru_cache(maxsize=None)
def _partitions(total, max_part, allowed_residue):
    """Descending tuples with parts <= max_part, each part = allowed_residue mod T,
    summing to ``total`` (all in units)."""
    if total == 0:
        return ((),)
    out = []
    start = min(total, max_part)
    for p in range(start, 0, -1):
        if p % T != allowed_residue:
            continue
        for rest in _partitions(total - p, p, allowed_residue):
            out.append((p,) + rest)
    return tuple(out)


def fmt_state(state, twisted=False):
    if not state:
        return "|bottom>" if twisted else "1"
    parts = []
    for p in state:
        q = Fraction(p, T)
        parts.append("a(-%s)" % q)
    return " ".join(parts) + (" |bottom>" if twisted else " 1")


def fmt_vec(vec, twisted=False):
    if not vec:
        return "0"
    items = sorted(vec.items(), key=lambda kv: sort_key(kv[0]))
    return " + ".join("(%s) %s" % (c, fmt_state(s, twisted)) for s, c in items)


def state_to_json(state):
    """Serialize as a list of parts; integers for untwisted, [num, den] otherwise."""
    out = []
    for p in state:
        q = Fraction(p, T)
        out.append(q.numerator if q.denominator == 1 else [q.numerator, q.denominator])
    return out


def state_from_json(parts):
    out = []
    for p in parts:
        q = Fraction(p[0], p[1]) if isinstance(p, list) else Fraction(p)
        out.append(int(q * T))
    return tuple(sorted(out, reverse=True))


def fock(*parts):
    """Build a state from actual part values, e.g. fock(2, 1) = a_{-2} a_{-1} 1."""
    return tuple(sorted((int(Fraction(p) * T) for p in parts), reverse=True))


def v_generator_mode(r, state):
    """a_r on a V-state, r an integer counted in units (multiple of T)."""
    if r < 0:
        return {insert_part(state, -r): Fraction(1)}
    if r == 0:
        return {}
    mult = state.count(r)
    if not mult:
        return {}
    return {remove_part(state, r): Fraction(r * mult, T)}


class FockModule:
    """A Fock module for the Heisenberg VOA; either V itself or M(1)(theta).

    Acts as the module descriptor too: ``kind``, ``twist`` and the bottom
    weight ``h`` (computed, not assumed).
    """

    def __init__(self, twisted):
        self.twisted = bool(twisted)
        self.kind = "theta-twisted" if twisted else "untwisted-vacuum"
        self.twist = THETA if twisted else ID
        self.offset = HALF if twisted else 0
        self._memo = {}
        self._basis = {}
        self.h = Fraction(0)
        if twisted:
            self.h = self._bottom_weight()

    def __repr__(self):
        return "FockModule(%s)" % self.kind

    # -- grading
    def residue(self, u):
        """Residue mod T (in units) of the mode indices of V-state u on this module."""
        return self.offset if (self.twisted and len(u) % 2) else 0

    def basis(self, max_deg_units):
        """All states with degree <= max_deg_units (units of 1/T), sorted."""
        key = max_deg_units
        if key not in self._basis:
            res = self.offset
            states = []
            for total in range(0, max_deg_units + 1):
                states.extend(_partitions(total, total, res))
            states.sort(key=sort_key)
            self._basis[key] = states
        return self._basis[key]

    def bottom(self):
        return [()]

    # -- generator
    def generator_mode(self, r, w):
        """a_r applied to a vector w; r in units of 1/T."""
        if (r - self.offset) % T:
            raise ParityError("mode %s does not act on the %s module" % (Fraction(r, T), self.kind))
        out = {}
        for s, c in w.items():
            add_into(out, self._gen(r, s), c)
        return out

    def _gen(self, r, state):
        if r < 0:
            return {insert_part(state, -r): Fraction(1)}
        if r == 0:
            return {}
        mult = state.count(r)
        if not mult:
            return {}
        return {remove_part(state, r): Fraction(r * mult, T)}

    # -- general modes
    def mode(self, u, q, w):
        """u_q w for V-state u, mode index q (units), module state w.

        Returns a dict that must not be mutated.  Incompatible mode indices give 0.
        """
        if not u:
            return {w: Fraction(1)} if q == -T else {}
        if (q - self.residue(u)) % T:
            return {}
        # u_q lowers degree by q + 1 - wt u
        if deg_units(w) + sum(u) - q - T < 0:
            return {}
        key = (u, q, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._mode(u, q, w)
        self._memo[key] = out
        return out

    def _mode(self, u, q, w):
        m = self.offset
        n_units = u[0]
        n = n_units // T
        v = u[1:]
        dw = deg_units(w)
        wv = sum(v)
        out = {}
        sign = -1 if n % 2 else 1

        # creation term: a_{m-n-i} v_{q-m+i} w
        i = 0
        while True:
            k = q - m + i * T
            if dw + wv - k - T < 0:
                break
            inner = self.mode(v, k, w)
            if inner:
                c = binomial(n + i - 1, i)
                r = m - n_units - i * T
                for s, cs in inner.items():
                    add_term(out, insert_part(s, -r), c * cs)
            i += 1

        # annihilation term: -(-1)^n v_{q-m-n-i} a_{m+i} w
        i = 0
        while True:
            r = m + i * T
            if r > dw:
                break
            if r > 0:
                mult = w.count(r)
                if mult:
                    w2 = remove_part(w, r)
                    inner = self.mode(v, q - m - n_units - i * T, w2)
                    if inner:
                        c = -sign * binomial(n + i - 1, i) * Fraction(r * mult, T)
                        add_into(out, inner, c)
            i += 1

        # twisted correction: -sum_{i>=1} C(m, i) (a_{-n+i} v)_{q-i} w
        if m:
            mf = Fraction(m, T)
            i = 1
            while True:
                idx = -n_units + i * T
                if idx > wv:
                    break
                x = v_generator_mode(idx, v)
                if x:
                    c = -binomial(mf, i)
                    for s, cs in x.items():
                        inner = self.mode(s, q - i * T, w)
                        if inner:
                            add_into(out, inner, c * cs)
                i += 1
        return out

    def act(self, u, q, w):
        """u_q w for vectors u (in V) and w (in this module)."""
        out = {}
        for us, uc in u.items():
            for ws, wc in w.items():
                add_into(out, self.mode(us, q, ws), uc * wc)
        return out

    def o(self, u, w):
        """Zero mode o(u) = u_{wt u - 1}, extended linearly over homogeneous parts of u."""
        out = {}
        for us, uc in u.items():
            q = sum(us) - T
            for ws, wc in w.items():
                add_into(out, self.mode(us, q, ws), uc * wc)
        return out

    def _bottom_weight(self):
        img = self.mode((T, T), T, ())  # (a_{-1}a_{-1}1)_1 on the bottom
        extra = set(img) - {()}
        if extra:
            raise RuntimeError("o(omega) does not preserve the bottom: %r" % img)
        return img.get((), Fraction(0)) / 2


VACUUM = FockModule(twisted=False)
TWISTED = FockModule(twisted=True)

OMEGA = {(T, T): Fraction(1, 2)}   # (1/2) a_{-1} a_{-1} 1
VAC = {(): Fraction(1)}
A = {(T,): Fraction(1)}            # a = a_{-1} 1


def module_for(twist):
    return TWISTED if twist == THETA else VACUUM


def module_by_label(label):
    if label in ("vacuum", "V", "untwisted-vacuum", "M(1)"):
        return VACUUM
    if label in ("theta-twisted", "twisted", "M(1)(theta)"):
        return TWISTED
    raise KeyError("unknown module %r" % label)


def L0(module, w):
    return module.act(OMEGA, T, w)


def L_minus1(module, w):
    return module.act(OMEGA, 0, w)


# -- eigenspaces for a pair of commuting automorphisms in {id, theta}

def j_of(state, g):
    """Exponent j with g u = e^{2 pi i j / T} u for a basis state."""
    if g == ID:
        return 0
    if g == THETA:
        return (len(state) % 2) * (T // 2)
    raise KeyError("unknown automorphism %r" % g)


def bigrade_state(state, g1, g2):
    return j_of(state, g1), j_of(state, g2)


def bigrade(u, g1, g2):
    """(j1, j2) of a vector lying in a single joint eigenspace."""
    grades = {bigrade_state(s, g1, g2) for s in u}
    if len(grades) > 1:
        raise ValueError("vector mixes eigenspaces %s; project first" % sorted(grades))
    if not grades:
        return (0, 0)
    return grades.pop()


def project_eigenspace(u, j1, j2, g1, g2):
    return {s: c for s, c in u.items() if bigrade_state(s, g1, g2) == (j1, j2)}
