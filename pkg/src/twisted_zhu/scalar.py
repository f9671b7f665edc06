"""
Exact scalars: rationals and the cyclotomic field Q(zeta_{2T}).

Rationals are plain ``fractions.Fraction`` values.  Elements of Q(zeta_{2T})
with a non-rational part are ``CycScalar`` instances holding coordinates over
the power basis 1, zeta, ..., zeta^{d-1} (d = phi(2T)) reduced modulo the
2T-th cyclotomic polynomial.  Arithmetic between the two kinds coerces
automatically and every result that happens to be rational is demoted back to
a Fraction, so the common (purely rational) case stays fast.

Mode indices and degrees live in (1/T)Z.  Throughout the package they are
stored as integers counted in units of 1/T; ``from_units``/``to_units``
convert.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import Poly, cyclotomic_poly, symbols, totient

__all__ = [
    "Fraction", "CycScalar", "binomial", "phase", "is_zero", "to_pairs",
    "from_pairs", "from_units", "to_units",
]

_x = symbols("x")


@lru_cache(maxsize=None)
def _field(T):
    """(degree, reduction table) for Q(zeta_{2T}).

    The table maps k -> coordinates of zeta^k for 0 <= k < 2*degree - 1.
    """
    n = 2 * T
    d = int(totient(n))
    phi = [int(c) for c in reversed(Poly(cyclotomic_poly(n, _x), _x).all_coeffs())]
    assert phi[d] == 1
    table = []
    for k in range(2 * d - 1):
        if k < d:
            v = [0] * d
            v[k] = 1
        else:
            # zeta^k = zeta * zeta^{k-1}; zeta^d = -sum phi[i] zeta^i
            prev = table[k - 1]
            v = [0] + prev[:-1]
            top = prev[-1]
            if top:
                for i in range(d):
                    v[i] -= top * phi[i]
        table.append(v)
    return d, tuple(tuple(v) for v in table)


@lru_cache(maxsize=None)
def _power(T, k):
    """Coordinates of zeta_{2T}^k for any integer k."""
    d, table = _field(T)
    k %= 2 * T
    coords = [Fraction(0)] * d
    coords[0] = Fraction(1)
    for _ in range(k):
        # multiply by zeta
        top = coords[-1]
        coords = [Fraction(0)] + coords[:-1]
        if top:
            zd = table[d]
            for i in range(d):
                coords[i] += top * zd[i]
    return tuple(coords)


def _canon(T, coords):
    if not any(coords[1:]):
        return coords[0]
    return CycScalar(T, coords)


class CycScalar:
    """An element of Q(zeta_{2T}) with a non-zero irrational part."""

    __slots__ = ("T", "coords")

    def __init__(self, T, coords):
        d, _ = _field(T)
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != d:
            raise ValueError("expected %d coordinates, got %d" % (d, len(coords)))
        self.T = T
        self.coords = coords

    @classmethod
    def make(cls, T, coords):
        """Canonical constructor: returns a Fraction when the value is rational."""
        d, _ = _field(T)
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != d:
            raise ValueError("expected %d coordinates" % d)
        return _canon(T, coords)

    @classmethod
    def zeta(cls, T, k=1):
        return _canon(T, _power(T, k))

    # -- coercion helpers
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.T != self.T:
                raise ValueError("mixing Q(zeta_%d) and Q(zeta_%d)" % (2 * self.T, 2 * other.T))
            return other.coords
        if isinstance(other, (int, Fraction)):
            d, _ = _field(self.T)
            return (Fraction(other),) + (Fraction(0),) * (d - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _canon(self.T, tuple(a + b for a, b in zip(self.coords, o)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.T, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _canon(self.T, tuple(a - b for a, b in zip(self.coords, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _canon(self.T, tuple(b - a for a, b in zip(self.coords, o)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return CycScalar(self.T, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _canon(self.T, _mul(self.T, self.coords, o))

    __rmul__ = __mul__

    def inverse(self):
        return _canon(self.T, _inv(self.T, self.coords))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return CycScalar(self.T, tuple(a / other for a in self.coords))
        if isinstance(other, CycScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o

    def __hash__(self):
        return hash((self.T, self.coords))

    def __bool__(self):
        return True  # canonical instances are never rational, hence never zero

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if k == 0 else "%s*z%d^%d" % (c, 2 * self.T, k))
        return "CycScalar(%s)" % " + ".join(terms)


def _mul(T, a, b):
    d, table = _field(T)
    prod = [Fraction(0)] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = list(prod[:d])
    for k in range(d, 2 * d - 1):
        c = prod[k]
        if c:
            row = table[k]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def _inv(T, a):
    # solve (multiplication by a) x = 1 by Gauss-Jordan over Q
    d, _ = _field(T)
    cols = []
    for k in range(d):
        e = [Fraction(0)] * d
        e[k] = Fraction(1)
        cols.append(_mul(T, a, tuple(e)))
    mat = [[cols[k][i] for k in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
    for c in range(d):
        piv = next((r for r in range(c, d) if mat[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("division by zero in Q(zeta)")
        mat[c], mat[piv] = mat[piv], mat[c]
        p = mat[c][c]
        mat[c] = [v / p for v in mat[c]]
        for r in range(d):
            if r != c and mat[r][c]:
                f = mat[r][c]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
    return tuple(mat[i][d] for i in range(d))


def is_zero(x):
    return not x


@lru_cache(maxsize=None)
def binomial(alpha, i):
    """Generalized binomial coefficient alpha (alpha-1) ... (alpha-i+1) / i!."""
    if i < 0:
        raise ValueError("binomial: i must be non-negative")
    alpha = Fraction(alpha)
    value = Fraction(1)
    for k in range(i):
        value = value * (alpha - k) / (k + 1)
    return value


def phase(j1, T, sign):
    """e^{sign * j1 * pi i / T} = zeta_{2T}^{sign*j1}."""
    if not 0 <= j1 < T:
        raise ValueError("phase: j1=%r out of range [0, %d)" % (j1, T))
    if sign not in (1, -1):
        raise ValueError("phase: sign must be +1 or -1")
    return CycScalar.zeta(T, sign * j1)


def to_pairs(x, T):
    """Serialize a scalar as [[num, den], ...] over the zeta_{2T} power basis."""
    d, _ = _field(T)
    if isinstance(x, CycScalar):
        coords = x.coords
    else:
        coords = (Fraction(x),) + (Fraction(0),) * (d - 1)
    return [[c.numerator, c.denominator] for c in coords]


def from_pairs(pairs, T):
    return CycScalar.make(T, [Fraction(n, m) for n, m in pairs])


def from_units(n, T):
    """Integer count of 1/T units -> Fraction."""
    return Fraction(n, T)


def to_units(x, T):
    q = Fraction(x) * T
    if q.denominator != 1:
        raise ValueError("%s is not in (1/%d)Z" % (x, T))
    return int(q)
