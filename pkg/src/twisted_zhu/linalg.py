"""
Exact sparse row reduction over Q(zeta_{2T}) and weight-capped quotient spaces.

Rows are dicts column -> scalar.  ``RowSpace`` keeps a fully reduced echelon
basis whose pivot is always the *largest* column index present in the row.
Columns are ordered by increasing weight, so pivots sit on the heaviest
states and the surviving (non-pivot) columns are the lowest-weight
representatives of the quotient.

Large candidate sets are first thinned with a rank computation modulo a
prime p = 1 (mod 2T): rows independent mod p are independent over Q, so the
selected subset spans a subspace of the exact span.  Only the selected rows
are reduced exactly.  A row that is dependent mod p but not over Q would be
dropped, which can only enlarge the quotient, never certify a false zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import isprime, primitive_root

from .scalar import CycScalar

BATCH = 256


class CapExceeded(ValueError):
    """A vector has support outside the weight-capped ambient basis."""


class RowSpace:
    """Reduced row echelon basis, pivot = largest column of each row."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}   # pivot -> row (pivot entry 1 included)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return the normal form of ``vec`` (a new dict)."""
        out = dict(vec)
        rows = self.rows
        for p in [k for k in out if k in rows]:
            c = out.pop(p)
            for k, v in rows[p].items():
                if k == p:
                    continue
                old = out.get(k)
                new = -c * v if old is None else old - c * v
                if new:
                    out[k] = new
                elif old is not None:
                    del out[k]
        return out

    def insert(self, vec):
        r = self.reduce(vec)
        if not r:
            return False
        piv = max(r)
        inv = 1 / r[piv]
        if inv != 1:
            r = {k: v * inv for k, v in r.items()}
        for q, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k, v in r.items():
                    old = row.get(k)
                    new = -c * v if old is None else old - c * v
                    if new:
                        row[k] = new
                    else:
                        del row[k]
        self.rows[piv] = r
        return True

    def extend(self, rows, prefilter=True, T=2):
        """Insert many rows; returns the number that enlarged the span."""
        rows = [r for r in rows if r]
        if not rows:
            return 0
        if prefilter and len(rows) > 8:
            picked = independent_rows(rows, self.ncols, T, existing=self.rows)
            rows = [rows[i] for i in picked]
        return sum(1 for r in rows if self.insert(r))

    def pivots(self):
        return set(self.rows)


@lru_cache(maxsize=None)
def _prime(T):
    """A prime p = 1 mod 2T below 2^31 and a primitive 2T-th root of unity mod p."""
    p = 2**31 - 1
    while True:
        p -= 1
        if p % (2 * T) == 1 and isprime(p):
            break
    g = primitive_root(p)
    return p, pow(g, (p - 1) // (2 * T), p)


def _to_mod(x, T):
    p, z = _prime(T)
    if isinstance(x, CycScalar):
        total = 0
        for k, c in enumerate(x.coords):
            if c:
                total += c.numerator * pow(c.denominator, -1, p) * pow(z, k, p)
        return total % p
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def independent_rows(rows, ncols, T=2, existing=None):
    """Indices of a greedy maximal subset of ``rows`` independent modulo p
    (and independent of the rows in ``existing``)."""
    p, _ = _prime(T)
    basis = []
    if existing:
        for row in existing.values():
            vec = np.zeros(ncols, dtype=np.int64)
            for k, v in row.items():
                vec[k] = _to_mod(v, T)
            basis.append(vec)
        basis = _echelon_mod(basis, p)
    selected = []
    full = len(basis) >= ncols
    for start in range(0, len(rows), BATCH):
        if full:
            break
        chunk = rows[start:start + BATCH]
        B = np.zeros((len(chunk), ncols), dtype=np.int64)
        forced = []
        for r, row in enumerate(chunk):
            try:
                for k, v in row.items():
                    B[r, k] = _to_mod(v, T)
            except ValueError:  # denominator divisible by p
                forced.append(r)
                B[r] = 0
        for piv, brow in basis:
            col = B[:, piv]
            nz = np.nonzero(col)[0]
            if len(nz):
                B[nz] = (B[nz] - np.outer(col[nz], brow) % p) % p
        for r in range(len(chunk)):
            if r in forced:
                selected.append(start + r)
                continue
            nzs = np.nonzero(B[r])[0]
            if not len(nzs):
                continue
            piv = int(nzs[0])
            inv = pow(int(B[r, piv]), p - 2, p)
            row = (B[r] * inv) % p
            basis.append((piv, row))
            selected.append(start + r)
            if len(basis) >= ncols:
                full = True
                break
            col = B[r + 1:, piv]
            nz = np.nonzero(col)[0]
            if len(nz):
                rows_idx = nz + r + 1
                B[rows_idx] = (B[rows_idx] - np.outer(col[nz], row) % p) % p
    return selected


def _echelon_mod(vectors, p):
    out = []
    for vec in vectors:
        v = vec.copy()
        for piv, brow in out:
            if v[piv]:
                v = (v - (int(v[piv]) * brow) % p) % p
        nzs = np.nonzero(v)[0]
        if len(nzs):
            piv = int(nzs[0])
            v = (v * pow(int(v[piv]), p - 2, p)) % p
            out.append((piv, v))
    return out


class QuotientBasis:
    """A weight-capped ambient basis modulo a span of relations.

    ``ambient`` is a list of states sorted by (degree, parts); ``degree`` maps a
    state to its degree in units; ``cap`` is the cap in the same units.
    """

    def __init__(self, ambient, degree, cap, T=2, label=""):
        self.ambient = list(ambient)
        self.degree = degree
        self.cap = cap
        self.T = T
        self.label = label
        self.index = {s: i for i, s in enumerate(self.ambient)}
        self.space = RowSpace(len(self.ambient))

    # -- conversion between states and columns
    def to_cols(self, vec):
        idx = self.index
        out = {}
        for s, c in vec.items():
            i = idx.get(s)
            if i is None:
                raise CapExceeded("state %r lies outside the cap %s" % (s, Fraction(self.cap, self.T)))
            out[i] = c
        return out

    def to_states(self, cols):
        amb = self.ambient
        return {amb[i]: c for i, c in cols.items()}

    def fits(self, vec):
        return all(s in self.index for s in vec)

    def add_relations(self, rows, prefilter=True):
        return self.space.extend([self.to_cols(r) for r in rows], prefilter=prefilter, T=self.T)

    def reduce(self, vec):
        return self.to_states(self.space.reduce(self.to_cols(vec)))

    def in_span(self, vec):
        return not self.space.reduce(self.to_cols(vec))

    @property
    def reps(self):
        piv = self.space.rows
        return [s for i, s in enumerate(self.ambient) if i not in piv]

    @property
    def relation_rows(self):
        """Reduced basis of the relation span, as state dicts, sorted by pivot."""
        return [self.to_states(self.space.rows[p]) for p in sorted(self.space.rows)]

    @property
    def rank(self):
        return len(self.space)

    def layer_dims(self):
        """[(k, dim of the image of degree <= k)] for every degree k present."""
        piv = self.space.rows
        dims = []
        count = 0
        degrees = sorted({self.degree(s) for s in self.ambient})
        by_deg = {}
        for i, s in enumerate(self.ambient):
            if i not in piv:
                by_deg[self.degree(s)] = by_deg.get(self.degree(s), 0) + 1
        for k in degrees:
            count += by_deg.get(k, 0)
            dims.append((k, count))
        return dims

    def layer_dim(self, k):
        """Dimension of the image of degree <= k (units)."""
        piv = self.space.rows
        return sum(1 for i, s in enumerate(self.ambient) if i not in piv and self.degree(s) <= k)
