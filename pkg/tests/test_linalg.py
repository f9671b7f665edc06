from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twisted_zhu.linalg import CapExceeded, QuotientBasis, RowSpace, independent_rows
from twisted_zhu.scalar import CycScalar

small = st.integers(-3, 3).map(Fraction)


@st.composite
def matrices(draw, max_rows=12, max_cols=8):
    ncols = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(0, max_rows))
    rows = []
    for _ in range(nrows):
        entries = draw(st.lists(small, min_size=ncols, max_size=ncols))
        rows.append({i: c for i, c in enumerate(entries) if c})
    return ncols, rows


def dense(rows, ncols):
    return sympy.Matrix([[r.get(i, 0) for i in range(ncols)] for r in rows]) if rows else sympy.zeros(0, ncols)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.booleans())
def test_rank_matches_sympy(m, prefilter):
    ncols, rows = m
    space = RowSpace(ncols)
    space.extend(rows, prefilter=prefilter)
    assert len(space) == dense(rows, ncols).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rows_reduce_to_zero_and_reduce_is_idempotent(m):
    ncols, rows = m
    space = RowSpace(ncols)
    space.extend(rows)
    for r in rows:
        assert space.reduce(r) == {}
    probe = {i: Fraction(i + 1) for i in range(ncols)}
    once = space.reduce(probe)
    assert space.reduce(once) == once
    assert not set(once) & space.pivots()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_pivot_is_largest_column(m):
    ncols, rows = m
    space = RowSpace(ncols)
    space.extend(rows, prefilter=False)
    for p, row in space.rows.items():
        assert max(row) == p and row[p] == 1


def test_prefilter_picks_independent_subset():
    rows = [{0: Fraction(1)}, {0: Fraction(2)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}]
    assert independent_rows(rows, 2) == [0, 2]


def test_cyclotomic_entries():
    i = CycScalar.zeta(2)
    space = RowSpace(2)
    space.insert({0: i, 1: Fraction(1)})
    assert space.reduce({0: Fraction(1), 1: -i}) == {}
    assert space.reduce({0: Fraction(1), 1: i}) != {}


def test_quotient_basis():
    amb = [(), (1,), (2,), (1, 1)]
    q = QuotientBasis(amb, sum, 2, label="toy")
    q.add_relations([{(2,): Fraction(1), (1, 1): Fraction(-1)}, {(1,): Fraction(1)}])
    assert q.reps == [(), (2,)]
    assert q.reduce({(1, 1): Fraction(3)}) == {(2,): Fraction(3)}
    assert q.layer_dims() == [(0, 1), (1, 1), (2, 2)]
    assert q.layer_dim(1) == 1
    assert q.in_span({(1,): Fraction(5)})
    with pytest.raises(CapExceeded):
        q.reduce({(3,): Fraction(1)})
