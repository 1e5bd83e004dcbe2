"""GF(2) linear algebra: examples plus randomized properties."""
import itertools

import pytest
from hypothesis import given, strategies as st

from bottclass.gf2 import (
    BoundExceeded,
    DimensionMismatch,
    Gf2Mat,
    Gf2Vec,
    enumerate_invertible,
    invertible_count,
    kernel_basis,
    rank,
    rank_masks,
    solve,
)

A4_ROWS = [
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
]


def span_size_rank(rows):
    """Independent rank oracle: the row span of a rank-r matrix has 2^r
    elements; enumerate all subset XORs and count."""
    masks = [Gf2Vec.from_bits(r).mask for r in rows]
    span = set()
    for picks in itertools.product([0, 1], repeat=len(masks)):
        acc = 0
        for p, m in zip(picks, masks):
            if p:
                acc ^= m
        span.add(acc)
    size = len(span)
    r = size.bit_length() - 1
    assert 1 << r == size
    return r


def test_rank_zero_matrix():
    assert rank(Gf2Mat.zero(3, 3)) == 0


def test_rank_identity():
    for n in range(1, 7):
        assert rank(Gf2Mat.identity(n)) == n


def test_rank_a4_against_span_oracle():
    assert span_size_rank(A4_ROWS) == 3
    assert rank(Gf2Mat.from_rows(A4_ROWS)) == 3


@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_rank_equals_rank_of_transpose(nr, nc, data):
    rows = tuple(data.draw(st.integers(0, (1 << nc) - 1)) for _ in range(nr))
    m = Gf2Mat(nc, rows)
    assert rank(m) == rank(m.transpose())


def test_solve_identity_system():
    m = Gf2Mat.identity(4)
    b = Gf2Vec.from_bits([1, 0, 1, 1])
    got = solve(m, b)
    assert got is not None
    x, kern = got
    assert x == b and kern == []


def test_solve_zero_matrix():
    m = Gf2Mat.zero(3, 3)
    x, kern = solve(m, Gf2Vec(3, 0))
    assert x.mask == 0
    assert [k.mask for k in kern] == [1, 2, 4]  # full standard basis
    assert solve(m, Gf2Vec(3, 1)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve(Gf2Mat.identity(3), Gf2Vec(2, 1))


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_solve_returns_actual_solutions(nr, nc, data):
    rows = tuple(data.draw(st.integers(0, (1 << nc) - 1)) for _ in range(nr))
    m = Gf2Mat(nc, rows)
    x_true = Gf2Vec(nc, data.draw(st.integers(0, (1 << nc) - 1)))
    b = m.mul_vec(x_true)
    got = solve(m, b)
    assert got is not None
    x, kern = got
    assert m.mul_vec(x) == b
    for k in kern:
        assert m.mul_vec(k).mask == 0
    # kernel size matches rank-nullity
    assert len(kern) == nc - rank(m)


def test_kernel_basis_of_identity_is_empty():
    assert kernel_basis(Gf2Mat.identity(5)) == []


def test_enumerate_invertible_n1():
    mats = list(enumerate_invertible(1))
    assert len(mats) == 1 and mats[0].rows == (1,)


@pytest.mark.parametrize("n", [2, 3])
def test_enumerate_invertible_counts(n):
    # |GL(n,2)| = prod (2^n - 2^i) is the independent counting oracle
    mats = list(enumerate_invertible(n))
    assert len(mats) == invertible_count(n)
    assert len({m.rows for m in mats}) == len(mats)
    assert all(rank(m) == n for m in mats)


def test_enumerate_invertible_bound_refusal():
    with pytest.raises(BoundExceeded):
        next(enumerate_invertible(7))


def test_vector_bits_round_trip():
    v = Gf2Vec.from_bits([1, 0, 1, 1, 0])
    assert v.bits == (1, 0, 1, 1, 0)
    assert str(v) == "10110"
    assert v.weight() == 3


def test_matmul_identity():
    m = Gf2Mat.from_rows([[1, 1], [0, 1]])
    assert m.mul_mat(Gf2Mat.identity(2)) == m
    assert Gf2Mat.identity(2).mul_mat(m) == m
