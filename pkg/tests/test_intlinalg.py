import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_ed.intlinalg import (
    INFINITE,
    det,
    hnf,
    hnf_with_inverse,
    identity,
    kernel_basis,
    lattice_index,
    matmul,
    rank,
    smith_diagonal,
)

from matrices import OCTAHEDRON


def int_matrices(max_rows=4, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                min_size=r, max_size=r)))


def unimodular(size):
    # upper triangular with unit diagonal, then a row permutation
    return st.tuples(
        st.lists(st.integers(-3, 3), min_size=size * size, max_size=size * size),
        st.permutations(range(size)),
    ).map(lambda t: [
        [(1 if i == j else (t[0][i * size + j] if j > i else 0)) for j in range(size)]
        for i in t[1]
    ])


def test_hnf_small_example():
    res = hnf([[2, 4], [1, 3]])
    # above-pivot entries are reduced into [0, pivot)
    assert res.h == [[1, 1], [0, 2]]
    assert hnf([[1, 3], [0, 2]]).h == res.h


def test_hnf_identity_and_zero():
    assert hnf(identity(3)).h == identity(3)
    res = hnf([[0, 0], [0, 0]])
    assert res.rank == 0 and res.pivot_cols == []


def _check_hnf_shape(h, pivots):
    r = len(pivots)
    assert all(all(x == 0 for x in row) for row in h[r:])
    assert pivots == sorted(pivots) and len(set(pivots)) == r
    for i, p in enumerate(pivots):
        assert h[i][p] > 0
        assert all(h[i][j] == 0 for j in range(p))
        for k in range(i):
            assert 0 <= h[k][p] < h[i][p]


@given(int_matrices())
def test_hnf_invariants(m):
    res = hnf(m)
    assert matmul(res.u, m) == res.h
    assert abs(det(res.u)) == 1
    _check_hnf_shape(res.h, res.pivot_cols)
    assert res.rank == rank(m)


@given(int_matrices())
def test_hnf_idempotent(m):
    h = hnf(m).h
    assert hnf(h).h == h


@given(int_matrices())
def test_hnf_inverse(m):
    res, uinv = hnf_with_inverse(m)
    assert matmul(uinv, res.h) == m
    assert matmul(res.u, uinv) == identity(len(m))


@given(int_matrices(max_rows=3, max_cols=3), st.data())
def test_hnf_depends_only_on_row_lattice(m, data):
    u = data.draw(unimodular(len(m)))
    assert hnf(matmul(u, m)).h == hnf(m).h


def test_kernel_examples():
    a = [[1, 1, 1, 1], [1, 0, 1, 0], [1, 0, 0, 1]]
    assert kernel_basis(a) == [[1, 1, -1, -1]]
    assert kernel_basis(identity(3)) == []
    assert kernel_basis([[1, 1]]) == [[1, -1]]


@given(int_matrices())
def test_kernel_properties(m):
    basis = kernel_basis(m)
    cols = len(m[0])
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert rank(m) + len(basis) == cols
    if basis:
        # saturated: the kernel basis spans a primitive sublattice
        assert math.prod(smith_diagonal(basis)) == 1


def test_smith_diagonal():
    assert smith_diagonal([[12, 6, 4], [3, 9, 6], [2, 16, 14]]) == [1, 10, 30]


def test_lattice_index_examples():
    assert lattice_index(OCTAHEDRON, 4) == 2
    assert lattice_index(identity(3), 3) == 1
    assert lattice_index([[1, 1], [0, 2]], 2) == 2
    assert lattice_index([[1, 2], [2, 4]], 2) == INFINITE


@given(int_matrices(max_rows=3, max_cols=4), st.data())
def test_lattice_index_unimodular_invariance(m, data):
    u = data.draw(unimodular(len(m[0])))
    assert lattice_index(matmul(m, u), len(m)) == lattice_index(m, len(m))


@given(int_matrices(max_rows=3, max_cols=3))
def test_square_index_is_abs_det(m):
    if len(m) != len(m[0]):
        return
    d = det(m)
    want = abs(d) if d else INFINITE
    assert lattice_index(m, len(m)) == want


def test_ragged_rejected():
    with pytest.raises(ValueError):
        hnf([[1, 2], [3]])
