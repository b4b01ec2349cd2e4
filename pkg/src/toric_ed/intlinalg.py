"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints, so entries never overflow.
Every function accepts any sequence of sequences and returns fresh lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

Matrix = List[List[int]]

INFINITE = math.inf


def as_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    rows = [[int(x) for x in row] for row in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def columns(m: Sequence[Sequence[int]], idx: Sequence[int]) -> Matrix:
    """Submatrix made of the columns ``idx`` (in that order)."""
    return [[row[j] for j in idx] for row in m]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals (fraction-free Bareiss elimination)."""
    a = as_matrix(m)
    nrows, ncols = shape(a)
    r = 0
    prev = 1
    for j in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        for i in range(r + 1, nrows):
            f = a[i][j]
            a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], a[r])]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            row_k = a[k]
            a[i] = [0] * (k + 1) + [
                (p * a[i][j] - f * row_k[j]) // prev for j in range(k + 1, n)
            ]
        prev = p
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class HnfResult:
    """Row-style Hermite normal form ``h == u @ m`` with ``u`` unimodular."""

    h: Matrix
    u: Matrix
    pivot_cols: List[int]

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


def _hnf(m, track_u=True, track_inverse=False):
    h = as_matrix(m)
    nrows, ncols = shape(h)
    u = identity(nrows) if track_u else None
    uinv = identity(nrows) if track_inverse else None
    pivots: list[int] = []
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            b = h[i][j]
            if b == 0:
                continue
            a = h[r][j]
            g, x, y = ext_gcd(a, b)
            ag, bg = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [x * p + y * q for p, q in zip(hr, hi)]
            h[i] = [ag * q - bg * p for p, q in zip(hr, hi)]
            if u is not None:
                ur, ui = u[r], u[i]
                u[r] = [x * p + y * q for p, q in zip(ur, ui)]
                u[i] = [ag * q - bg * p for p, q in zip(ur, ui)]
            if uinv is not None:
                for row in uinv:
                    cr, ci = row[r], row[i]
                    row[r] = ag * cr + bg * ci
                    row[i] = x * ci - y * cr
        p = h[r][j]
        if p == 0:
            continue
        if p < 0:
            h[r] = [-v for v in h[r]]
            if u is not None:
                u[r] = [-v for v in u[r]]
            if uinv is not None:
                for row in uinv:
                    row[r] = -row[r]
            p = -p
        for i in range(r):
            q = h[i][j] // p
            if q:
                h[i] = [v - q * w for v, w in zip(h[i], h[r])]
                if u is not None:
                    u[i] = [v - q * w for v, w in zip(u[i], u[r])]
                if uinv is not None:
                    for row in uinv:
                        row[r] += q * row[i]
        pivots.append(j)
        r += 1
    return h, u, uinv, pivots


def hnf(m: Sequence[Sequence[int]]) -> HnfResult:
    """Row-style Hermite normal form with its unimodular transform.

    Pivots are positive, entries below a pivot vanish and entries above a
    pivot are reduced into ``[0, pivot)``.

    >>> hnf([[2, 4], [1, 3]]).h
    [[1, 3], [0, 2]]
    """
    h, u, _, pivots = _hnf(m)
    return HnfResult(h, u, pivots)


def hnf_with_inverse(m: Sequence[Sequence[int]]) -> tuple[HnfResult, Matrix]:
    """Like :func:`hnf`, also returning ``u^{-1}`` (so ``m == u^{-1} @ h``)."""
    h, u, uinv, pivots = _hnf(m, track_inverse=True)
    return HnfResult(h, u, pivots), uinv


def adapted_coordinates(m: Sequence[Sequence[int]]) -> Matrix:
    """Coordinates of the columns of ``m`` in a basis of ``span_R(m) ∩ Z^rows``.

    The result has ``rank(m)`` rows. Unimodular row operations preserve the
    ambient lattice, and the nonzero HNF rows span exactly the saturation.
    """
    h, _, _, pivots = _hnf(m, track_u=False)
    return h[: len(pivots)]


def kernel_basis(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis of the integer kernel ``{v : m v = 0}``, one vector per entry.

    The returned vectors form a lattice basis of the (saturated) kernel; each
    is primitive with its first nonzero entry positive.
    """
    a = as_matrix(m)
    ncols = shape(a)[1]
    res = hnf(transpose(a))
    basis = []
    for i in range(res.rank, ncols):
        v = res.u[i]
        lead = next(x for x in v if x)
        basis.append([-x for x in v] if lead < 0 else list(v))
    return basis


def smith_diagonal(m: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero elementary divisors ``d_1 | d_2 | ...`` of an integer matrix."""
    a = [row[:] for row in as_matrix(m)]
    nrows, ncols = shape(a)
    divisors = []
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows)
              for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # move the smallest remainder into the pivot slot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    a[t], a[ci] = a[ci], a[t]
                else:
                    for row in a:
                        row[t], row[cj] = row[cj], row[t]
                continue
            bad = next((i for i in range(t + 1, nrows)
                        for j in range(t + 1, ncols) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        divisors.append(abs(a[t][t]))
        t += 1
    return divisors


def lattice_index(sub: Sequence[Sequence[int]], ambient_rank: int):
    """Index of the column lattice of ``sub`` in ``Z^ambient_rank``.

    Returns :data:`INFINITE` when the columns do not span a full-rank lattice.
    """
    a = as_matrix(sub)
    if ambient_rank == 0:
        return 1
    if len(a) != ambient_rank:
        raise ValueError(f"expected {ambient_rank} rows, got {len(a)}")
    divisors = smith_diagonal(a)
    if len(divisors) < ambient_rank:
        return INFINITE
    return math.prod(divisors)
