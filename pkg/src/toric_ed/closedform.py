"""Closed formulas for special families, used as fast paths and as oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Sequence, Tuple

from .errors import NonCanonical, SpecInvalid
from .intlinalg import Matrix, adapted_coordinates, hnf_with_inverse, kernel_basis, matmul
from .polytope import Face, ToricInput, face_poset, normalized_volume, validate, volume_of_point_set


# ---------------------------------------------------------------------------
# toric curves


def canonical_curve(alpha: Sequence[int]) -> List[int]:
    """Sort, dedupe, shift to start at 0 and divide by the gcd of differences."""
    vals = sorted(set(int(a) for a in alpha))
    if len(vals) < 2:
        raise NonCanonical("a toric curve needs at least two distinct exponents")
    g = math.gcd(*(v - vals[0] for v in vals))
    return [(v - vals[0]) // g for v in vals]


def curve_ged(alpha: Sequence[int]) -> int:
    """``2 a_n + a_{n-1} - a_2 - 2 a_1`` for a canonical exponent vector."""
    a = [int(x) for x in alpha]
    if len(a) < 2 or any(x >= y for x, y in zip(a, a[1:])):
        raise NonCanonical("exponents must be strictly increasing, at least two")
    if math.gcd(*(x - a[0] for x in a)) != 1:
        raise NonCanonical("differences of exponents must be relatively prime")
    return 2 * a[-1] + a[-2] - a[1] - 2 * a[0]


def curve_matrix(alpha: Sequence[int]) -> Matrix:
    return [list(alpha), [1] * len(alpha)]


# ---------------------------------------------------------------------------
# toric surfaces


def _polygon_coordinates(inp: ToricInput) -> Matrix:
    origin = [row[0] for row in inp.a]
    diffs = [[x - o for x in row] for row, o in zip(inp.a, origin)]
    return adapted_coordinates(diffs)


def surface_vertex_cm(inp: ToricInput, vertex: Face, *,
                      assume_isolated_singularities: bool = False) -> int:
    """CM volume of a polygon vertex: ``Vol(conv(A minus v)) + 2 - Vol(P)``.

    Only valid for toric surfaces with isolated singularities; the caller
    has to assert that, since it is not checked here.
    """
    if not assume_isolated_singularities:
        raise ValueError("surface_vertex_cm requires assume_isolated_singularities=True")
    if inp.d != 3 or vertex.dim != 0:
        raise ValueError("surface_vertex_cm needs a vertex of a lattice polygon (d = 3)")
    pts = _polygon_coordinates(inp)
    v = vertex.members[0]
    rest = [[x for j, x in enumerate(row) if j != v] for row in pts]
    return volume_of_point_set(rest, 2) + 2 - volume_of_point_set(pts, 2)


# ---------------------------------------------------------------------------
# toric hypersurfaces


@dataclass(frozen=True)
class HypersurfaceSpec:
    """Binomial ``x_1^c_1 ... x_r^c_r = x_{r+1}^c_{r+1} ... x_n^c_n``."""

    c: Tuple[int, ...]
    r: int

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "c", c)
        n = len(c)
        if n < 2 or not 1 <= self.r <= n - 1:
            raise SpecInvalid(f"split index r={self.r} must satisfy 1 <= r <= n-1 (n={n})")
        if any(x <= 0 for x in c):
            raise SpecInvalid("exponents must be positive")
        if math.gcd(*c) != 1:
            raise SpecInvalid("exponents must be relatively prime")
        if sum(c[: self.r]) != sum(c[self.r:]):
            raise SpecInvalid("both sides of the binomial must have the same degree")

    @classmethod
    def parse(cls, text: str) -> "HypersurfaceSpec":
        """Parse ``"c1,...,cr/c_{r+1},...,cn"`` (``|`` also accepted)."""
        parts = text.replace("|", "/").split("/")
        if len(parts) != 2:
            raise SpecInvalid(f"expected 'left/right' exponent lists, got {text!r}")
        try:
            left, right = ([int(x) for x in p.split(",") if x.strip()] for p in parts)
        except ValueError as exc:
            raise SpecInvalid(str(exc)) from None
        return cls(tuple(left + right), len(left))

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def degree(self) -> int:
        return sum(self.c[: self.r])

    def kernel_vector(self) -> List[int]:
        return list(self.c[: self.r]) + [-x for x in self.c[self.r:]]


def _split_min(spec: HypersurfaceSpec, tau) -> int:
    left = sum(spec.c[j] for j in tau if j < spec.r)
    right = sum(spec.c[j] for j in tau if j >= spec.r)
    return min(left, right)


def hypersurface_polar(spec: HypersurfaceSpec, i: int) -> int:
    """``C(n-1, i+1) D - sum_{|tau| = n-i-1} min(left sum, right sum)``."""
    n = spec.n
    if not 0 <= i <= n - 2:
        raise SpecInvalid(f"polar index {i} outside 0..{n - 2}")
    total = sum(_split_min(spec, tau)
                for tau in itertools.combinations(range(n), n - i - 1))
    return comb(n - 1, i + 1) * spec.degree - total


def hypersurface_polars(spec: HypersurfaceSpec) -> List[int]:
    return [hypersurface_polar(spec, i) for i in range(spec.n - 1)]


def hypersurface_ged(spec: HypersurfaceSpec) -> int:
    """``(2^(n-1) - 1) D`` minus the split minima over the proper subsets."""
    n = spec.n
    total = sum(_split_min(spec, tau)
                for size in range(1, n)
                for tau in itertools.combinations(range(n), size))
    return (2 ** (n - 1) - 1) * spec.degree - total


def hypersurface_matrix(spec: HypersurfaceSpec) -> Matrix:
    """An ``(n-1) x n`` matrix whose kernel is spanned by ``(c_+, -c_-)``.

    Its rows are a lattice basis of the orthogonal complement of that
    vector, with the all-ones vector as first row.
    """
    basis = kernel_basis([spec.kernel_vector()])
    y = _integer_coordinates(basis, [1] * spec.n)
    # unimodular completion of the primitive vector y: u @ y = e_1
    res, uinv = hnf_with_inverse([[v] for v in y])
    if res.h[0][0] != 1:
        raise SpecInvalid("all-ones vector is not primitive in the kernel lattice")
    return matmul([list(col) for col in zip(*uinv)], basis)


def _integer_coordinates(basis: Sequence[Sequence[int]], target: Sequence[int]) -> List[int]:
    """Solve ``y @ basis == target`` exactly; ``basis`` has independent rows."""
    k = len(basis)
    gram = [[Fraction(sum(a * b for a, b in zip(basis[i], basis[j]))) for j in range(k)]
            + [Fraction(sum(a * b for a, b in zip(basis[i], target)))] for i in range(k)]
    for c in range(k):
        p = next(r for r in range(c, k) if gram[r][c] != 0)
        gram[c], gram[p] = gram[p], gram[c]
        gram[c] = [x / gram[c][c] for x in gram[c]]
        for r in range(k):
            if r != c and gram[r][c] != 0:
                f = gram[r][c]
                gram[r] = [x - f * y for x, y in zip(gram[r], gram[c])]
    y = [gram[i][k] for i in range(k)]
    if any(v.denominator != 1 for v in y):
        raise SpecInvalid("target vector is not in the lattice")
    y = [int(v) for v in y]
    if [sum(y[i] * basis[i][j] for i in range(k)) for j in range(len(target))] != list(target):
        raise SpecInvalid("target vector is not in the span")
    return y


def cayley_matrix(spec: HypersurfaceSpec) -> Matrix:
    """``Cay(A, -A) = [[1, 0], [A, -A]]``, an ``n x 2n`` matrix."""
    a = hypersurface_matrix(spec)
    n = spec.n
    top = [1] * n + [0] * n
    return [top] + [list(row) + [-x for x in row] for row in a]


def cayley_volume(spec: HypersurfaceSpec) -> int:
    inp = validate(cayley_matrix(spec))
    poset = face_poset(inp)
    return normalized_volume(inp, poset.top, poset)


# ---------------------------------------------------------------------------
# hypersimplices


@dataclass(frozen=True)
class HypersimplexSpec:
    d: int
    k: int

    def __post_init__(self):
        if self.d < 2 or not 1 <= self.k <= self.d - 1:
            raise SpecInvalid(f"hypersimplex needs d >= 2 and 1 <= k <= d-1, got {self}")

    @property
    def n(self) -> int:
        return comb(self.d, self.k)

    def canonical(self) -> "HypersimplexSpec":
        """``(d, k)`` and ``(d, d-k)`` give isomorphic varieties."""
        return HypersimplexSpec(self.d, min(self.k, self.d - self.k))


@lru_cache(maxsize=None)
def eulerian_number(m: int, j: int) -> int:
    """Eulerian number ``A(m, j)``: permutations of ``m`` with ``j`` descents."""
    if m == 0:
        return 1 if j == 0 else 0
    if j < 0 or j >= m:
        return 0
    return (j + 1) * eulerian_number(m - 1, j) + (m - j) * eulerian_number(m - 1, j - 1)


def hypersimplex_cm(spec: HypersimplexSpec) -> List[int]:
    """CM volumes ``(V_0, ..., V_{d-1})`` of the hypersimplex ``Delta_{d,k}``."""
    d, k = spec.d, spec.k
    v = [comb(d, k) * min(k, d - k)]
    for ell in range(1, d):
        v.append(sum(comb(d, ell + 1) * comb(d - ell - 1, k - i) * eulerian_number(ell, i - 1)
                     for i in range(1, min(k, ell) + 1)))
    return v


def hypersimplex_matrix(spec: HypersimplexSpec) -> ToricInput:
    """0/1 columns with exactly ``k`` ones, in lexicographic order of supports."""
    cols = list(itertools.combinations(range(spec.d), spec.k))
    raw = [[int(i in c) for c in cols] for i in range(spec.d)]
    return validate(raw)
