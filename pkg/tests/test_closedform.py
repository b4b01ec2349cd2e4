import itertools
import math
import random
from types import SimpleNamespace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_ed.closedform import (
    HypersimplexSpec,
    HypersurfaceSpec,
    canonical_curve,
    cayley_volume,
    curve_ged,
    eulerian_number,
    hypersimplex_cm,
    hypersimplex_matrix,
    hypersurface_ged,
    hypersurface_matrix,
    hypersurface_polar,
    hypersurface_polars,
    surface_vertex_cm,
)
from toric_ed.degrees import compute_all, polar_degrees
from toric_ed.errors import NonCanonical, SpecInvalid
from toric_ed.intlinalg import matmul, smith_diagonal
from toric_ed.polytope import face_poset, validate

from matrices import P1P1_O22, QUADRANGLE, random_hypersurface

seeds = st.integers(0, 10 ** 6)


def spec_from_seed(seed, max_n=5):
    left, right = random_hypersurface(random.Random(seed), max_n=max_n)
    return HypersurfaceSpec(tuple(left + right), len(left))


# curves

def test_canonical_curve():
    assert canonical_curve([4, 2, 8, 2]) == [0, 1, 3]
    with pytest.raises(NonCanonical):
        canonical_curve([3, 3])


def test_curve_ged_values():
    assert curve_ged(list(range(7))) == 16
    assert curve_ged([0, 1]) == 1  # a line
    with pytest.raises(NonCanonical):
        curve_ged([0, 2, 4])
    with pytest.raises(NonCanonical):
        curve_ged([0, 3, 1])


# surfaces

def test_surface_vertex_cm_quadrangle():
    inp = validate(QUADRANGLE)
    got = [surface_vertex_cm(inp, v, assume_isolated_singularities=True)
           for v in face_poset(inp).vertices()]
    assert got == [-1, 0, 0, -1]


def test_surface_vertex_cm_smooth_corner():
    inp = validate(P1P1_O22)
    for v in face_poset(inp).vertices():
        assert surface_vertex_cm(inp, v, assume_isolated_singularities=True) == 1


def test_surface_vertex_cm_needs_assertion():
    inp = validate(P1P1_O22)
    with pytest.raises(ValueError):
        surface_vertex_cm(inp, face_poset(inp).vertices()[0])


# hypersurfaces

def test_spec_parse_and_validation():
    spec = HypersurfaceSpec.parse("22,23,64/26,14,69")
    assert spec.n == 6 and spec.r == 3 and spec.degree == 109
    assert HypersurfaceSpec.parse("2,3|1,4") == HypersurfaceSpec((2, 3, 1, 4), 2)
    for bad in ("1,2/4", "2,4/2,4", "0,1/1", "1,1", "a/b"):
        with pytest.raises(SpecInvalid):
            HypersurfaceSpec.parse(bad)
    with pytest.raises(SpecInvalid):
        hypersurface_polar(spec, 5)


def test_degree_109_example():
    assert hypersurface_ged(HypersurfaceSpec.parse("22,23,64/26,14,69")) == 1348


@pytest.mark.parametrize("c", [(1, 2, 1, 2), (3, 1, 2, 2), (5, 2, 4, 3), (1, 1, 1, 1)])
def test_quadric_surface_formulas(c):
    spec = HypersurfaceSpec(c, 2)
    d = spec.degree
    spread = max(abs(c[0] - c[1]), abs(c[2] - c[3]))
    assert hypersurface_polars(spec) == [d, d + spread, d]
    assert hypersurface_ged(spec) == 3 * d + spread


@pytest.mark.parametrize("c", [(3, 1, 2), (4, 1, 1, 2), (6, 5, 1)])
def test_one_sided_split(c):
    spec = HypersurfaceSpec(c, 1)
    if spec.n == 4:
        d = spec.degree
        assert hypersurface_polars(spec) == [d, 2 * d, d]
    assert hypersurface_polars(spec) == compute_all(validate(hypersurface_matrix(spec))).polar_degrees


@given(seeds)
def test_hypersurface_symmetry(seed):
    deltas = hypersurface_polars(spec_from_seed(seed, max_n=6))
    assert deltas == deltas[::-1]
    assert deltas[-1] == spec_from_seed(seed, max_n=6).degree


@given(seeds)
def test_ged_is_sum_of_polars(seed):
    spec = spec_from_seed(seed, max_n=6)
    assert hypersurface_ged(spec) == sum(hypersurface_polars(spec))


@given(seeds)
def test_hypersurface_matrix_shape(seed):
    spec = spec_from_seed(seed)
    a = hypersurface_matrix(spec)
    assert len(a) == spec.n - 1
    assert a[0] == [1] * spec.n
    assert matmul(a, [[x] for x in spec.kernel_vector()]) == [[0]] * (spec.n - 1)
    assert math.prod(smith_diagonal(a)) == 1


@given(seeds)
def test_hypersurface_matches_generic(seed):
    spec = spec_from_seed(seed, max_n=5)
    report = compute_all(validate(hypersurface_matrix(spec)))
    assert report.polar_degrees == hypersurface_polars(spec)
    assert report.ged_degree == hypersurface_ged(spec) == cayley_volume(spec)


def _sign_pattern(c, r):
    n = len(c)
    pattern = []
    for mask in range(1, 2 ** n):
        left = sum(c[j] for j in range(r) if mask >> j & 1)
        right = sum(c[j] for j in range(r, n) if mask >> j & 1)
        pattern.append((left > right) - (left < right))
    return pattern


def _raw_polars(c, r):
    # the formula evaluated without the gcd normalisation
    spec = SimpleNamespace(c=tuple(c), r=r, n=len(c), degree=sum(c[:r]))
    return [hypersurface_polar(spec, i) for i in range(len(c) - 1)]


@given(seeds, seeds)
def test_piecewise_linearity(s1, s2):
    a = spec_from_seed(s1, max_n=5)
    rng = random.Random(s2)
    # a second point in the same region: a positive multiple of a, perturbed only
    # when the perturbation keeps every subset-split comparison unchanged
    b = [x * rng.randint(1, 3) for x in a.c]
    for _ in range(20):
        i, j = rng.randrange(a.r), rng.randrange(a.r, a.n)
        trial = list(b)
        trial[i] += 1
        trial[j] += 1
        if _sign_pattern(trial, a.r) == _sign_pattern(a.c, a.r):
            b = trial
    if _sign_pattern(b, a.r) != _sign_pattern(a.c, a.r):
        return
    total = [x + y for x, y in zip(a.c, b)]
    assert _raw_polars(total, a.r) == [
        x + y for x, y in zip(_raw_polars(a.c, a.r), _raw_polars(b, a.r))]


# hypersimplices

def test_eulerian_numbers():
    assert [eulerian_number(4, j) for j in range(4)] == [1, 11, 11, 1]
    assert eulerian_number(3, 5) == 0
    for m in range(1, 11):
        assert sum(eulerian_number(m, j) for j in range(m)) == math.factorial(m)


def test_hypersimplex_spec():
    assert HypersimplexSpec(6, 4).canonical() == HypersimplexSpec(6, 2)
    assert HypersimplexSpec(8, 4).n == 70
    with pytest.raises(SpecInvalid):
        HypersimplexSpec(4, 4)
    with pytest.raises(SpecInvalid):
        HypersimplexSpec(1, 0)


def test_hypersimplex_matrix_columns():
    inp = hypersimplex_matrix(HypersimplexSpec(4, 2))
    assert inp.n == 6 and inp.lattice_index == 2
    assert [list(r) for r in inp.raw] == [
        [1, 1, 1, 0, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1],
    ]


@pytest.mark.parametrize("d,k", [(d, k) for d in range(2, 6) for k in range(1, d)])
def test_hypersimplex_cm_matches_generic(d, k):
    spec = HypersimplexSpec(d, k)
    assert hypersimplex_cm(spec) == compute_all(hypersimplex_matrix(spec)).cm_volumes


@pytest.mark.parametrize("d", range(2, 9))
def test_hypersimplex_symmetry(d):
    for k in range(1, d):
        assert hypersimplex_cm(HypersimplexSpec(d, k)) == hypersimplex_cm(HypersimplexSpec(d, d - k))
        # degree of X_A is the Eulerian number
        assert hypersimplex_cm(HypersimplexSpec(d, k))[-1] == eulerian_number(d - 1, k - 1)


def test_simplex_closed_form_is_smooth():
    # k = 1: CM volumes count faces, so V_j = C(d, j+1)
    for d in range(2, 8):
        assert hypersimplex_cm(HypersimplexSpec(d, 1)) == [math.comb(d, j + 1) for j in range(d)]
        polar_degrees(hypersimplex_cm(HypersimplexSpec(d, 1)), d)
