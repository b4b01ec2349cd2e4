"""Validated toric input, exact face lattices and normalized lattice volumes.

Point configurations are handled homogeneously: every column lies on an
affine hyperplane ``w(x) = 1`` where ``w`` takes integer values on the
ambient lattice. The faces of ``conv(columns)`` are then the faces of the
cone they span, and the normalized volume of a ``k``-dimensional face is the
sum of ``|det|`` over a triangulation, written in a basis of the saturated
lattice of the face's linear span.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AllOnesNotInRowSpace, EmptyMatrix
from .intlinalg import (
    Matrix,
    adapted_coordinates,
    as_matrix,
    columns,
    det,
    hnf_with_inverse,
    lattice_index,
    rank,
    transpose,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToricInput:
    """An integer matrix ready for the face-lattice computations.

    ``a`` holds the distinct columns expressed in a basis of the lattice
    ``ZA`` they generate, so ``a`` has ``d = rank`` rows and its columns
    generate ``Z^d``. ``column_labels[i]`` lists the 1-based labels of the
    raw columns merged into column ``i``.
    """

    a: Tuple[Tuple[int, ...], ...]
    d: int
    n: int
    column_labels: Tuple[Tuple[int, ...], ...]
    raw: Tuple[Tuple[int, ...], ...]
    lattice_index: int
    warnings: Tuple[str, ...] = ()

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.a)

    def submatrix(self, idx: Sequence[int]) -> Matrix:
        return columns(self.a, idx)

    def labels(self, idx: Sequence[int]) -> List[int]:
        return sorted(lab for i in idx for lab in self.column_labels[i])


@dataclass(frozen=True)
class Face:
    id: int
    members: Tuple[int, ...]
    dim: int

    @property
    def mask(self) -> int:
        return reduce(lambda acc, i: acc | (1 << i), self.members, 0)

    def __contains__(self, col: int) -> bool:
        return col in self.members


@dataclass
class FacePoset:
    """Face lattice of ``conv(A)``; faces sorted by dimension then members.

    ``covers_of[f]`` lists the faces covering ``f`` (one dimension up) and
    ``facets_of[f]`` the faces ``f`` covers (one dimension down).
    """

    faces: List[Face]
    covers_of: Dict[int, List[int]]
    facets_of: Dict[int, List[int]]
    by_dim: List[List[int]]

    @property
    def top(self) -> Face:
        return self.faces[self.by_dim[-1][0]]

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    def vertices(self) -> List[Face]:
        return [self.faces[i] for i in self.by_dim[0]]

    def faces_of_dim(self, k: int) -> List[Face]:
        return [self.faces[i] for i in self.by_dim[k]] if 0 <= k <= self.dim else []

    def find(self, members: Sequence[int]) -> Face:
        key = tuple(sorted(members))
        for f in self.faces:
            if f.members == key:
                return f
        raise KeyError(f"no face with members {key}")

    def supersets(self, face: Face) -> List[Face]:
        """Faces strictly containing ``face``."""
        m = face.mask
        return [g for g in self.faces
                if g.dim > face.dim and (g.mask & m) == m]

    def subfaces(self, face: Face) -> List[Face]:
        """Faces strictly contained in ``face``."""
        m = face.mask
        return [g for g in self.faces
                if g.dim < face.dim and (g.mask & m) == g.mask]

    def f_vector(self) -> List[int]:
        return [len(ids) for ids in self.by_dim]


# ---------------------------------------------------------------------------
# validation


def validate(raw: Sequence[Sequence[int]]) -> ToricInput:
    """Check the ``(1,...,1) in rowspace`` condition and normalize coordinates.

    Duplicate columns are merged (recorded in ``warnings``); rows are reduced
    to a basis of the lattice generated by the columns.
    """
    m = as_matrix(raw)
    if not m or not m[0]:
        raise EmptyMatrix("matrix has no entries")
    nrows, ncols = len(m), len(m[0])
    d = rank(m)
    if d == 0 or rank(m + [[1] * ncols]) != d:
        raise AllOnesNotInRowSpace(
            "(1,...,1) is not in the rational row space of the matrix")

    warnings = []
    if d < nrows:
        warnings.append(f"rank {d} < {nrows} rows; rows reduced to rank")

    seen: Dict[Tuple[int, ...], int] = {}
    labels: List[List[int]] = []
    keep: List[int] = []
    for j in range(ncols):
        col = tuple(row[j] for row in m)
        if col in seen:
            labels[seen[col]].append(j + 1)
        else:
            seen[col] = len(keep)
            keep.append(j)
            labels.append([j + 1])
    dups = [lab for lab in labels if len(lab) > 1]
    if dups:
        warnings.append("duplicate columns merged: "
                        + ", ".join("/".join(map(str, lab)) for lab in dups))
        log.warning(warnings[-1])

    # coordinates in the saturation of the column span, then in ZA itself
    sat = adapted_coordinates(columns(m, keep))
    index = lattice_index(sat, d)
    res, uinv = hnf_with_inverse(transpose(sat))
    a = tuple(tuple(uinv[j][i] for j in range(len(keep))) for i in range(d))
    return ToricInput(
        a=a,
        d=d,
        n=len(keep),
        column_labels=tuple(tuple(lab) for lab in labels),
        raw=tuple(tuple(row) for row in m),
        lattice_index=index,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# convex hull by double description


def _primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _initial_basis(vecs: Sequence[Sequence[int]], dim: int) -> List[int]:
    chosen: List[int] = []
    for i in range(len(vecs)):
        if rank([vecs[j] for j in chosen] + [vecs[i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == dim:
                break
    return chosen


def _inverse_columns(rows: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Columns of ``rows^{-1}``, each scaled to a primitive integer vector."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for j in range(n):
        col = [aug[i][n + j] for i in range(n)]
        lcm = math.lcm(*(x.denominator for x in col))
        out.append(_primitive([int(x * lcm) for x in col]))
    return out


def cone_facets(vecs: Sequence[Sequence[int]]) -> List[Tuple[Tuple[int, ...], int]]:
    """Facets of the pointed full-dimensional cone spanned by ``vecs``.

    Returns ``(normal, mask)`` pairs: ``normal . v >= 0`` for every input
    vector with equality exactly on the bits set in ``mask``. The normals are
    the extreme rays of the dual cone, found with the double description
    method and the combinatorial adjacency test.
    """
    vecs = [tuple(v) for v in vecs]
    dim = len(vecs[0])
    if dim == 1:
        return []
    basis = _initial_basis(vecs, dim)
    if len(basis) < dim:
        raise ValueError("cone is not full-dimensional")
    rays = _inverse_columns([vecs[i] for i in basis])
    masks = []
    for r in rays:
        masks.append(sum(1 << i for i in basis if _dot(vecs[i], r) == 0))

    in_basis = set(basis)
    for k, v in enumerate(vecs):
        if k in in_basis:
            continue
        vals = [_dot(v, r) for r in rays]
        pos = [i for i, x in enumerate(vals) if x > 0]
        neg = [i for i, x in enumerate(vals) if x < 0]
        if not neg:
            masks = [m | (1 << k) if vals[i] == 0 else m for i, m in enumerate(masks)]
            continue
        bit = 1 << k
        new_rays, new_masks = [], []
        for p in pos:
            for q in neg:
                common = masks[p] & masks[q]
                if bin(common).count("1") < dim - 2:
                    continue
                if any(i != p and i != q and (masks[i] & common) == common
                       for i in range(len(rays))):
                    continue
                ray = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(ray))
                new_masks.append(common | bit)
        keep = [i for i, x in enumerate(vals) if x >= 0]
        rays = [rays[i] for i in keep] + new_rays
        masks = [masks[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_masks
    return list(zip(rays, masks))


def _members(mask: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _build_poset(vecs: Sequence[Sequence[int]]) -> FacePoset:
    """Face lattice of the configuration of (homogeneous) column vectors."""
    n = len(vecs)
    full = (1 << n) - 1
    facet_masks = sorted({m for _, m in cone_facets(vecs)} - {0})
    found = {full}
    stack = list(facet_masks)
    found.update(facet_masks)
    while stack:
        f = stack.pop()
        for g in facet_masks:
            h = f & g
            if h and h not in found:
                found.add(h)
                stack.append(h)

    def face_dim(mask):
        return rank(transpose([vecs[i] for i in _members(mask)])) - 1

    entries = sorted(((face_dim(m), _members(m)) for m in found))
    faces = [Face(i, mem, dim) for i, (dim, mem) in enumerate(entries)]
    top_dim = faces[-1].dim
    by_dim: List[List[int]] = [[] for _ in range(top_dim + 1)]
    for f in faces:
        by_dim[f.dim].append(f.id)
    fmask = {f.id: f.mask for f in faces}
    covers_of: Dict[int, List[int]] = {f.id: [] for f in faces}
    facets_of: Dict[int, List[int]] = {f.id: [] for f in faces}
    for k in range(top_dim):
        for lo in by_dim[k]:
            for hi in by_dim[k + 1]:
                if fmask[lo] & fmask[hi] == fmask[lo]:
                    covers_of[lo].append(hi)
                    facets_of[hi].append(lo)
    return FacePoset(faces, covers_of, facets_of, by_dim)


def face_poset(inp: ToricInput) -> FacePoset:
    """Face lattice of ``P = conv(A)`` with all member columns of each face."""
    return _build_poset([inp.column(i) for i in range(inp.n)])


# ---------------------------------------------------------------------------
# volumes


def _pulling_simplices(poset: FacePoset, face: Face,
                       cache: Dict[int, List[Tuple[int, ...]]]):
    """Pulling triangulation of ``face`` using its lowest-index vertices."""
    if face.id in cache:
        return cache[face.id]
    if face.dim == 0:
        out = [face.members[:1]]
    else:
        vert = min(v.members[0] for v in poset.vertices() if v.members[0] in face)
        out = []
        for g in poset.facets_of[face.id]:
            sub = poset.faces[g]
            if vert in sub:
                continue
            out.extend((vert,) + s for s in _pulling_simplices(poset, sub, cache))
    cache[face.id] = out
    return out


def _face_volume(vecs, poset: FacePoset, face: Face, cache) -> int:
    coords = adapted_coordinates(transpose([vecs[i] for i in face.members]))
    pos = {c: i for i, c in enumerate(face.members)}
    total = 0
    for simplex in _pulling_simplices(poset, face, cache):
        total += abs(det([[row[pos[c]] for c in simplex] for row in coords]))
    return total


def face_volumes(inp: ToricInput, poset: FacePoset) -> Dict[int, int]:
    """Normalized volume of every face, sharing one triangulation cache."""
    vecs = [inp.column(i) for i in range(inp.n)]
    cache: Dict[int, List[Tuple[int, ...]]] = {}
    return {f.id: _face_volume(vecs, poset, f, cache) for f in poset.faces}


def normalized_volume(inp: ToricInput, face: Face,
                      poset: Optional[FacePoset] = None) -> int:
    """Normalized volume of ``face`` w.r.t. its affine lattice (vertices: 1)."""
    if face.dim == 0:
        return 1
    vecs = [inp.column(i) for i in face.members]
    if poset is None:
        sub = _build_poset(vecs)
        return _face_volume(vecs, sub, sub.top, {})
    return _face_volume([inp.column(i) for i in range(inp.n)], poset, face, {})


def volume_of_point_set(points: Sequence[Sequence[int]], ambient_dim: int) -> int:
    """Normalized volume of ``conv(columns of points)`` w.r.t. ``Z^ambient_dim``.

    Lower-dimensional hulls have volume 0.
    """
    pts = as_matrix(points)
    if ambient_dim == 0:
        return 1 if pts and pts[0] else 0
    if len(pts) != ambient_dim:
        raise ValueError(f"expected {ambient_dim} rows, got {len(pts)}")
    cols = sorted({tuple(c) for c in zip(*pts)})
    vecs = [(1,) + c for c in cols]
    if len(vecs) <= ambient_dim or rank(vecs) < ambient_dim + 1:
        return 0
    poset = _build_poset(vecs)
    # full rank: the HNF rows are a unimodular image of the coordinates
    return _face_volume(vecs, poset, poset.top, {})


def edge_lattice_length(inp: ToricInput, edge: Face) -> int:
    """Number of lattice segments on an edge: gcd of its endpoint difference."""
    if edge.dim != 1:
        raise ValueError("edge_lattice_length needs a 1-dimensional face")
    pts = sorted(inp.column(i) for i in edge.members)
    return math.gcd(*(x - y for x, y in zip(pts[-1], pts[0])))
