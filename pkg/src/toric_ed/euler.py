"""Subdiagram volumes and the Euler obstruction recursion over the face lattice."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import InternalBlockMismatch, InternalError
from .intlinalg import adapted_coordinates, hnf, lattice_index
from .polytope import Face, FacePoset, ToricInput, face_volumes, volume_of_point_set

log = logging.getLogger(__name__)


@dataclass
class EulerTable:
    """Per-face data keyed by face id.

    ``mu[(alpha, beta)]`` is the subdiagram volume of ``beta`` in ``alpha``
    for every pair with ``beta`` a proper face of ``alpha``.
    """

    mu: Dict[Tuple[int, int], int]
    eu: Dict[int, int]
    vol: Dict[int, int]
    orbit_eu: Dict[int, int]
    orbit_index: Dict[int, int]


def _translated_block(inp: ToricInput, alpha: Face, beta: Face):
    inner = list(beta.members)
    outer = [i for i in alpha.members if i not in beta]
    origin = min(inp.column(i) for i in inner)
    cols = inner + outer
    mat = [[row[i] - o for i in cols] for row, o in zip(inp.a, origin)]
    return mat, len(inner)


def subdiagram_volume(inp: ToricInput, alpha: Face, beta: Face) -> int:
    """Subdiagram volume ``mu(alpha/beta)`` of a proper face ``beta`` of ``alpha``.

    The columns of ``alpha`` are ordered as ``(beta, alpha minus beta)`` and
    translated so that a column of ``beta`` is the origin. In the Hermite
    normal form, the rows whose pivots fall in the second block give the
    images ``C`` of ``alpha minus beta`` in the quotient lattice, and the
    result is ``Vol(conv(C + {0})) - Vol(conv(C))``. Columns outside
    ``alpha`` cannot affect those rows and are left out.
    """
    if not (set(beta.members) < set(alpha.members)):
        raise ValueError("beta must be a proper face of alpha")
    mat, nb = _translated_block(inp, alpha, beta)
    res = hnf(mat)
    beta_rows = [i for i, p in enumerate(res.pivot_cols) if p < nb]
    mid_rows = [i for i, p in enumerate(res.pivot_cols) if p >= nb]
    r = alpha.dim - beta.dim
    if len(beta_rows) != beta.dim or len(mid_rows) != r:
        raise InternalBlockMismatch(
            f"HNF blocks {len(beta_rows)}/{len(mid_rows)} rows, "
            f"expected {beta.dim}/{r} for faces {beta.members} < {alpha.members}")
    c = [res.h[i][nb:] for i in mid_rows]
    if r == 1:
        # all images lie on one side of 0 in a rank-one quotient
        return min(abs(x) for x in c[0])
    with_origin = [row + [0] for row in c]
    return volume_of_point_set(with_origin, r) - volume_of_point_set(c, r)


def orbit_index(inp: ToricInput, face: Face) -> int:
    """``[M_face : Z A_face]`` with ``M_face`` the saturated lattice of the span."""
    coords = adapted_coordinates(inp.submatrix(face.members))
    return lattice_index(coords, face.dim + 1)


def _mu_job(args):
    inp, alpha, beta = args
    return subdiagram_volume(inp, alpha, beta)


def _all_mu(inp: ToricInput, poset: FacePoset, parallel: bool):
    pairs = [(alpha, beta) for beta in poset.faces
             for alpha in poset.supersets(beta)]
    if parallel and len(pairs) > 32:
        with ProcessPoolExecutor() as pool:
            values = list(pool.map(_mu_job, [(inp, a, b) for a, b in pairs],
                                   chunksize=16))
    else:
        values = [subdiagram_volume(inp, a, b) for a, b in pairs]
    mu = {}
    for (alpha, beta), v in zip(pairs, values):
        if v == 0:
            log.info("zero subdiagram volume for %s in %s", beta.members, alpha.members)
        mu[(alpha.id, beta.id)] = v
    return mu


def _recursion_value(poset: FacePoset, mu, eu, beta: Face) -> int:
    total = 0
    for alpha in poset.supersets(beta):
        sign = -1 if (alpha.dim - beta.dim - 1) % 2 else 1
        total += sign * mu[(alpha.id, beta.id)] * eu[alpha.id]
    return total


def euler_obstructions(inp: ToricInput, poset: FacePoset,
                       parallel: bool = False) -> EulerTable:
    """Fill the Euler obstruction of every face by descending dimension.

    ``Eu(P) = 1`` and for a proper face ``beta``::

        Eu(beta) = sum over alpha > beta of
                   (-1)^(dim alpha - dim beta - 1) * mu(alpha/beta) * Eu(alpha)
    """
    mu = _all_mu(inp, poset, parallel)
    eu: Dict[int, int] = {poset.top.id: 1}
    for k in range(poset.dim - 1, -1, -1):
        for fid in poset.by_dim[k]:
            eu[fid] = _recursion_value(poset, mu, eu, poset.faces[fid])
    vol = face_volumes(inp, poset)
    idx = {f.id: orbit_index(inp, f) for f in poset.faces}
    orbit_eu = {fid: eu[fid] * idx[fid] for fid in eu}
    return EulerTable(mu=mu, eu=eu, vol=vol, orbit_eu=orbit_eu, orbit_index=idx)


def check_recursion(poset: FacePoset, table: EulerTable) -> List[int]:
    """Face ids whose stored ``Eu`` disagrees with the recursion (empty if none)."""
    bad = []
    if table.eu.get(poset.top.id) != 1:
        bad.append(poset.top.id)
    for f in poset.faces:
        if f.id == poset.top.id:
            continue
        if table.eu[f.id] != _recursion_value(poset, table.mu, table.eu, f):
            bad.append(f.id)
    for fid, v in table.orbit_eu.items():
        if v != table.eu[fid] * table.orbit_index[fid]:
            bad.append(fid)
    return bad


def assert_recursion(poset: FacePoset, table: EulerTable) -> None:
    bad = check_recursion(poset, table)
    if bad:
        raise InternalError(f"Euler recursion violated at faces {bad}")
