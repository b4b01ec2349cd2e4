"""CM volumes, polar degrees, generic ED degree and A-discriminant data."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import AllZero, InternalError, NegativePolarDegree
from .euler import EulerTable, assert_recursion, euler_obstructions
from .polytope import FacePoset, ToricInput, face_poset


def cm_volumes(table: EulerTable, poset: FacePoset) -> List[int]:
    """``V_j``: sum of ``Vol(face) * Eu(face)`` over the ``j``-dimensional faces."""
    return [sum(table.vol[f] * table.eu[f] for f in ids) for ids in poset.by_dim]


def polar_degrees(v: Sequence[int], d: int) -> List[int]:
    """Polar degrees from CM volumes.

    ``delta_i = sum_{j=i+1}^{d} (-1)^(d-j) * C(j, i+1) * V_{j-1}``.
    A negative value means an upstream computation is wrong, so it raises.
    """
    if len(v) != d:
        raise ValueError(f"expected {d} CM volumes, got {len(v)}")
    deltas = []
    for i in range(d):
        deltas.append(sum((-1) ** (d - j) * comb(j, i + 1) * v[j - 1]
                          for j in range(i + 1, d + 1)))
    if any(x < 0 for x in deltas):
        raise NegativePolarDegree(f"negative polar degree in {deltas} (V = {list(v)})")
    return deltas


def cm_volumes_from_polar(deltas: Sequence[int]) -> List[int]:
    """Invert :func:`polar_degrees` (the system is triangular with unit diagonal)."""
    d = len(deltas)
    v = [0] * d
    for i in range(d - 1, -1, -1):
        rest = sum((-1) ** (d - j) * comb(j, i + 1) * v[j - 1] for j in range(i + 2, d + 1))
        v[i] = (-1) ** (d - i - 1) * (deltas[i] - rest)
    return v


def ged_degree(v: Sequence[int], d: int) -> int:
    """Generic ED degree ``sum_j (-1)^(d-j-1) (2^(j+1) - 1) V_j``.

    Cross-checked against the sum of the polar degrees.
    """
    if len(v) != d:
        raise ValueError(f"expected {d} CM volumes, got {len(v)}")
    total = sum((-1) ** (d - j - 1) * (2 ** (j + 1) - 1) * v[j] for j in range(d))
    if total != sum(polar_degrees(v, d)):
        raise InternalError("ED degree disagrees with the sum of polar degrees")
    return total


def discriminant(deltas: Sequence[int]) -> Tuple[int, int]:
    """``(codim, degree)`` of the A-discriminant: first nonzero polar degree."""
    for i, x in enumerate(deltas):
        if x:
            return i + 1, x
    raise AllZero("all polar degrees vanish")


def cm_class(v: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """Chern-Mather class as ``(power of h, coefficient)`` pairs in Z[h]/<h^n>."""
    if len(v) > n:
        raise ValueError("more CM volumes than ambient coordinates")
    return [(n - j - 1, v[j]) for j in range(len(v))]


@dataclass
class DegreeReport:
    cm_volumes: List[int]
    polar_degrees: List[int]
    ged_degree: int
    degree_of_x: int
    disc_codim: int
    disc_degree: int
    cm_class_coeffs: List[Tuple[int, int]]
    lattice_index_zd_za: int
    total_critical_points: int
    warnings: List[str] = field(default_factory=list)
    poset: Optional[FacePoset] = field(default=None, repr=False, compare=False)
    table: Optional[EulerTable] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cmVolumes": list(self.cm_volumes),
            "polarDegrees": list(self.polar_degrees),
            "gedDegree": self.ged_degree,
            "degreeOfX": self.degree_of_x,
            "discCodim": self.disc_codim,
            "discDegree": self.disc_degree,
            "cmClassCoeffs": [list(p) for p in self.cm_class_coeffs],
            "latticeIndexZdZA": self.lattice_index_zd_za,
            "totalCriticalPoints": self.total_critical_points,
            "warnings": list(self.warnings),
        }


def report_from_volumes(v: Sequence[int], n: int, index: int = 1,
                        warnings: Sequence[str] = ()) -> DegreeReport:
    d = len(v)
    deltas = polar_degrees(v, d)
    ged = ged_degree(v, d)
    codim, degree = discriminant(deltas)
    return DegreeReport(
        cm_volumes=list(v),
        polar_degrees=deltas,
        ged_degree=ged,
        degree_of_x=v[-1],
        disc_codim=codim,
        disc_degree=degree,
        cm_class_coeffs=cm_class(v, n),
        lattice_index_zd_za=index,
        total_critical_points=ged * index,
        warnings=list(warnings),
    )


def compute_all(inp: ToricInput, parallel: bool = False) -> DegreeReport:
    """Run the whole pipeline on a validated input.

    Counts of critical points (``total_critical_points``) assume generic
    weights and data.
    """
    poset = face_poset(inp)
    table = euler_obstructions(inp, poset, parallel=parallel)
    assert_recursion(poset, table)
    warnings = list(inp.warnings)
    if inp.d == 1:
        warnings.append("degenerate input: X_A is a point")
    report = report_from_volumes(cm_volumes(table, poset), inp.n,
                                 inp.lattice_index, warnings)
    report.poset = poset
    report.table = table
    return report
