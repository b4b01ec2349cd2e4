"""Polar degrees, Chern-Mather volumes and generic ED degrees of toric varieties."""

__version__ = "0.1.0"

from .closedform import (
    HypersimplexSpec,
    HypersurfaceSpec,
    canonical_curve,
    cayley_volume,
    curve_ged,
    hypersimplex_cm,
    hypersimplex_matrix,
    hypersurface_ged,
    hypersurface_matrix,
    hypersurface_polars,
    surface_vertex_cm,
)
from .degrees import (
    DegreeReport,
    cm_volumes,
    cm_volumes_from_polar,
    compute_all,
    discriminant,
    ged_degree,
    polar_degrees,
    report_from_volumes,
)
from .errors import InputError, InternalError, ToricError
from .euler import EulerTable, euler_obstructions, subdiagram_volume
from .polytope import Face, FacePoset, ToricInput, face_poset, normalized_volume, validate

__all__ = [name for name in dir() if not name.startswith("_")]
