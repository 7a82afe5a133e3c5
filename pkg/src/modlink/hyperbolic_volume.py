"""Hyperbolic volume: public facade.

Diagram or DT code -> octahedral ideal triangulation -> collapsed and
simplified complex -> Newton solve of the gluing/completeness equations
-> Bloch-Wigner volume with status reporting.
"""

from .dilog import MAX_TET_VOLUME, bloch_wigner
from .octa import (build_triangulation, collapse_poles,
                   link_complement_triangulation, link_gluing_system,
                   simplify)
from .realize import triangulation_from_dt, volume_from_dt
from .solver import (CONVERGED, CONVERGED_NON_GEOMETRIC, FAILED,
                     NOT_HYPERBOLIC, ShapeAssignment, VolumeResult,
                     solve_shapes, volume_result)
from .tri import GluingSystem, Triangulation
from .volume import diagram_volume, link_volume

__all__ = [
    "MAX_TET_VOLUME", "bloch_wigner", "build_triangulation",
    "collapse_poles", "link_complement_triangulation",
    "link_gluing_system", "simplify", "triangulation_from_dt",
    "volume_from_dt", "CONVERGED", "CONVERGED_NON_GEOMETRIC", "FAILED",
    "NOT_HYPERBOLIC", "ShapeAssignment", "VolumeResult", "solve_shapes",
    "volume_result", "GluingSystem", "Triangulation", "diagram_volume",
    "link_volume",
]
