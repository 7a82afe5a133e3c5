"""Template links: public facade.

Cyclic words -> orbit placement on the template -> trefoil-augmented
link diagram -> multi-component DT code, plus the word families of the
bounded/unbounded volume examples.
"""

from .template import (AugmentedLinkDiagram, Crossing, DTCode,
                       OrbitPlacement, build_diagram, dt_code,
                       family_word_x_xy_n, family_word_xn_ym,
                       linking_with_trefoil, lorenz_inversions,
                       ordered_shifts)
from .realize import mirror_diagram, parse_dt, realize, validate_dt

__all__ = [
    "AugmentedLinkDiagram", "Crossing", "DTCode", "OrbitPlacement",
    "build_diagram", "dt_code", "family_word_x_xy_n", "family_word_xn_ym",
    "linking_with_trefoil", "lorenz_inversions", "mirror_diagram",
    "ordered_shifts", "parse_dt", "realize", "validate_dt",
]
