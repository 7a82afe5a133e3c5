"""Real quadratic field arithmetic: public facade.

Squarefree m -> fundamental discriminant, fundamental (and norm-plus)
units, reduced-form class representatives, regulators and total geodesic
lengths.
"""

from .arith import (Discriminant, FieldSummary, FundamentalUnit,
                    QuadraticForm, all_reduced_forms, field_summary,
                    fundamental_discriminant, fundamental_unit, is_reduced,
                    is_squarefree, narrow_classes, norm_plus_unit,
                    principal_form, reduce_form, reduction_cycle, rho_step)

__all__ = [
    "Discriminant", "FieldSummary", "FundamentalUnit", "QuadraticForm",
    "all_reduced_forms", "field_summary", "fundamental_discriminant",
    "fundamental_unit", "is_reduced", "is_squarefree", "narrow_classes",
    "norm_plus_unit", "principal_form", "reduce_form", "reduction_cycle",
    "rho_step",
]
