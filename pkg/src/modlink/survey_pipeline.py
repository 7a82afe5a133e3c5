"""Survey pipeline: public facade.

Squarefree scan -> SurveyRow CSV (12-significant-digit, byte-stable) ->
OLS fit of volume against total geodesic length, plus the word-family
scans.
"""

from .survey import (COLUMNS, FamilyRow, FitResult, SurveyRow, accepted,
                     class_words, csv_text, default_threads, family, fit,
                     modular_link_diagram, parse_csv, row_for_m,
                     squarefree_range, survey, write_csv)

__all__ = [
    "COLUMNS", "FamilyRow", "FitResult", "SurveyRow", "accepted",
    "class_words", "csv_text", "default_threads", "family", "fit",
    "modular_link_diagram", "parse_csv", "row_for_m", "squarefree_range",
    "survey", "write_csv",
]
