"""Geodesic word coding: public facade.

Narrow class -> automorph matrix -> U,V word (Euclidean algorithm) ->
canonical primitive cyclic x,y word.
"""

from .words import (NotHyperbolicWord, PslMatrix, automorph,
                    canonical_cyclic, class_word, is_primitive,
                    matrix_to_uv_word, uv_to_xy, uv_word_matrix,
                    word_to_matrix)

__all__ = [
    "NotHyperbolicWord", "PslMatrix", "automorph", "canonical_cyclic",
    "class_word", "is_primitive", "matrix_to_uv_word", "uv_to_xy",
    "uv_word_matrix", "word_to_matrix",
]
