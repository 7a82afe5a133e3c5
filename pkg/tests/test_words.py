import random

import pytest

from modlink.arith import (
    QuadraticForm,
    field_summary,
    is_squarefree,
    norm_plus_unit,
)
from modlink.words import (
    IDENT,
    NotHyperbolicWord,
    PslMatrix,
    U,
    V,
    X,
    Y,
    automorph,
    canonical_cyclic,
    class_word,
    is_primitive,
    matrix_to_uv_word,
    uv_to_xy,
    uv_word_matrix,
    word_to_matrix,
)


def test_generator_relations():
    assert (U @ U).same_psl(IDENT)
    assert (V @ V @ V).same_psl(IDENT)
    assert (U @ V).same_psl(X)
    assert (U @ V @ V).same_psl(Y)


def test_automorph_pinned():
    M = automorph(QuadraticForm(1, 1, -1), (3, 1))
    assert (M.a, M.b, M.c, M.d) == (1, 1, 1, 2)
    M = automorph(QuadraticForm(1, 2, -1), (6, 2))
    assert (M.a, M.b, M.c, M.d) == (1, 2, 2, 5)
    assert M.trace == 6


def test_automorph_trace_and_fixed_point():
    for m in (2, 3, 5, 10, 79, 82):
        fs = field_summary(m)
        tp, up = norm_plus_unit(fs.disc.D)
        for q in fs.reps:
            M = automorph(q, (tp, up))
            assert M.canonical().trace in (tp, -tp)
            # M fixes the roots of a z^2 + b z + c: a*(Mz)^2+b*(Mz)+c = 0
            # equivalently M^T acts on the form: check q(M*(x,y)) = q(x,y)
            a, b, c = q.a, q.b, q.c
            for x, y in ((1, 0), (0, 1), (2, 3)):
                xx, yy = M.a * x + M.b * y, M.c * x + M.d * y
                assert a * xx * xx + b * xx * yy + c * yy * yy == \
                       a * x * x + b * x * y + c * y * y


def test_matrix_to_uv_word_pinned():
    w = matrix_to_uv_word(PslMatrix(2, 1, 1, 1))
    assert uv_word_matrix(w).same_psl(X @ Y)
    assert uv_to_xy(w) == "xy"
    w = matrix_to_uv_word(PslMatrix(1, 1, 1, 2))
    assert uv_to_xy(w) == "xy"  # YX grouped, canonical rotation xy


def test_uv_to_xy_conjugation_invariance():
    # V^2 (UV)(UV^2) V  ->  XY
    w = [("V", 2), ("U",), ("V", 1), ("U",), ("V", 2), ("V", 1)]
    assert uv_to_xy(w) == "xy"


def test_uv_to_xy_rejects_finite_order():
    for w in ([("U",)], [("V", 1)], [("V", 2)], []):
        with pytest.raises(NotHyperbolicWord):
            uv_to_xy(list(w))


def test_canonical_cyclic():
    assert canonical_cyclic("yxx") == "xxy"
    assert canonical_cyclic("xyxy") == "xyxy"
    w = "xxyxyyx"
    outs = {canonical_cyclic(w[i:] + w[:i]) for i in range(len(w))}
    assert len(outs) == 1
    assert canonical_cyclic(canonical_cyclic(w)) == canonical_cyclic(w)


def test_is_primitive():
    assert is_primitive("xy")
    assert not is_primitive("xyxy")
    assert is_primitive("xxyxy")
    assert not is_primitive("xxxxxx")


def test_word_to_matrix():
    M = word_to_matrix("xy")
    assert (M.a, M.b, M.c, M.d) == (2, 1, 1, 1)
    assert word_to_matrix("x").same_psl(X)
    w = "xxyxyy"
    traces = {word_to_matrix(w[i:] + w[:i]).canonical().trace for i in range(len(w))}
    assert len({abs(t) for t in traces}) == 1


def test_evaluation_homomorphism():
    rng = random.Random(7)
    for _ in range(50):
        w1 = "".join(rng.choice("xy") for _ in range(rng.randint(1, 6)))
        w2 = "".join(rng.choice("xy") for _ in range(rng.randint(1, 6)))
        assert word_to_matrix(w1 + w2).same_psl(
            word_to_matrix(w1) @ word_to_matrix(w2))


def test_uv_output_reduced_on_random_hyperbolic():
    rng = random.Random(11)
    for _ in range(1000):
        w = "".join(rng.choice("xy") for _ in range(rng.randint(2, 10)))
        if "x" not in w or "y" not in w:
            continue
        M = word_to_matrix(w)
        uv = matrix_to_uv_word(M)
        for i in range(len(uv) - 1):
            assert uv[i][0] != uv[i + 1][0], f"unreduced at {i}: {uv}"
        assert uv_word_matrix(uv).same_psl(M)


def test_class_word_roundtrip_sample():
    for m in range(2, 80):
        if not is_squarefree(m) or int(m ** 0.5) ** 2 == m:
            continue
        fs = field_summary(m)
        tp, up = norm_plus_unit(fs.disc.D)
        words = []
        for q in fs.reps:
            w = class_word(q, (tp, up))
            assert is_primitive(w)
            assert "x" in w and "y" in w
            assert abs(word_to_matrix(w).canonical().trace) == tp
            words.append(w)
        assert len(set(words)) == len(words), f"duplicate words for m={m}"
