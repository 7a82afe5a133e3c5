import pytest

from modlink.arith import field_summary, is_squarefree, norm_plus_unit
from modlink.template import (
    build_diagram,
    dt_code,
    family_word_x_xy_n,
    family_word_xn_ym,
    linking_with_trefoil,
    lorenz_inversions,
    ordered_shifts,
)
from modlink.words import class_word


def test_ordered_shifts_xy():
    p = ordered_shifts(["xy"])
    assert [pt.key for pt in p.points] == ["xy", "yx"]
    assert p.successor == (1, 0)
    assert lorenz_inversions(p) == 1


def test_ordered_shifts_xxy():
    p = ordered_shifts(["xxy"])
    assert [pt.key for pt in p.points] == ["xxy", "xyx", "yxx"]
    assert p.successor == (1, 2, 0)
    assert lorenz_inversions(p) == 2


def test_ordered_shifts_errors():
    with pytest.raises(ValueError):
        ordered_shifts(["xxx"])  # boundary orbit
    with pytest.raises(ValueError):
        ordered_shifts(["xy", "yx"])  # duplicate cyclic word
    with pytest.raises(ValueError):
        ordered_shifts(["xyxy"])  # not primitive


def test_block_order_preservation():
    for words in (["xy"], ["xxy", "xyy"], ["xxyxy"], ["xxxyy", "xy"]):
        p = ordered_shifts(words)
        n_x = sum(1 for pt in p.points if pt.key[0] == "x")
        xs = [p.successor[i] for i in range(n_x)]
        ys = [p.successor[i] for i in range(n_x, len(p.points))]
        assert xs == sorted(xs)
        assert ys == sorted(ys)
        # every x-point flows into... successor restricted blocks order-preserving
        assert sorted(xs + ys) == list(range(len(p.points)))


def test_bare_trefoil_diagram():
    d = build_diagram(None)
    assert d.n_crossings == 3
    assert len(d.components) == 1
    code = dt_code(d)
    assert tuple(abs(v) for v in code.components[0]) == (4, 6, 2)


def test_xy_diagram_pinned():
    d = build_diagram(ordered_shifts(["xy"]))
    assert d.n_crossings == 1 + 2 * 2 + 3  # inv + 2L + 3 = 8
    assert len(d.components) == 2
    code = dt_code(d)
    assert sorted(abs(v) for comp in code.components for v in comp) == \
        [2, 4, 6, 8, 10, 12, 14, 16]


def test_crossing_identity_and_linking():
    cases = [["xy"], ["xxy"], ["xyy", "xy"], ["xxyxy"], ["xxxy"],
             [family_word_x_xy_n(3)], [family_word_xn_ym(4, 2)]]
    for words in cases:
        p = ordered_shifts(words)
        d = build_diagram(p)
        inv = lorenz_inversions(p)
        L = len(p.points)
        assert d.n_crossings == inv + 2 * L + 3
        assert len(d.components) == len(words) + 1
        lks = linking_with_trefoil(d)
        for ci, w in enumerate(d.component_words):
            assert lks[ci] == w.count("y") - w.count("x"), (words, w)


def test_positive_template_braid():
    # all orbit-orbit crossings share the positive sign
    d = build_diagram(ordered_shifts(["xxyxy", "xy"]))
    tc = d.trefoil_component
    from modlink.template import SE, SW
    for cr in d.crossings:
        comps = {cr.component[SW], cr.component[SE]}
        if tc not in comps:
            assert cr.sign == +1


def test_dt_validity_on_classes():
    for m in (2, 3, 5, 6, 7, 10, 11, 13):
        fs = field_summary(m)
        tp, up = norm_plus_unit(fs.disc.D)
        words = [class_word(q, (tp, up)) for q in fs.reps]
        d = build_diagram(ordered_shifts(words))
        code = dt_code(d)  # internal asserts check the even permutation
        assert code.n == d.n_crossings
        # paper convention differs by negating every even entry
        paper = dt_code(d, convention="paper")
        for a, b in zip(code.components, paper.components):
            assert tuple(-v for v in a) == b


def test_family_words():
    assert family_word_xn_ym(1, 1) == "xy"
    assert family_word_x_xy_n(1) == "xxy"
    assert family_word_x_xy_n(2) == "xxyxy"
    with pytest.raises(ValueError):
        family_word_xn_ym(0, 1)
