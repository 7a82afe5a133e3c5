"""DT parsing, realization, and DT-driven volumes."""

import pytest

from modlink.realize import (mirror_diagram, parse_dt, realize,
                             triangulation_from_dt, volume_from_dt)
from modlink.solver import NOT_HYPERBOLIC
from modlink.template import (AugmentedLinkDiagram, EXIT_SLOT,
                              _braid_closure_diagram, dt_code)

FIG8_DT = "DT:[(4,6,8,2)]"
TREFOIL_DT = "DT:[(4,6,2)]"
WHITEHEAD_DT = "DT:[(10,6),(8,2,4)]"
BORROMEAN_DT = "DT:[(8,6),(10,12),(2,4)]"
HOPF_DT = "DT:[(4),(2)]"
UNKNOT_KINK_DT = "DT:[(2)]"

FIG8_VOLUME = 2.029883212819
WHITEHEAD_VOLUME = 3.663862376709
BORROMEAN_VOLUME = 7.327724753418


def test_parse_dt():
    assert parse_dt(FIG8_DT) == ((4, 6, 8, 2),)
    assert parse_dt(WHITEHEAD_DT) == ((10, 6), (8, 2, 4))
    assert parse_dt("DT:[(-4, -6, -2)]") == ((-4, -6, -2),)
    assert parse_dt(" DT:[ (4) , (2) ] ") == ((4,), (2,))


@pytest.mark.parametrize("bad", [
    "", "DT:", "DT:[]", "DT:[()]", "DT:[(4,6,8,2)", "(4,6,8,2)",
    "DT:[(4,x,8,2)]", "DT:[(4,6,8,2)(2)]",
])
def test_parse_dt_malformed(bad):
    with pytest.raises(ValueError, match="malformed|empty"):
        parse_dt(bad)


@pytest.mark.parametrize("bad", [
    "DT:[(4,6,8)]",      # evens not a permutation of 2..2n
    "DT:[(3,6,2)]",      # odd entry
    "DT:[(4,4,2)]",      # repeated even
])
def test_parse_dt_invalid_labels(bad):
    with pytest.raises(ValueError, match="invalid DT code"):
        parse_dt(bad)


def test_realize_split_diagram():
    # two disjoint one-crossing unknots
    with pytest.raises(ValueError, match="split diagram"):
        realize(((2,), (4,)))


def test_realize_unrealizable():
    # valid label permutation, connected, but admits no planar embedding
    with pytest.raises(ValueError, match="unrealizable"):
        realize(((4, 6, 8, 10, 2),))


def test_realize_unknown_convention():
    with pytest.raises(ValueError, match="convention"):
        realize(((2,),), convention="other")


@pytest.mark.parametrize("text,n", [
    (TREFOIL_DT, 3), (FIG8_DT, 4), (WHITEHEAD_DT, 5), (BORROMEAN_DT, 6),
])
def test_tetrahedron_count(text, n):
    tri = triangulation_from_dt(text)
    assert tri.n == 4 * n


def test_fig8_dt_volume():
    res = volume_from_dt(FIG8_DT)
    assert res.volume == pytest.approx(FIG8_VOLUME, abs=1e-9)
    assert res.status == "Converged"


def test_whitehead_dt_volume():
    res = volume_from_dt(WHITEHEAD_DT)
    assert res.volume == pytest.approx(WHITEHEAD_VOLUME, abs=1e-6)


def test_borromean_dt_volume():
    res = volume_from_dt(BORROMEAN_DT)
    assert res.volume == pytest.approx(BORROMEAN_VOLUME, abs=1e-6)


@pytest.mark.parametrize("text", [TREFOIL_DT, HOPF_DT, UNKNOT_KINK_DT])
def test_non_hyperbolic_dt(text):
    res = volume_from_dt(text)
    assert res.status == NOT_HYPERBOLIC
    assert res.volume is None


def test_paper_convention_negates_evens():
    std = volume_from_dt(FIG8_DT)
    pap = volume_from_dt("DT:[(-4,-6,-8,-2)]", convention="paper")
    assert pap.volume == std.volume


def test_mirror_diagram_flips_over_strands():
    crossings = realize(parse_dt(FIG8_DT))
    for c, m in zip(crossings, mirror_diagram(crossings)):
        assert m.sign == -c.sign
        assert m.arcs == c.arcs
        assert m.over_slots() != c.over_slots()


def _closure_diagram(letters, n_strands, components_rotation=0,
                     reverse_components=False):
    """Braid closure as a diagram object, with adjustable DT numbering."""
    crossings, first = _braid_closure_diagram(
        letters, n_strands, [("s", i) for i in range(n_strands)])
    visited = set()
    components = []
    for i in range(n_strands):
        start = first[("s", i)]
        if start in visited:
            continue
        comp = []
        cur = start
        while cur not in visited:
            visited.add(cur)
            comp.append(cur)
            c, slot = cur
            cur = crossings[c].arcs[EXIT_SLOT[slot]]
        r = components_rotation % len(comp)
        components.append(comp[r:] + comp[:r])
    if reverse_components:
        components.reverse()
    return AugmentedLinkDiagram(crossings=crossings, components=components,
                                n_orbit_components=0, placement=None,
                                trefoil_component=-1)


WHITEHEAD_BRAID = [(0, 1), (1, -1), (0, 1), (1, -1), (0, 1)]


def test_volume_invariant_under_dt_rotation():
    volumes = []
    for rot in range(4):
        d = _closure_diagram(WHITEHEAD_BRAID, 3, components_rotation=rot)
        volumes.append(volume_from_dt(str(dt_code(d))).volume)
    assert all(v == pytest.approx(WHITEHEAD_VOLUME, abs=1e-6)
               for v in volumes)


def test_volume_invariant_under_component_reversal():
    d = _closure_diagram(WHITEHEAD_BRAID, 3, reverse_components=True)
    res = volume_from_dt(str(dt_code(d)))
    assert res.volume == pytest.approx(WHITEHEAD_VOLUME, abs=1e-6)
