"""Pachner moves, edge-collapse validity, and simplification.

The figure-eight knot complement is the workhorse fixture: its canonical
two-tetrahedron triangulation is reachable by simplification, and its
volume is a sensitive invariant that any valid move sequence must
preserve.
"""

import pytest

from modlink.octa import (build_triangulation, collapse_poles,
                          link_complement_triangulation, simplify)
from modlink.solver import CONVERGED, solve_volume
from modlink.template import _braid_closure_diagram

FIG8_BRAID = [(0, 1), (1, -1), (0, 1), (1, -1)]
FIG8_VOLUME = 2.029883212819


def fig8_crossings():
    crossings, _ = _braid_closure_diagram(
        FIG8_BRAID, 3, [("s", i) for i in range(3)])
    return crossings


def fig8_collapsed():
    return collapse_poles(build_triangulation(fig8_crossings()))


def solved_volume(tri):
    res = solve_volume(tri.gluing_system())
    assert res.status == CONVERGED, res
    return res.volume


def torus_only(tri):
    return all(tri.link_euler(c) == 0 for c in tri.vertex_classes())


def test_collapse_poles_removes_sphere_vertices():
    tri = fig8_collapsed()
    tri.validate()
    assert torus_only(tri)
    assert len(tri.edge_classes()) == tri.n


def test_collapse_permitted_rejects_loop_edges():
    tri = fig8_collapsed()
    # an edge class with both endpoints in the same vertex class is a loop
    # and can never be contracted (every remaining vertex class is a single
    # torus cusp here, so all edges are loops)
    assert torus_only(tri)
    assert not any(tri.collapse_permitted(ec) for ec in tri.edge_classes())


def test_two_three_preserves_volume():
    tri = simplify(fig8_collapsed())
    t, f = next((t, f) for (t, f) in sorted(tri.glue)
                if tri.glue[(t, f)][0] != t)
    bigger = tri.two_three(t, f)
    bigger.validate()
    assert bigger.n == tri.n + 1
    assert solved_volume(bigger) == pytest.approx(FIG8_VOLUME, abs=1e-9)


def test_three_two_inverts_two_three():
    tri = simplify(fig8_collapsed())
    t, f = next((t, f) for (t, f) in sorted(tri.glue)
                if tri.glue[(t, f)][0] != t)
    bigger = tri.two_three(t, f)
    candidates = [ec for ec in bigger.edge_classes()
                  if len(ec) == 3 and len({tt for tt, _ in ec}) == 3]
    assert candidates
    smaller = bigger.three_two(candidates[0])
    smaller.validate()
    assert smaller.n == tri.n
    assert solved_volume(smaller) == pytest.approx(FIG8_VOLUME, abs=1e-9)


def test_simplify_reaches_canonical_fig8():
    tri = simplify(fig8_collapsed())
    tri.validate()
    assert tri.n == 2
    assert solved_volume(tri) == pytest.approx(FIG8_VOLUME, abs=1e-9)


def test_two_zero_preserves_vertex_links():
    # grow a valence-2 edge with a 2-3 move then squash it back
    tri = simplify(fig8_collapsed())
    t, f = next((t, f) for (t, f) in sorted(tri.glue)
                if tri.glue[(t, f)][0] != t)
    bigger = tri.two_three(t, f)
    squashed = None
    for ec in bigger.edge_classes():
        if len(ec) == 2 and len({tt for tt, _ in ec}) == 2:
            try:
                squashed = bigger.two_zero(ec)
                break
            except ValueError:
                continue
    if squashed is None:
        pytest.skip("no squashable valence-2 edge in this complex")
    squashed.validate()
    assert squashed.n == bigger.n - 2


def test_variants_agree_on_volume():
    crossings = fig8_crossings()
    vols = {solved_volume(link_complement_triangulation(crossings, v))
            for v in range(3)}
    assert all(v == pytest.approx(FIG8_VOLUME, abs=1e-9) for v in vols)
