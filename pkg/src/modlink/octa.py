"""Octahedral ideal triangulation of a link complement from a diagram.

Remove the link together with one point far above the diagram plane and
one far below.  Each crossing then carries one ideal octahedron with six
ideal vertices: T on the overstrand at the crossing, B on the understrand,
and four lateral vertices L_0..L_3 sitting at the two poles.  The twelve
octahedron edges are: the four equator edges L_s - L_{s+1}, each a
pole-to-pole arc through one of the four diagram regions at the crossing
(these become one edge class per diagram region), and the eight edges from
T or B to a pole (two classes per diagram arc).  Splitting the octahedron
around the new T-B axis edge gives four tetrahedra, one per germ gap:

    tet (q, s) vertices:  0 = T, 1 = B, 2 = L_s, 3 = L_{s+1}

Faces 2 and 3 are the internal vertical half-planes.  Face 1 of tet (q, s)
is {T, L_s, L_{s+1}} and belongs to the overstrand germ among slots
{s, s+1}; face 0 is {B, L_s, L_{s+1}} and belongs to the understrand germ.
Along each arc of the diagram the two faces owned by the germ at one end
are glued to the two owned by the germ at the other end; the interface
triangles are {strand point, pole, pole}, so the vertex maps are forced:
strand point to strand point, poles to poles.  In labels this yields the
permutation (0, 1, 3, 2) when the germ is on the same stratum (over/over
or under/under) at both ends and (1, 0, 2, 3) otherwise.

The link cusps are the vertex classes of the axis labels 0 and 1; the two
poles give two extra vertex classes with sphere links, so the complex has
4n tetrahedra and 4n + 2 edges.  Edge equations set every edge product to
exp(2*pi*i); completeness is imposed only at the link cusps.  Solutions
generally contain negatively oriented tetrahedra, but the Bloch-Wigner sum
still gives the hyperbolic volume of the complete structure.
"""

from __future__ import annotations

import random
from collections import deque

from .template import EXIT_SLOT, AugmentedLinkDiagram, Crossing
from .tri import GluingSystem, Triangulation

_SAME = (0, 1, 3, 2)  # over/over or under/under across the arc
_SWAP = (1, 0, 2, 3)  # over at one end, under at the other


def build_triangulation(crossings: list[Crossing]) -> Triangulation:
    """Four-tetrahedra-per-crossing triangulation of the link complement."""
    tri = Triangulation(4 * len(crossings))

    def tet(q: int, s: int) -> int:
        return 4 * q + s % 4

    for q in range(len(crossings)):
        # vertical internal faces: germ-gap tets s and s+1 share L_{s+1}
        for s in range(4):
            tri.add_gluing(tet(q, s), 2, tet(q, s + 1), 3, _SAME)

    for q, c in enumerate(crossings):
        for s_out in EXIT_SLOT.values():  # NE, NW: each arc handled once
            q2, s_in = c.arcs[s_out]
            a, b = c.is_over(s_out), crossings[q2].is_over(s_in)
            f1, f2 = (1 if a else 0), (1 if b else 0)
            perm = _SAME if a == b else _SWAP
            # left of the arc: gap tets s_out at q, s_in - 1 at q2
            tri.add_gluing(tet(q, s_out), f1, tet(q2, s_in - 1), f2, perm)
            # right of the arc: gap tets s_out - 1 at q, s_in at q2
            tri.add_gluing(tet(q, s_out - 1), f1, tet(q2, s_in), f2, perm)
    tri.validate()
    return tri


def link_vertex_classes(tri: Triangulation) -> list[list[tuple[int, int]]]:
    """Vertex classes on the link (containing an axis label 0 or 1)."""
    return [cls for cls in tri.vertex_classes()
            if any(v in (0, 1) for _, v in cls)]


def collapse_poles(tri: Triangulation, variant: int = 0) -> Triangulation:
    """Contract pole-to-link edges until no sphere-link vertex remains.

    The crossing complex triangulates the complement of the link plus the
    two poles; contracting an edge from a pole to a link cusp absorbs the
    pole into the cusp (sphere # torus = torus) without changing the
    manifold, yielding a genuine ideal triangulation of the link
    complement (edge count = tetrahedron count, one cusp per component).
    """
    limit = 4 * tri.n + 64
    for _ in range(limit):
        euler = {}
        spheres = 0
        for cls in tri.vertex_classes():
            chi = tri.link_euler(cls)
            spheres += chi == 2
            for node in cls:
                euler[node] = chi
        if spheres == 0:
            return tri
        # candidate edges: pole-to-cusp first, then pole-to-pole; among
        # those prefer the largest star (fewest surviving tetrahedra)
        cands = []
        for ec in tri.edge_classes():
            t, pair = ec[0]
            i, j = sorted(pair)
            chis = {euler[(t, i)], euler[(t, j)]}
            if chis == {0, 2}:
                tier = 0
            elif chis == {2}:
                tier = 1
            else:
                continue
            rep = min((t2, tuple(sorted(p))) for t2, p in ec)
            cands.append(((tier, -len(ec), rep), ec))
        cands.sort(key=lambda kv: kv[0])
        permitted = [ec for _, ec in cands if tri.collapse_permitted(ec)]
        if permitted:
            tri = tri.contract_edge(permitted[variant % len(permitted)])
        else:
            # no contraction is valid here; a 2-3 move near a pole opens
            # fresh candidates without changing the manifold
            for t, f in sorted(tri.glue):
                if tri.glue[(t, f)][0] == t:
                    continue
                if any(euler[(t, v)] == 2 for v in range(4) if v != f):
                    tri = tri.two_three(t, f)
                    break
            else:
                raise RuntimeError("pole collapse is stuck")
    raise RuntimeError("pole collapse did not terminate")


_EDGES = [(i, j) for i in range(4) for j in range(i + 1, 4)]


def _try_moves(tri: Triangulation, t: int) -> Triangulation | None:
    """Attempt a 3-2 or 2-0 move on an edge of tet t; None when stuck."""
    for i, j in _EDGES:
        star = tri.edge_star(t, i, j)
        k = len(star)
        if k == 3 and len({tt for tt, _ in star}) == 3:
            try:
                return tri.three_two(star)
            except ValueError:
                pass
        elif k == 2 and len({tt for tt, _ in star}) == 2:
            try:
                return tri.two_zero(star)
            except ValueError:
                pass
    return None


def _sweep(tri: Triangulation) -> Triangulation:
    """Apply 3-2 / 2-0 moves until none remains, via a tet worklist.

    After each move only the tetrahedra whose gluings changed are
    re-examined (surviving worklist entries are renumbered through the
    move's tet map), so a long descent costs near-linear total work
    instead of a full edge-class rebuild per move.
    """
    queue = deque(range(tri.n))
    queued = set(queue)
    while queue:
        t = queue.popleft()
        queued.discard(t)
        nxt = _try_moves(tri, t)
        if nxt is None:
            continue
        old2new = nxt._old2new
        fresh = [old2new[x] for x in queue if x in old2new]
        fresh.extend(sorted(nxt._changed))
        queue = deque()
        queued = set()
        for y in fresh:
            if y not in queued:
                queue.append(y)
                queued.add(y)
        tri = nxt
    return tri


def simplify(tri: Triangulation, variant: int = 0,
             patience: int = 25) -> Triangulation:
    """Reduce the tetrahedron count with 3-2 and 2-0 moves.

    Worklist sweeps apply every available valence-3 (3-2) and valence-2
    (2-0) simplification; when stuck, a few pseudo-random 2-3 moves
    (deterministically seeded by `variant`) shake the triangulation out
    of the local minimum.  Returns the smallest triangulation seen.
    """
    rng = random.Random(variant * 9176 + 13)
    best = tri = _sweep(tri)
    stall = 0
    while stall < patience:
        for _ in range(rng.randint(1, 3)):
            faces = sorted(k for k in tri.glue if tri.glue[k][0] != k[0])
            if not faces:
                break
            tri = tri.two_three(*rng.choice(faces))
        tri = _sweep(tri)
        if tri.n < best.n:
            best, stall = tri, 0
        else:
            stall += 1
        if tri.n > best.n + 8:
            tri = best
    return best


def link_complement_triangulation(crossings: list[Crossing],
                                  variant: int = 0) -> Triangulation:
    tri = simplify(collapse_poles(build_triangulation(crossings), variant),
                   variant)
    tri.validate()
    return tri


def link_gluing_system(crossings: list[Crossing]) -> GluingSystem:
    return link_complement_triangulation(crossings).gluing_system()


def diagram_gluing_system(diagram: AugmentedLinkDiagram) -> GluingSystem:
    return link_gluing_system(diagram.crossings)
