"""Diagram-to-volume pipeline.

For each collapse/simplification variant (a deterministic seed), build an
ideal triangulation of the link complement, solve the gluing and
completeness equations, and compute the Bloch-Wigner volume.  A geometric
solution (all shapes on one side of the real axis) is accepted
immediately: by Mostow rigidity it is the complete structure, so its
volume is certified.  Otherwise the scan continues, and the first
non-geometric converged result (or the most informative failure) is
reported after all variants are exhausted.
"""

from __future__ import annotations

from . import solver
from .octa import (build_triangulation, collapse_poles,
                   link_complement_triangulation)
from .template import AugmentedLinkDiagram, Crossing
from .solver import VolumeResult

DEFAULT_VARIANTS = 8


def link_volume(crossings: list[Crossing], variants: int = DEFAULT_VARIANTS,
                tol: float = 1e-10, max_iter: int = 100,
                restarts: int = 25, seed: int = 0) -> VolumeResult:
    nongeom = []
    fallback = None
    tris = []
    for v in range(variants):
        tri = link_complement_triangulation(crossings, v)
        tris.append(tri)
        sysm = tri.gluing_system()
        shapes = solver.solve_shapes(sysm, tol=tol, max_iter=max_iter,
                                     restarts=restarts, seed=seed)
        res = solver.volume_result(sysm, shapes)
        if res.status == solver.CONVERGED:
            return res
        if res.status == solver.CONVERGED_NON_GEOMETRIC:
            # with the full cusp-cycle constraints imposed, two variants
            # converging to the same volume certify it even when neither
            # root is positively oriented (Galois conjugates of the
            # geometric solution land elsewhere, so agreement is decisive)
            for prev in nongeom:
                if abs(prev.volume - res.volume) \
                        <= 1e-6 * max(1.0, abs(res.volume)):
                    return prev
            nongeom.append(res)
        elif fallback is None or _badness(res) < _badness(fallback):
            fallback = res
    if nongeom:
        return nongeom[0]
    if fallback.status != solver.NOT_HYPERBOLIC \
            and _probe_not_hyperbolic(crossings, tris, tol=tol,
                                      max_iter=max_iter, restarts=restarts,
                                      seed=seed):
        return solver.VolumeResult(None, solver.NOT_HYPERBOLIC,
                                   fallback.iterations, fallback.residual,
                                   fallback.n_tetrahedra)
    return fallback


def _minimal(sysm):
    """The system with only the two selected completeness rows per cusp.

    Non-hyperbolic complements show themselves on this looser variety:
    flat/abelian solutions of the branch-free multiplicative form, and
    degenerating shape drift under the log form, both of which the full
    cycle set suppresses.
    """
    return type(sysm)(sysm.n_tets, sysm.edge_rows, sysm.cusp_rows, [])


def _probe_not_hyperbolic(crossings, tris, **kw) -> bool:
    # the probe wants the loosest variety (a non-unimodular completeness
    # pair keeps abelian/flat solutions reachable), and only pays for the
    # multiplicative solve when the uncollapsed complex is small -- large
    # diagrams that failed to solve stay Failed rather than stall here
    raw = collapse_poles(build_triangulation(crossings))
    if raw.n <= 200:
        probe_sys = _minimal(raw.gluing_system(unimodular=False))
        probe = solver.solve_volume(probe_sys, form="multiplicative", **kw)
        if probe.status != solver.FAILED:
            return True
    for tri in tris[:2]:
        shapes = solver.solve_shapes(
            _minimal(tri.gluing_system(unimodular=False)), **kw)
        if shapes.degenerate:
            return True
    return False


def diagram_volume(diagram: AugmentedLinkDiagram, **kw) -> VolumeResult:
    return link_volume(diagram.crossings, **kw)


def _badness(res: VolumeResult) -> int:
    return 0 if res.status == solver.NOT_HYPERBOLIC else 1
