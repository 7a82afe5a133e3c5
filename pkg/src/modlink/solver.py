"""Newton solver for gluing + completeness equations in log-shape coordinates.

Unknowns: w_j = log z_j per tetrahedron.  Edge rows are enforced in log
form -- sum of corner logs (l0 = w, l1 = -log(1-z), l2 = log((z-1)/z))
equals 2 pi i -- with branches tracked by continuity along the Newton
path; this targets the geometric solution directly, where every dihedral
angle lies in (0, pi) and each edge's angle sum is exactly 2 pi.  Cusp
(completeness) rows are kept in multiplicative form (sign * prod of
corner parameters = 1), which is branch-free, since the winding of a
holonomy log at the complete structure depends on the combinatorial path.
The rectangular system is solved by damped least squares; restarts draw
from the documented distribution (uniform argument in (0, pi),
log-modulus in [-1, 1]).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dilog import MAX_TET_VOLUME, bloch_wigner
from .tri import GluingSystem

TWO_PI = 2.0 * math.pi

CONVERGED = "Converged"
CONVERGED_NON_GEOMETRIC = "ConvergedNonGeometric"
FAILED = "Failed"
NOT_HYPERBOLIC = "NotHyperbolic"


@dataclass
class ShapeAssignment:
    shapes: np.ndarray  # complex z per tet
    residual: float
    iterations: int
    converged: bool
    degenerate: bool


@dataclass
class VolumeResult:
    volume: float | None
    status: str
    iterations: int
    residual: float
    n_tetrahedra: int

    def volume_or_nan(self) -> float:
        return self.volume if self.volume is not None else float("nan")


def _tracked_logs(z: np.ndarray, prev: np.ndarray | None) -> np.ndarray:
    """(3, T) array of corner logs, branch-adjusted to stay near prev."""
    l0 = np.log(z)
    l1 = -np.log(1.0 - z)
    l2 = np.log((z - 1.0) / z)
    logs = np.vstack([l0, l1, l2])
    if prev is not None:
        k = np.round((prev.imag - logs.imag) / TWO_PI)
        logs = logs + 1j * TWO_PI * k
    return logs


class _System:
    def __init__(self, sys: GluingSystem, form: str = "log"):
        if form not in ("log", "multiplicative"):
            raise ValueError(f"unknown residual form {form!r}")
        self.form = form
        self.T = sys.n_tets
        self.edge_rows = [sorted(r.items()) for r in sys.edge_rows]
        self.cusp_rows = [(r.sign, sorted(r.exponents.items()))
                          for r in list(sys.cusp_rows) + list(sys.extra_rows)]
        self.R = len(self.edge_rows) + len(self.cusp_rows)

    def residual_jacobian(self, z, logs):
        T = self.T
        res = np.zeros(self.R, dtype=complex)
        jac = np.zeros((self.R, T), dtype=complex)
        # d l / d w for the three corner log types
        d0 = np.ones(T, dtype=complex)
        d1 = z / (1.0 - z)
        d2 = 1.0 / (z - 1.0)
        dl = (d0, d1, d2)
        for i, row in enumerate(self.edge_rows):
            acc = 0j
            for (t, typ), c in row:
                acc += c * logs[typ, t]
            if self.form == "log":
                res[i] = acc - 2j * math.pi
                for (t, typ), c in row:
                    jac[i, t] += c * dl[typ][t]
            else:
                prod = np.exp(complex(acc))
                res[i] = prod - 1.0
                for (t, typ), c in row:
                    jac[i, t] += prod * c * dl[typ][t]
        off = len(self.edge_rows)
        for i, (sign, row) in enumerate(self.cusp_rows):
            lacc = 0j
            for (t, typ), c in row:
                lacc += c * logs[typ, t]
            prod = sign * np.exp(complex(lacc))
            res[off + i] = prod - 1.0
            for (t, typ), c in row:
                jac[off + i, t] += prod * c * dl[typ][t]
        return res, jac


def solve_shapes(sys: GluingSystem, init: complex | np.ndarray | None = None,
                 tol: float = 1e-10, max_iter: int = 100,
                 restarts: int = 25, seed: int = 0,
                 form: str = "log") -> ShapeAssignment:
    # overflowing trial steps produce inf/nan residuals and are rejected
    # by the damping loop; silence the vectorized warnings
    with np.errstate(over="ignore", invalid="ignore"):
        return _solve_shapes(sys, init, tol, max_iter, restarts, seed, form)


def _newton(S, z, tol, max_iter):
    """Damped Gauss-Newton from z; returns (z, rnorm, iterations)."""
    w = np.log(z)
    logs = _tracked_logs(z, None)
    res, jac = S.residual_jacobian(z, logs)
    rnorm = float(np.max(np.abs(res)))
    it = 0
    while it < max_iter and rnorm >= tol:
        it += 1
        step, *_ = np.linalg.lstsq(jac, -res, rcond=None)
        lam = 1.0
        improved = False
        for _ in range(30):
            w_new = w + lam * step
            z_new = np.exp(w_new)
            if (np.any(np.abs(z_new) < 1e-12)
                    or np.any(np.abs(z_new - 1.0) < 1e-12)
                    or np.any(np.abs(z_new) > 1e12)):
                lam *= 0.5
                continue
            logs_new = _tracked_logs(z_new, logs)
            res_new, jac_new = S.residual_jacobian(z_new, logs_new)
            rn = float(np.max(np.abs(res_new)))
            if rn < rnorm:
                w, z, logs, res, jac, rnorm = (w_new, z_new, logs_new,
                                               res_new, jac_new, rn)
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return z, rnorm, it


def _degenerate(z) -> bool:
    return bool(np.any(np.abs(z) < 1e-8)
                or np.any(np.abs(z - 1.0) < 1e-8)
                or np.any(np.abs(z) > 1e8))


def _solve_shapes(sys, init, tol, max_iter, restarts, seed, form) -> ShapeAssignment:
    # the full system carries every cusp cycle; directly Newton-solving it
    # stalls in spurious least-squares minima once it is heavily
    # overdetermined, so each attempt first solves the minimal system
    # (edge rows + the selected completeness pair per cusp) and then
    # polishes its root against the full cycle set, which either confirms
    # the complete structure or rejects a cone (Dehn-filled) root
    S_full = _System(sys, form)
    extras = list(sys.extra_rows) if getattr(sys, "extra_rows", None) else []
    if extras:
        S_min = _System(type(sys)(sys.n_tets, sys.edge_rows,
                                  sys.cusp_rows, []), form)
    else:
        S_min = S_full
    T = S_full.T
    rng = np.random.default_rng(seed)
    if init is None:
        init = cmath.exp(1j * math.pi / 3)
    z0 = (np.full(T, init, dtype=complex)
          if np.isscalar(init) or isinstance(init, complex) else
          np.asarray(init, dtype=complex))

    best = None
    total_iters = 0
    for attempt in range(restarts + 1):
        if attempt == 0:
            z = z0.copy()
        else:
            args = rng.uniform(0.0, math.pi, T)
            mods = np.exp(rng.uniform(-1.0, 1.0, T))
            z = mods * np.exp(1j * args)
        z, rnorm, it = _newton(S_min, z, tol, max_iter)
        total_iters += it
        if S_min is not S_full and rnorm < tol and not _degenerate(z):
            z, rnorm, it = _newton(S_full, z, tol, max_iter)
            total_iters += it
        elif S_min is not S_full:
            logs = _tracked_logs(z, None)
            res, _ = S_full.residual_jacobian(z, logs)
            rnorm = float(np.max(np.abs(res)))
        cand = ShapeAssignment(shapes=z, residual=rnorm, iterations=it,
                               converged=rnorm < tol,
                               degenerate=_degenerate(z))
        if cand.converged and not cand.degenerate and (
                form == "multiplicative" or _hyperbolic_volume(z)):
            # a solution carrying volume; in multiplicative form flat
            # (abelian) branches also count -- they witness that the
            # equations are solvable but the complement is not hyperbolic
            cand.iterations = total_iters
            return cand
        if best is None or _rank(cand) < _rank(best):
            best = cand
    best.iterations = total_iters
    return best


def _hyperbolic_volume(z) -> bool:
    return abs(sum(bloch_wigner(zi) for zi in z)) > FLAT_IM


def _rank(a: ShapeAssignment):
    # prefer converged non-degenerate, then converged, then small residual
    return (not a.converged, a.degenerate, a.residual)


FLAT_IM = 1e-6


def volume_result(sys: GluingSystem, shapes: ShapeAssignment) -> VolumeResult:
    n = sys.n_tets
    if not shapes.converged:
        return VolumeResult(None, FAILED, shapes.iterations,
                            shapes.residual, n)
    z = shapes.shapes
    if shapes.degenerate:
        return VolumeResult(None, NOT_HYPERBOLIC, shapes.iterations,
                            shapes.residual, n)
    vol = float(sum(bloch_wigner(zi) for zi in z))
    if np.all(np.abs(z.imag) < FLAT_IM) or abs(vol) < FLAT_IM:
        # flat (or degenerate) solution: no hyperbolic volume
        return VolumeResult(None, NOT_HYPERBOLIC, shapes.iterations,
                            shapes.residual, n)
    # the mirror solution (all shapes conjugated) carries the same volume
    geometric = np.all(z.imag > 0.0) or np.all(z.imag < 0.0)
    vol = abs(vol)
    status = CONVERGED if geometric else CONVERGED_NON_GEOMETRIC
    assert vol <= 4 * n * MAX_TET_VOLUME + 1e-6
    return VolumeResult(vol, status, shapes.iterations, shapes.residual, n)


def solve_volume(sys: GluingSystem, **kw) -> VolumeResult:
    return volume_result(sys, solve_shapes(sys, **kw))
