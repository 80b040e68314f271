"""Calabi energy, the convex line-integral potential, and a damped Newton solver.

The Calabi energy 0.5 * sum (K_i - K_target_i)^2 measures the curvature
defect.  Because the curvature Jacobian is symmetric, the defect field
(K - K_target) is exact, and its line integral from 0 defines a smooth
convex potential on the admissible polytope whose unique critical point
solves K(w) = K_target.  The Newton solver finds that point directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import conformal, hexagon
from .surface import SurfaceComplex

__all__ = [
    "calabi_energy",
    "curvature_defect_integral",
    "potential_energy",
    "SolveReport",
    "newton_solve",
]

# quadrature for the potential: 16-node Gauss-Legendre per segment of
# infinity-norm span at most 0.25
_GL_NODES, _GL_WEIGHTS = leggauss(16)
SEGMENT_SPAN = 0.25


def calabi_energy(K, K_bar) -> float:
    """0.5 * ||K - K_bar||^2; zero exactly at the prescribed curvature."""
    K = np.asarray(K, dtype=float)
    K_bar = np.asarray(K_bar, dtype=float)
    if K.shape != K_bar.shape:
        raise ValueError(f"dimension mismatch: {K.shape} vs {K_bar.shape}")
    d = K - K_bar
    return 0.5 * float(d @ d)


def curvature_defect_integral(w_start, w_end, K_bar, bg, cx: SurfaceComplex) -> float:
    """Integral of sum_i (K_i - K_bar_i) dw_i along the straight segment.

    Both endpoints must be admissible; the whole segment then is, because the
    admissible set is convex.
    """
    w_start = conformal.validate_factor(w_start, cx)
    w_end = conformal.validate_factor(w_end, cx)
    K_bar = conformal.validate_target(K_bar, cx)
    bg = conformal.validate_background_metric(bg, cx)
    for endpoint in (w_start, w_end):
        if conformal.boundary_margin(endpoint, bg, cx) <= 0.0:
            raise conformal.AdmissibilityError("segment endpoint is not admissible")
    delta = w_end - w_start
    span = float(np.max(np.abs(delta))) if delta.size else 0.0
    if span == 0.0:
        return 0.0
    n_seg = max(1, math.ceil(span / SEGMENT_SPAN))
    total = 0.0
    for j in range(n_seg):
        for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
            tau = (j + 0.5 + 0.5 * node) / n_seg
            l = conformal.scale_metric(w_start + tau * delta, bg, cx)
            K = conformal.curvature(l, cx)
            total += weight * float((K - K_bar) @ delta)
    return total * 0.5 / n_seg


def potential_energy(w, K_bar, bg, cx: SurfaceComplex) -> float:
    """Convex potential: minus the defect-field line integral from 0 to w.

    Gradient is -(K(w) - K_bar); decreasing along every curvature flow.
    """
    zero = np.zeros(cx.num_components)
    return -curvature_defect_integral(zero, w, K_bar, bg, cx)


@dataclass
class SolveReport:
    """Outcome of newton_solve.

    residual_history holds ||K - K_bar||_inf before each iteration and after
    the last; iterations counts accepted Newton steps.
    """

    status: str  # converged | max_iterations | line_search_failed
    w_star: np.ndarray
    iterations: int
    residual_history: list[float] = field(default_factory=list)


def newton_solve(
    K_bar,
    w0,
    bg,
    cx: SurfaceComplex,
    tol: float = 1e-10,
    max_iter: int = 50,
) -> SolveReport:
    """Damped Newton iteration for the curvature prescription K(w) = K_bar.

    Each step solves Laplacian(w) d = -(K - K_bar) and backtracks the step
    length (halving from 1) until the trial point is admissible and the
    Calabi energy decreases.  The solution is unique, so convergence
    identifies the prescribed metric.
    """
    K_bar = conformal.validate_target(K_bar, cx)
    bg = conformal.validate_background_metric(bg, cx)
    w = conformal.validate_factor(w0, cx).copy()
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")

    K = conformal.curvature(conformal.scale_metric(w, bg, cx), cx)
    residuals = [float(np.max(np.abs(K - K_bar)))]
    iterations = 0
    while residuals[-1] >= tol:
        if iterations >= max_iter:
            return SolveReport("max_iterations", w, iterations, residuals)
        L = conformal.laplacian(w, bg, cx)
        d = np.linalg.solve(L, -(K - K_bar))
        energy_now = calabi_energy(K, K_bar)
        alpha = 1.0
        while True:
            w_try = w + alpha * d
            try:
                l_try = conformal.scale_metric(w_try, bg, cx)
                K_try = conformal.curvature(l_try, cx)
                if calabi_energy(K_try, K_bar) < energy_now:
                    break
            except (conformal.AdmissibilityError, hexagon.SideDomainError):
                pass
            alpha *= 0.5
            if alpha < 1e-12:
                return SolveReport("line_search_failed", w, iterations, residuals)
        w, K = w_try, K_try
        iterations += 1
        residuals.append(float(np.max(np.abs(K - K_bar))))
    return SolveReport("converged", w, iterations, residuals)
