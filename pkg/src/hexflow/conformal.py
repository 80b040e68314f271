"""Discrete hyperbolic metrics, vertex scaling, curvature, and its Jacobian.

A background metric assigns a positive length to every edge of a
``SurfaceComplex``.  A conformal factor w (one real per boundary component)
scales it by

    cosh(l_e / 2) = exp(w_i + w_j) * cosh(l~_e / 2),

where i, j are the boundary components at the two ends of edge e.  The set
of admissible w is the open convex polytope where every scaled length stays
positive, i.e. where every edge margin w_i + w_j + ln cosh(l~_e/2) is > 0.

The curvature K_i of a component is the total length of its boundary arcs;
the Jacobian dK/dw is the discrete Laplacian, symmetric and strictly
negative definite on the admissible set.
"""

from __future__ import annotations

import numpy as np

from . import hexagon
from .surface import SurfaceComplex

__all__ = [
    "AdmissibilityError",
    "validate_background_metric",
    "validate_factor",
    "validate_target",
    "edge_margins",
    "boundary_margin",
    "scale_metric",
    "curvature",
    "edge_length_derivative",
    "laplacian",
    "random_admissible_factor",
]


class AdmissibilityError(ValueError):
    """The conformal factor leaves the admissible set (a scaled length <= 0)."""


def validate_background_metric(lengths, cx: SurfaceComplex) -> np.ndarray:
    bg = np.asarray(lengths, dtype=float)
    if bg.shape != (cx.num_edges,):
        raise ValueError(f"expected {cx.num_edges} edge lengths, got shape {bg.shape}")
    if not np.all(np.isfinite(bg)) or np.any(bg <= 0.0):
        bad = int(np.argmin((bg > 0.0) & np.isfinite(bg)))
        raise ValueError(f"edge {bad} has invalid background length {bg[bad]!r}")
    return bg


def validate_factor(w, cx: SurfaceComplex) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.shape != (cx.num_components,):
        raise ValueError(f"expected {cx.num_components} factors, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("conformal factor entries must be finite")
    return w


def validate_target(K_bar, cx: SurfaceComplex) -> np.ndarray:
    K_bar = np.asarray(K_bar, dtype=float)
    if K_bar.shape != (cx.num_components,):
        raise ValueError(f"expected {cx.num_components} targets, got shape {K_bar.shape}")
    if not np.all(np.isfinite(K_bar)) or np.any(K_bar <= 0.0):
        raise ValueError("target curvatures must be finite and strictly positive")
    return K_bar


def edge_margins(w, bg, cx: SurfaceComplex) -> np.ndarray:
    """Per-edge slack w_i + w_j + ln cosh(l~_e / 2) of the admissibility constraints."""
    w = validate_factor(w, cx)
    bg = validate_background_metric(bg, cx)
    ends = np.asarray(cx.edge_endpoints, dtype=int)
    log_cosh_half = np.array([hexagon._log_cosh(x) for x in bg / 2.0])
    return w[ends[:, 0]] + w[ends[:, 1]] + log_cosh_half


def boundary_margin(w, bg, cx: SurfaceComplex) -> float:
    """Minimum edge margin; w is admissible iff this is > 0 (concave in w)."""
    return float(edge_margins(w, bg, cx).min())


def scale_metric(w, bg, cx: SurfaceComplex) -> np.ndarray:
    """Scaled edge lengths l with cosh(l/2) = exp(margin_e); requires admissible w."""
    m = edge_margins(w, bg, cx)
    if m.min() <= 0.0:
        e = int(np.argmax(m <= 0.0))
        raise AdmissibilityError(
            f"inadmissible factor: edge {e} has margin {m[e]:.6g} <= 0"
        )
    # l = 2 arccosh(e^m), via arccosh(1 + t) = log1p(t + sqrt(t (t + 2)))
    t = np.expm1(m)
    l = 2.0 * np.log1p(t + np.sqrt(t * (t + 2.0)))
    if np.any(l > hexagon.MAX_SIDE) or not np.all(np.isfinite(l)):
        e = int(np.argmax(~(l <= hexagon.MAX_SIDE)))
        raise AdmissibilityError(f"scaled length of edge {e} overflows {hexagon.MAX_SIDE:g}")
    return l


def curvature(l, cx: SurfaceComplex) -> np.ndarray:
    """Boundary-component lengths: K_i sums arc_length over the arcs of component i."""
    l = np.asarray(l, dtype=float)
    if l.shape != (cx.num_edges,):
        raise ValueError(f"expected {cx.num_edges} edge lengths, got shape {l.shape}")
    K = np.zeros(cx.num_components)
    for f in range(cx.num_faces):
        le = [l[cx.edge_of_side[(f, k)]] for k in range(3)]
        for k in range(3):
            theta = hexagon.arc_length(le[k], le[(k + 1) % 3], le[(k + 2) % 3])
            K[cx.component_of_arc[(f, k)]] += theta
    return K


def edge_length_derivative(l_e):
    """d l_e / d w_i = 2 coth(l_e / 2) for each endpoint occurrence of component i.

    A self-edge (both ends on one component) therefore contributes the value
    twice, i.e. 4 coth(l_e / 2) in total.
    """
    l_e = np.asarray(l_e, dtype=float)
    if np.any(l_e <= 0.0) or not np.all(np.isfinite(l_e)):
        raise ValueError(f"edge length must be positive and finite, got {l_e!r}")
    out = 2.0 / np.tanh(l_e / 2.0)
    return float(out) if out.ndim == 0 else out


def laplacian(w, bg, cx: SurfaceComplex) -> np.ndarray:
    """The Jacobian dK_i/dw_j, assembled per face by the chain rule.

    Symmetric and strictly negative definite at every admissible w.
    """
    l = scale_metric(w, bg, cx)
    dl_dw = 2.0 / np.tanh(l / 2.0)
    n = cx.num_components
    L = np.zeros((n, n))
    for f in range(cx.num_faces):
        eidx = [cx.edge_of_side[(f, k)] for k in range(3)]
        le = [l[e] for e in eidx]
        for k in range(3):
            i = cx.component_of_arc[(f, k)]
            parts = hexagon.arc_length_partials(le[k], le[(k + 1) % 3], le[(k + 2) % 3])
            for t in range(3):
                e = eidx[(k + t) % 3]
                contrib = parts[t] * dl_dw[e]
                for m in cx.edge_endpoints[e]:
                    L[i, m] += contrib
    return L


def random_admissible_factor(
    bg,
    cx: SurfaceComplex,
    rng: np.random.Generator,
    spread: float = 0.5,
    min_margin: float = 0.05,
) -> np.ndarray:
    """Random factor with boundary margin >= min_margin.

    Draws uniformly from [-spread, spread]^n and, if needed, shifts all
    components equally (each shift c raises every edge margin by 2c).
    """
    w = rng.uniform(-spread, spread, cx.num_components)
    m = boundary_margin(w, bg, cx)
    if m < min_margin:
        w = w + (min_margin - m) / 2.0
    return w
