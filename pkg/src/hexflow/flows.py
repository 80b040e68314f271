"""Curvature flows dw/dt = Laplacian^s (K_target - K) on the admissible polytope.

s = 0 gives the combinatorial Yamabe flow dw/dt = K - K_target, s = 1 the
combinatorial Calabi flow, and general real s the fractional flow defined
through the symmetric eigendecomposition of the (negative definite)
Laplacian.  All of them converge to the unique metric with the prescribed
boundary lengths; the integrator here is an adaptive explicit RK4 with
guards that keep trajectories inside the admissible set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import conformal, energy
from .hexagon import SideDomainError
from .surface import SurfaceComplex

__all__ = [
    "DefinitenessError",
    "fractional_power",
    "FlowSpec",
    "FlowSample",
    "FlowTrajectory",
    "vector_field",
    "run_flow",
    "CONVERGED",
    "HORIZON_REACHED",
    "STEP_UNDERFLOW",
]

CONVERGED = "converged"
HORIZON_REACHED = "horizon_reached"
STEP_UNDERFLOW = "step_underflow"

DT_UNDERFLOW = 1e-14
DT_GROWTH = 1.5
DT_GROWTH_STREAK = 5
DT_MAX_FACTOR = 100.0
MARGIN_DROP_FACTOR = 0.1


class DefinitenessError(RuntimeError):
    """The negated Laplacian was expected to be positive definite but is not."""


def fractional_power(L, s: float) -> np.ndarray:
    """-(-L)^s through the eigendecomposition of -L (eigenvalues ascending).

    Symmetric negative definite for every real s; s = 0 gives -I and s = 1
    returns L itself (up to roundoff).
    """
    L = np.asarray(L, dtype=float)
    lam, V = np.linalg.eigh(-L)
    if lam[0] <= 0.0:
        raise DefinitenessError(
            f"-Laplacian has nonpositive eigenvalue {lam[0]:.6g}; state is not admissible"
        )
    return -(V * lam**s) @ V.T


@dataclass(frozen=True)
class FlowSpec:
    """Parameters of one flow run.

    K_bar entries must be strictly positive and w0 admissible; tol is the
    convergence threshold on ||K - K_bar||_inf.
    """

    s: float
    K_bar: np.ndarray
    w0: np.ndarray
    tol: float = 1e-10
    dt0: float = 1e-2
    t_max: float = 1e4
    sample_every: int = 10


@dataclass(frozen=True)
class FlowSample:
    t: float
    w: np.ndarray
    K: np.ndarray
    calabi_energy: float
    potential_energy: float
    boundary_margin: float
    dt: float


@dataclass
class FlowTrajectory:
    samples: list[FlowSample] = field(default_factory=list)
    status: str = ""

    @property
    def final(self) -> FlowSample:
        return self.samples[-1]

    @property
    def t_final(self) -> float:
        return self.final.t

    @property
    def w_final(self) -> np.ndarray:
        return self.final.w

    @property
    def K_final(self) -> np.ndarray:
        return self.final.K


def _validate_spec(spec: FlowSpec, bg, cx: SurfaceComplex) -> tuple[np.ndarray, np.ndarray]:
    K_bar = conformal.validate_target(spec.K_bar, cx)
    w0 = conformal.validate_factor(spec.w0, cx)
    if spec.tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {spec.tol}")
    if spec.dt0 <= 0.0:
        raise ValueError(f"dt0 must be > 0, got {spec.dt0}")
    if spec.t_max < 0.0:
        raise ValueError(f"t_max must be >= 0, got {spec.t_max}")
    if spec.sample_every < 1:
        raise ValueError(f"sample_every must be >= 1, got {spec.sample_every}")
    if conformal.boundary_margin(w0, bg, cx) <= 0.0:
        raise conformal.AdmissibilityError("initial factor w0 is not admissible")
    return K_bar, w0


def vector_field(w, spec: FlowSpec, bg, cx: SurfaceComplex) -> np.ndarray:
    """Flow velocity Laplacian^s (K_bar - K) at the factor w."""
    l = conformal.scale_metric(w, bg, cx)
    K = conformal.curvature(l, cx)
    Ls = fractional_power(conformal.laplacian(w, bg, cx), spec.s)
    return Ls @ (np.asarray(spec.K_bar, dtype=float) - K)


def _rk4_step(w, dt, deriv):
    k1 = deriv(w)
    k2 = deriv(w + 0.5 * dt * k1)
    k3 = deriv(w + 0.5 * dt * k2)
    k4 = deriv(w + dt * k3)
    return w + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def run_flow(spec: FlowSpec, bg, cx: SurfaceComplex) -> FlowTrajectory:
    """Integrate the flow until the curvature error drops below spec.tol.

    Adaptive explicit RK4: a trial step is rejected (and dt halved) if any
    stage leaves the admissible set, if the boundary margin falls below
    MARGIN_DROP_FACTOR times its current value, or if the Calabi energy
    increases; dt grows by DT_GROWTH after DT_GROWTH_STREAK consecutive
    accepted steps, up to DT_MAX_FACTOR * dt0.  Samples are recorded at
    t = 0, every sample_every-th accepted step, and at the final state.
    """
    bg = conformal.validate_background_metric(bg, cx)
    K_bar, w0 = _validate_spec(spec, bg, cx)
    w = w0.copy()
    t = 0.0
    dt = spec.dt0
    dt_max = DT_MAX_FACTOR * spec.dt0

    def deriv(u):
        return vector_field(u, spec, bg, cx)

    traj = FlowTrajectory()

    def record(K: np.ndarray, used_dt: float) -> None:
        traj.samples.append(
            FlowSample(
                t=t,
                w=w.copy(),
                K=K.copy(),
                calabi_energy=energy.calabi_energy(K, K_bar),
                potential_energy=energy.potential_energy(w, K_bar, bg, cx),
                boundary_margin=conformal.boundary_margin(w, bg, cx),
                dt=used_dt,
            )
        )

    K = conformal.curvature(conformal.scale_metric(w, bg, cx), cx)
    record(K, dt)
    if float(np.max(np.abs(K - K_bar))) < spec.tol:
        traj.status = CONVERGED
        return traj

    streak = 0
    accepted = 0
    while True:
        if t >= spec.t_max:
            traj.status = HORIZON_REACHED
            break
        step = min(dt, spec.t_max - t)
        margin = conformal.boundary_margin(w, bg, cx)
        cal = energy.calabi_energy(K, K_bar)
        try:
            w_new = _rk4_step(w, step, deriv)
            l_new = conformal.scale_metric(w_new, bg, cx)
            K_new = conformal.curvature(l_new, cx)
            cal_new = energy.calabi_energy(K_new, K_bar)
            margin_new = conformal.boundary_margin(w_new, bg, cx)
            ok = margin_new > MARGIN_DROP_FACTOR * margin and cal_new <= cal * (1.0 + 1e-12)
        except (conformal.AdmissibilityError, SideDomainError, DefinitenessError):
            ok = False
        if ok:
            w, K = w_new, K_new
            t += step
            accepted += 1
            streak += 1
            if streak >= DT_GROWTH_STREAK:
                dt = min(dt * DT_GROWTH, dt_max)
                streak = 0
            if accepted % spec.sample_every == 0:
                record(K, step)
            if float(np.max(np.abs(K - K_bar))) < spec.tol:
                traj.status = CONVERGED
                break
        else:
            dt *= 0.5
            streak = 0
            if dt < DT_UNDERFLOW:
                traj.status = STEP_UNDERFLOW
                break
    if traj.samples[-1].t != t:
        record(K, dt)
    return traj
