"""On-disk formats: surface, metric, factor, and target files, traces, reports.

Surface file:  {"num_faces": F, "gluing": [[[f, k], [f2, j]], ...]}
Metric file:   {"edge_lengths": [...]}   ordered by canonical edge index
Factor file:   {"w": [...]}              ordered by canonical component index
Target file:   {"K_bar": [...]}          all entries > 0
Trace files are CSV with one row per recorded flow sample; reports are JSON.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import conformal
from .energy import SolveReport
from .flows import FlowTrajectory
from .surface import SurfaceComplex, build_complex

__all__ = [
    "FileFormatError",
    "fmt",
    "load_surface",
    "surface_to_dict",
    "save_surface",
    "load_metric",
    "save_metric",
    "load_factors",
    "save_factors",
    "load_target",
    "save_target",
    "write_trace_csv",
    "flow_summary",
    "write_flow_report",
    "solve_report_to_dict",
    "write_solve_report",
]


class FileFormatError(ValueError):
    """An input file does not match its documented schema."""


def fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return f"{float(x):.17g}"


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: expected a JSON object")
    return doc


def _require(doc: dict, key: str, path) -> object:
    if key not in doc:
        raise FileFormatError(f"{path}: missing key {key!r}")
    return doc[key]


def load_surface(path) -> SurfaceComplex:
    doc = _load_json(path)
    num_faces = _require(doc, "num_faces", path)
    gluing = _require(doc, "gluing", path)
    if not isinstance(num_faces, int) or not isinstance(gluing, list):
        raise FileFormatError(f"{path}: num_faces must be an integer and gluing a list")
    return build_complex(num_faces, gluing)


def surface_to_dict(cx: SurfaceComplex) -> dict:
    return {
        "num_faces": cx.num_faces,
        "gluing": [[list(s), list(t)] for s, t in cx.edges],
    }


def save_surface(cx: SurfaceComplex, path) -> None:
    Path(path).write_text(json.dumps(surface_to_dict(cx)) + "\n")


def _load_vector(path, key: str) -> np.ndarray:
    doc = _load_json(path)
    raw = _require(doc, key, path)
    try:
        vec = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: {key} must be a list of numbers") from exc
    if vec.ndim != 1:
        raise FileFormatError(f"{path}: {key} must be a flat list")
    return vec


def load_metric(path, cx: SurfaceComplex) -> np.ndarray:
    vec = _load_vector(path, "edge_lengths")
    try:
        return conformal.validate_background_metric(vec, cx)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def save_metric(lengths, path) -> None:
    Path(path).write_text(json.dumps({"edge_lengths": list(map(float, lengths))}) + "\n")


def load_factors(path, cx: SurfaceComplex) -> np.ndarray:
    vec = _load_vector(path, "w")
    try:
        return conformal.validate_factor(vec, cx)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def save_factors(w, path) -> None:
    Path(path).write_text(json.dumps({"w": list(map(float, w))}) + "\n")


def load_target(path, cx: SurfaceComplex) -> np.ndarray:
    vec = _load_vector(path, "K_bar")
    try:
        return conformal.validate_target(vec, cx)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def save_target(K_bar, path) -> None:
    Path(path).write_text(json.dumps({"K_bar": list(map(float, K_bar))}) + "\n")


def write_trace_csv(path, traj: FlowTrajectory) -> None:
    n = len(traj.samples[0].w)
    header = (
        ["t"]
        + [f"w_{i}" for i in range(n)]
        + [f"K_{i}" for i in range(n)]
        + ["calabi_energy", "potential_energy", "boundary_margin", "dt"]
    )
    lines = [",".join(header)]
    for s in traj.samples:
        row = (
            [fmt(s.t)]
            + [fmt(x) for x in s.w]
            + [fmt(x) for x in s.K]
            + [fmt(s.calabi_energy), fmt(s.potential_energy), fmt(s.boundary_margin), fmt(s.dt)]
        )
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def flow_summary(traj: FlowTrajectory, K_bar) -> dict:
    final = traj.final
    return {
        "status": traj.status,
        "t_final": float(fmt(final.t)),
        "w_final": [float(fmt(x)) for x in final.w],
        "K_final": [float(fmt(x)) for x in final.K],
        "curvature_error": float(fmt(np.max(np.abs(final.K - np.asarray(K_bar))))),
    }


def write_flow_report(path, summary) -> None:
    Path(path).write_text(json.dumps(summary, sort_keys=True) + "\n")


def solve_report_to_dict(report: SolveReport) -> dict:
    return {
        "status": report.status,
        "iterations": report.iterations,
        "w_star": [float(fmt(x)) for x in report.w_star],
        "residual_history": [float(fmt(r)) for r in report.residual_history],
    }


def write_solve_report(path, report: SolveReport) -> None:
    Path(path).write_text(json.dumps(solve_report_to_dict(report), sort_keys=True) + "\n")
