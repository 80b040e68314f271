"""Hyperbolic surfaces with totally geodesic boundary from glued right-angled
hexagons, deformed by combinatorial curvature flows to prescribed boundary
lengths."""

from .conformal import (
    AdmissibilityError,
    boundary_margin,
    curvature,
    edge_length_derivative,
    laplacian,
    random_admissible_factor,
    scale_metric,
)
from .energy import SolveReport, calabi_energy, newton_solve, potential_energy
from .flows import (
    DefinitenessError,
    FlowSpec,
    FlowTrajectory,
    fractional_power,
    run_flow,
    vector_field,
)
from .hexagon import SideDomainError, arc_length, arc_length_partials, validate_sides
from .surface import (
    GluingError,
    SurfaceComplex,
    build_complex,
    make_one_holed_torus,
    make_pair_of_pants,
    make_random_surface,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "DefinitenessError",
    "FlowSpec",
    "FlowTrajectory",
    "GluingError",
    "SideDomainError",
    "SolveReport",
    "SurfaceComplex",
    "arc_length",
    "arc_length_partials",
    "boundary_margin",
    "build_complex",
    "calabi_energy",
    "curvature",
    "edge_length_derivative",
    "fractional_power",
    "laplacian",
    "make_one_holed_torus",
    "make_pair_of_pants",
    "make_random_surface",
    "newton_solve",
    "potential_energy",
    "random_admissible_factor",
    "run_flow",
    "scale_metric",
    "validate_sides",
    "vector_field",
]
