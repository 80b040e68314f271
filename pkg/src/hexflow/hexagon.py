"""Trigonometry of hyperbolic right-angled hexagons.

Any three positive numbers are the lengths of three pairwise non-adjacent
sides of a unique right-angled hexagon (no triangle inequality is needed).
Given such a triple, ``arc_length`` returns the side lying between the first
two and opposite the third; on a glued surface these are the boundary arcs
whose total length is the curvature of a boundary component.
"""

from __future__ import annotations

import math

__all__ = [
    "MAX_SIDE",
    "SideDomainError",
    "validate_sides",
    "arc_length",
    "arc_length_partials",
]

# cosh/sinh of anything much larger overflows double precision
MAX_SIDE = 700.0

_LOG2 = math.log(2.0)


class SideDomainError(ValueError):
    """A hexagon side length is outside the domain (0, MAX_SIDE]."""


def validate_sides(a: float, b: float, c: float) -> None:
    """Check that (a, b, c) is a realizable side triple; raise naming the offender."""
    for name, value in (("a", a), ("b", b), ("c", c)):
        if not math.isfinite(value):
            raise SideDomainError(f"side {name}={value!r} is not finite")
        if value <= 0.0:
            raise SideDomainError(f"side {name}={value!r} must be > 0")
        if value > MAX_SIDE:
            raise SideDomainError(f"side {name}={value!r} exceeds {MAX_SIDE:g}")


def _acosh1p(t: float) -> float:
    # arccosh(1 + t), accurate near t = 0
    return math.log1p(t + math.sqrt(t * (t + 2.0)))


def _log_cosh(x: float) -> float:
    x = abs(x)
    if x > 20.0:
        return x - _LOG2 + math.log1p(math.exp(-2.0 * x))
    return math.log(math.cosh(x))


def _log_sinh(x: float) -> float:
    if x > 20.0:
        return x - _LOG2 + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


def _log_add(p: float, q: float) -> float:
    hi, lo = (p, q) if p >= q else (q, p)
    return hi + math.log1p(math.exp(lo - hi))


def _arc_excess(a: float, b: float, c: float) -> tuple[float, float]:
    """Return (cosh(theta) - 1, log(cosh(theta) - 1)).

    cosh(theta) - 1 = (cosh(a - b) + cosh c) / (sinh a sinh b); the log form
    is authoritative when the direct quotient over/underflows.
    """
    den = math.sinh(a) * math.sinh(b)
    if den > 0.0 and math.isfinite(den):
        num = math.cosh(a - b) + math.cosh(c)
        if math.isfinite(num):
            t = num / den
            if math.isfinite(t) and t > 0.0:
                return t, math.log(t)
    log_t = _log_add(_log_cosh(a - b), _log_cosh(c)) - _log_sinh(a) - _log_sinh(b)
    if log_t > 709.0:
        return math.inf, log_t
    return math.exp(log_t), log_t


def arc_length(a: float, b: float, c: float) -> float:
    """Length of the hexagon side between the sides of lengths a and b.

    cosh(theta) = (cosh a cosh b + cosh c) / (sinh a sinh b); symmetric in
    (a, b), increasing in c, and blowing up as a or b tends to 0.
    """
    validate_sides(a, b, c)
    t, log_t = _arc_excess(a, b, c)
    if not math.isfinite(t):
        # theta = log(2t) up to O(1/t)
        return _LOG2 + log_t
    if t == 0.0:
        # quotient underflowed; theta ~ sqrt(2t) is still representable
        return math.exp(0.5 * (_LOG2 + log_t))
    return _acosh1p(t)


def arc_length_partials(a: float, b: float, c: float) -> tuple[float, float, float]:
    """Partial derivatives of arc_length with respect to (a, b, c).

    Implicit differentiation of the cosine rule:
      d theta/da = -(cosh b + cosh a cosh c) / (sinh^2 a sinh b sinh theta)
      d theta/dc =  sinh c / (sinh a sinh b sinh theta)
    with the a/b roles swapped for d theta/db.  d theta/dc > 0 always.
    """
    validate_sides(a, b, c)
    t, log_t = _arc_excess(a, b, c)
    # log sinh(theta) = (log t + log(t + 2)) / 2
    log_st = 0.5 * (log_t + _log_add(log_t, _LOG2))
    if log_st < -740.0:
        raise SideDomainError(
            "sinh(theta) underflowed; side lengths are too extreme to differentiate"
        )
    sinh_theta = math.exp(log_st)
    sa, sb = math.sinh(a), math.sinh(b)
    ca, cb, cc = math.cosh(a), math.cosh(b), math.cosh(c)
    num_a = cb + ca * cc
    num_b = ca + cb * cc
    den_a = sa * sa * sb * sinh_theta
    den_b = sb * sb * sa * sinh_theta
    den_c = sa * sb * sinh_theta
    if all(map(math.isfinite, (num_a, num_b, den_a, den_b, den_c))):
        return -num_a / den_a, -num_b / den_b, math.sinh(c) / den_c
    # rebuild the same quotients in log space when intermediates overflow
    lca, lcb, lcc = _log_cosh(a), _log_cosh(b), _log_cosh(c)
    lsa, lsb = _log_sinh(a), _log_sinh(b)
    d_a = -math.exp(_log_add(lcb, lca + lcc) - 2.0 * lsa - lsb - log_st)
    d_b = -math.exp(_log_add(lca, lcb + lcc) - 2.0 * lsb - lsa - log_st)
    d_c = math.exp(_log_sinh(c) - lsa - lsb - log_st)
    return d_a, d_b, d_c
