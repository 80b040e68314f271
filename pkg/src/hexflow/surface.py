"""Combinatorics of surfaces glued from hexagonal faces.

Each face is a hexagon whose sides alternate in the cyclic order
r0 b0 r1 b1 r2 b2.  The red sides r0, r1, r2 are glued in pairs by a
fixed-point-free involution; the black sides become boundary arcs.  A side
(and likewise an arc) is addressed as ``(face, slot)`` with slot in
{0, 1, 2}: arc b_k is adjacent to red slots k and k+1 (mod 3) and opposite
red slot k+2 (mod 3).

Edges (glued red pairs), boundary components (cycles of arcs under the
successor map ``succ(f, k) = gluing(f, k+1 mod 3)``) and edge endpoints are
all derived from the gluing, never supplied, so inconsistent incidence data
is unrepresentable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Side",
    "GluingError",
    "SurfaceComplex",
    "build_complex",
    "make_pair_of_pants",
    "make_one_holed_torus",
    "make_random_surface",
]

Side = tuple[int, int]  # (face, slot), slot in {0, 1, 2}


class GluingError(ValueError):
    """The supplied side pairing is not a valid gluing."""


@dataclass(frozen=True)
class SurfaceComplex:
    """Immutable glued-hexagon complex with derived incidence data.

    ``edges`` are the matched red-side pairs, each stored with its
    lexicographically smaller side first and indexed in ascending order of
    that side.  ``boundary_components`` are the arc cycles, indexed by the
    smallest arc they contain.  ``edge_endpoints[e]`` is the ordered pair of
    boundary components at the two ends of edge e (equal for a self-edge).
    """

    num_faces: int
    gluing: dict[Side, Side]
    edges: tuple[tuple[Side, Side], ...]
    edge_of_side: dict[Side, int]
    boundary_components: tuple[tuple[Side, ...], ...]
    component_of_arc: dict[Side, int]
    edge_endpoints: tuple[tuple[int, int], ...]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_components(self) -> int:
        return len(self.boundary_components)

    @property
    def euler_characteristic(self) -> int:
        return -self.num_faces // 2

    def arcs(self) -> Iterator[Side]:
        for f in range(self.num_faces):
            for k in range(3):
                yield (f, k)


def _as_side(raw, num_faces: int) -> Side:
    try:
        f, k = int(raw[0]), int(raw[1])
    except (TypeError, ValueError, IndexError):
        raise GluingError(f"malformed side {raw!r}") from None
    if not 0 <= f < num_faces:
        raise GluingError(f"side ({f}, {k}) has face index out of range 0..{num_faces - 1}")
    if k not in (0, 1, 2):
        raise GluingError(f"side ({f}, {k}) has slot outside {{0, 1, 2}}")
    return (f, k)


def build_complex(num_faces: int, pairs: Iterable[Sequence]) -> SurfaceComplex:
    """Build and validate a complex from a list of glued side pairs."""
    if num_faces < 2 or num_faces % 2 != 0:
        raise GluingError(f"num_faces must be even and >= 2, got {num_faces}")

    gluing: dict[Side, Side] = {}
    for raw in pairs:
        s = _as_side(raw[0], num_faces)
        t = _as_side(raw[1], num_faces)
        if s == t:
            raise GluingError(f"self-paired side {s}")
        for side in (s, t):
            if side in gluing:
                raise GluingError(f"duplicate side {side}")
        gluing[s] = t
        gluing[t] = s

    all_sides = [(f, k) for f in range(num_faces) for k in range(3)]
    for side in all_sides:
        if side not in gluing:
            raise GluingError(f"unmatched side {side}")

    edges = tuple(sorted((s, gluing[s]) for s in all_sides if s < gluing[s]))
    edge_of_side: dict[Side, int] = {}
    for idx, (s, t) in enumerate(edges):
        edge_of_side[s] = idx
        edge_of_side[t] = idx

    # boundary cycles of the arc successor map; iterating sides in ascending
    # order makes each cycle start at its smallest arc
    seen: set[Side] = set()
    cycles: list[tuple[Side, ...]] = []
    for arc in all_sides:
        if arc in seen:
            continue
        cycle: list[Side] = []
        cur = arc
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            f, k = cur
            cur = gluing[(f, (k + 1) % 3)]
        cycles.append(tuple(cycle))
    cycles.sort(key=lambda cyc: cyc[0])
    component_of_arc: dict[Side, int] = {}
    for idx, cycle in enumerate(cycles):
        for arc in cycle:
            component_of_arc[arc] = idx

    endpoints = []
    for s, t in edges:
        f, k = s
        f2, j = t
        head = component_of_arc[(f, k)]
        tail = component_of_arc[(f, (k - 1) % 3)]
        # derived data is consistent by construction
        assert tail == component_of_arc[(f2, j)]
        assert head == component_of_arc[(f2, (j - 1) % 3)]
        endpoints.append((head, tail))

    return SurfaceComplex(
        num_faces=num_faces,
        gluing=gluing,
        edges=edges,
        edge_of_side=edge_of_side,
        boundary_components=tuple(cycles),
        component_of_arc=component_of_arc,
        edge_endpoints=tuple(endpoints),
    )


def make_pair_of_pants() -> SurfaceComplex:
    """Two hexagons glued into a genus-0 surface with three boundary circles."""
    return build_complex(2, [[(0, 0), (1, 0)], [(0, 1), (1, 2)], [(0, 2), (1, 1)]])


def make_one_holed_torus() -> SurfaceComplex:
    """Two hexagons glued into a genus-1 surface with one boundary circle."""
    return build_complex(2, [[(0, k), (1, k)] for k in range(3)])


def make_random_surface(num_faces: int, seed: int) -> SurfaceComplex:
    """Uniformly random perfect matching of the 3F red sides; seed-deterministic."""
    if num_faces < 2 or num_faces % 2 != 0:
        raise GluingError(f"num_faces must be even and >= 2, got {num_faces}")
    rng = random.Random(seed)
    sides = [(f, k) for f in range(num_faces) for k in range(3)]
    rng.shuffle(sides)
    pairs = list(zip(sides[0::2], sides[1::2]))
    return build_complex(num_faces, pairs)
