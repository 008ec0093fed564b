"""Exact integer lattice geometry.

Everything here works on plain ``(x, y)`` integer tuples and keeps all
arithmetic in integers.  Areas are measured in *halves* (half square
units), which makes every area on the lattice an exact ``int``.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Iterable, NamedTuple, Sequence

Point = tuple[int, int]
Halves = int  # area measured in units of 1/2

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class Segment(NamedTuple):
    """Undirected lattice segment stored with canonically ordered endpoints."""

    a: Point
    b: Point

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int]) -> "Segment":
        pa, pb = (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))
        if pa == pb:
            raise ValueError(f"degenerate segment at {pa}")
        return cls(pa, pb) if pa < pb else cls(pb, pa)


def seg(ax: int, ay: int, bx: int, by: int) -> Segment:
    return Segment.of((ax, ay), (bx, by))


def cross(o: Point, a: Point, b: Point) -> int:
    """Cross product of OA x OB; sign gives the turn direction."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def between(a: Point, p: Point, b: Point) -> bool:
    """True if collinear point p lies on the closed segment a-b."""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def strictly_between(a: Point, p: Point, b: Point) -> bool:
    return p != a and p != b and between(a, p, b)


def interior_lattice_count(s: Segment) -> int:
    """Number of lattice points strictly between the endpoints of s."""
    return gcd(abs(s.b[0] - s.a[0]), abs(s.b[1] - s.a[1])) - 1


def is_primitive(s: Segment) -> bool:
    """A segment is primitive when no lattice point lies on its interior."""
    return interior_lattice_count(s) == 0


def segment_points(s: Segment) -> list[Point]:
    """All lattice points on s, endpoints included, in order a -> b."""
    dx, dy = s.b[0] - s.a[0], s.b[1] - s.a[1]
    k = gcd(abs(dx), abs(dy))
    sx, sy = dx // k, dy // k
    return [(s.a[0] + i * sx, s.a[1] + i * sy) for i in range(k + 1)]


def segments_conflict(s1: Segment, s2: Segment) -> bool:
    """True if the segments share any point other than a common endpoint.

    Covers proper crossings, T-touches (an endpoint in the other segment's
    interior) and collinear overlap.  Sharing one or both endpoints alone
    is not a conflict.
    """
    p1, p2 = s1.a, s1.b
    q1, q2 = s2.a, s2.b
    d1 = cross(p1, p2, q1)
    d2 = cross(p1, p2, q2)
    d3 = cross(q1, q2, p1)
    d4 = cross(q1, q2, p2)

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        # Collinear: conflict unless the overlap is at most a shared endpoint.
        if p1[0] != p2[0]:
            key = 0
        else:
            key = 1
        lo1, hi1 = sorted((p1[key], p2[key]))
        lo2, hi2 = sorted((q1[key], q2[key]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        return lo < hi

    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and \
            ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True

    # Touching cases: a point of one segment strictly inside the other.
    if d1 == 0 and strictly_between(p1, q1, p2):
        return True
    if d2 == 0 and strictly_between(p1, q2, p2):
        return True
    if d3 == 0 and strictly_between(q1, p1, q2):
        return True
    if d4 == 0 and strictly_between(q1, p2, q2):
        return True
    return False


# ---------------------------------------------------------------------------
# Cycles


def signed_area_halves(points: Sequence[Point]) -> Halves:
    """Shoelace sum of a closed vertex walk; equals twice the signed area."""
    total = 0
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def is_simple_cycle(points: Sequence[Point]) -> bool:
    """Check a vertex cycle for repeated vertices and edge intersections."""
    n = len(points)
    if n < 3 or len(set(points)) != n:
        return False
    edges = [Segment.of(points[i], points[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if segments_conflict(edges[i], edges[j]):
                return False
    # Adjacent edges share exactly one endpoint by construction, but a
    # 180-degree reversal would overlap; segments_conflict above catches it.
    return signed_area_halves(points) != 0


def normalize_cycle(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """Validate a simple cycle and return it counterclockwise."""
    pts = tuple((int(p[0]), int(p[1])) for p in points)
    if not is_simple_cycle(pts):
        raise ValueError(f"not a simple cycle: {pts}")
    if signed_area_halves(pts) < 0:
        pts = tuple(reversed(pts))
    return pts


def cycle_edges(points: Sequence[Point]) -> list[Segment]:
    n = len(points)
    return [Segment.of(points[i], points[(i + 1) % n]) for i in range(n)]


def corner_cycle(points: Sequence[Point]) -> tuple[Point, ...]:
    """Drop vertices that lie on the straight line between their neighbours."""
    pts = list(points)
    n = len(pts)
    out = [
        pts[i]
        for i in range(n)
        if cross(pts[i - 1], pts[i], pts[(i + 1) % n]) != 0
    ]
    if len(out) < 3:
        raise ValueError(f"cycle degenerates to a line: {points}")
    return tuple(out)


def shoelace_area(points: Sequence[Point]) -> Halves:
    """Exact area of a simple cycle, in halves."""
    pts = tuple(points)
    if not is_simple_cycle(pts):
        raise ValueError(f"not a simple cycle: {pts}")
    return abs(signed_area_halves(pts))


def pick_area(interior: int, boundary: int) -> Halves:
    """Lattice polygon area from census counts: I + B/2 - 1, in halves."""
    if boundary < 3:
        raise ValueError("a lattice cycle has at least 3 boundary points")
    return 2 * interior + boundary - 2


def point_in_cycle(p: Point, points: Sequence[Point]) -> str:
    """Exact point location against a simple cycle."""
    pts = tuple(points)
    for e in cycle_edges(pts):
        if cross(e.a, e.b, p) == 0 and between(e.a, p, e.b):
            return BOUNDARY
    return INSIDE if winding_number(p, pts) != 0 else OUTSIDE


def winding_number(p: Point, walk: Sequence[Point]) -> int:
    """Winding number of a closed vertex walk around p (p not on the walk).

    Works for non-simple walks: out-and-back excursions cancel.
    """
    wn = 0
    n = len(walk)
    px, py = p
    for i in range(n):
        a = walk[i]
        b = walk[(i + 1) % n]
        if a[1] <= py:
            if b[1] > py and cross(a, b, p) > 0:
                wn += 1
        else:
            if b[1] <= py and cross(a, b, p) < 0:
                wn -= 1
    return wn


def lattice_census(points: Sequence[Point]) -> tuple[list[Point], list[Point]]:
    """Boundary and strictly-interior lattice points of a simple cycle.

    The result is cross-checked: the Pick area from the counts must equal
    the shoelace area exactly.
    """
    pts = tuple(points)
    area = shoelace_area(pts)
    boundary: set[Point] = set()
    for e in cycle_edges(pts):
        boundary.update(segment_points(e))
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    interior: list[Point] = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            q = (x, y)
            if q in boundary:
                continue
            if winding_number(q, pts) != 0:
                interior.append(q)
    if pick_area(len(interior), len(boundary)) != area:
        raise AssertionError(
            f"census inconsistent with shoelace area for {pts}: "
            f"I={len(interior)} B={len(boundary)} area={area}/2"
        )
    return sorted(boundary), sorted(interior)


def random_simple_cycle(
    rng: random.Random,
    box: int = 10,
    min_vertices: int = 3,
    max_vertices: int = 8,
) -> tuple[Point, ...]:
    """Rejection-sample a simple lattice cycle inside a box of side ``box``."""
    while True:
        n = rng.randint(min_vertices, max_vertices)
        pts = []
        seen = set()
        while len(pts) < n:
            p = (rng.randint(0, box), rng.randint(0, box))
            if p not in seen:
                seen.add(p)
                pts.append(p)
        rng.shuffle(pts)
        if is_simple_cycle(tuple(pts)):
            return normalize_cycle(pts)
