"""Bounded-exhaustive enumeration of lattice shapes up to symmetry.

Convex polygons are generated as closed fans of angularly sorted edge
vectors (k copies of a primitive direction form one edge with k lattice
steps), pruned by bounding box and by suffix feasibility of returning to
the start.  Shapes are deduplicated under the 8 square-lattice symmetries
plus translation.  A deliberately naive generator over corner subsets
cross-checks the counts on small boxes.
"""

from __future__ import annotations

from functools import cmp_to_key, lru_cache
from itertools import combinations
from math import gcd

from .engine import GameState, Variant
from .geometry import (
    Point,
    Segment,
    corner_cycle,
    cross,
    lattice_census,
    normalize_cycle,
    signed_area_halves,
)
from .shapes import Region, build_state, region_moves

_SYMMETRIES = (
    lambda x, y: (x, y),
    lambda x, y: (-y, x),
    lambda x, y: (-x, -y),
    lambda x, y: (y, -x),
    lambda x, y: (-x, y),
    lambda x, y: (y, x),
    lambda x, y: (x, -y),
    lambda x, y: (-y, -x),
)


def canonical_cycle(points) -> tuple[Point, ...]:
    """Congruence-class key of a cycle under symmetry and translation."""
    best = None
    points = corner_cycle(points)
    for f in _SYMMETRIES:
        pts = [f(x, y) for x, y in points]
        dx = min(p[0] for p in pts)
        dy = min(p[1] for p in pts)
        pts = normalize_cycle([(x - dx, y - dy) for x, y in pts])
        n = len(pts)
        for i in range(n):
            rot = pts[i:] + pts[:i]
            if best is None or rot < best:
                best = rot
    return best


def canonical_region(region: Region) -> tuple:
    """Congruence-class key of a region (outer cycle plus interior segments)."""
    best = None
    for f in _SYMMETRIES:
        pts = [f(x, y) for x, y in region.outer]
        segs = [
            (f(*s.a), f(*s.b)) for s in region.interior_segments
        ]
        xs = [p[0] for p in pts] + [p[0] for ab in segs for p in ab]
        ys = [p[1] for p in pts] + [p[1] for ab in segs for p in ab]
        dx, dy = min(xs), min(ys)
        cyc = normalize_cycle(corner_cycle([(x - dx, y - dy) for x, y in pts]))
        n = len(cyc)
        cyc = min(cyc[i:] + cyc[:i] for i in range(n))
        key = (
            cyc,
            tuple(
                sorted(
                    Segment.of((a[0] - dx, a[1] - dy), (b[0] - dx, b[1] - dy))
                    for a, b in segs
                )
            ),
        )
        if best is None or key < best:
            best = key
    return best


def _angle_cmp(d1: Point, d2: Point) -> int:
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


@lru_cache(maxsize=16)
def _primitive_dirs(max_box: int) -> tuple[Point, ...]:
    dirs = [
        (dx, dy)
        for dx in range(-max_box, max_box + 1)
        for dy in range(-max_box, max_box + 1)
        if (dx, dy) != (0, 0) and gcd(abs(dx), abs(dy)) == 1
    ]
    dirs.sort(key=cmp_to_key(_angle_cmp))
    return tuple(dirs)


def _triangle_has_interior_dot(u: Point, v: Point, w: Point) -> bool:
    """Any lattice point strictly inside triangle uvw (area via Pick)."""
    area2 = abs(cross(u, v, w))
    b = (
        gcd(abs(u[0] - v[0]), abs(u[1] - v[1]))
        + gcd(abs(v[0] - w[0]), abs(v[1] - w[1]))
        + gcd(abs(w[0] - u[0]), abs(w[1] - u[1]))
    )
    # area2 = 2*I + B - 2  =>  I = (area2 - b + 2) / 2
    return area2 - b + 2 > 0


def _ear_blocked(u: Point, v: Point, w: Point) -> bool:
    """No single move can cut the corner v between boundary points u, w.

    The chord u-w is unplayable iff it is non-primitive or some interior
    dot sits strictly inside the corner triangle (an iris segment can only
    reach the chord by ending inside that triangle).
    """
    if gcd(abs(u[0] - w[0]), abs(u[1] - w[1])) != 1:
        return True
    return _triangle_has_interior_dot(u, v, w)


def convex_polygons(
    max_box: int,
    boundary_points: int | None = None,
    ear_blocked_only: bool = False,
) -> list[tuple[Point, ...]]:
    """All convex lattice cycles with bounding box <= max_box, up to symmetry.

    ``boundary_points`` fixes the total lattice point count of the
    boundary; ``ear_blocked_only`` keeps only polygons in which no corner
    admits an ear chord (a necessary condition for reduced eyes).
    """
    dirs = _primitive_dirs(max_box)
    n = len(dirs)
    max_units = boundary_points if boundary_points else 4 * max_box

    @lru_cache(maxsize=None)
    def feasible(i: int, sx: int, sy: int) -> bool:
        """Can directions i.. bring the walk back to the origin?"""
        if sx == 0 and sy == 0:
            return True
        if i == n:
            return False
        dx, dy = dirs[i]
        # Try all sensible multiples of this direction, then skip it.
        k = 1
        while True:
            nsx, nsy = sx + k * dx, sy + k * dy
            if abs(nsx) > 2 * max_box or abs(nsy) > 2 * max_box:
                break
            if feasible(i + 1, nsx, nsy):
                return True
            k += 1
        return feasible(i + 1, sx, sy)

    results: dict[tuple, tuple[Point, ...]] = {}
    verts: list[Point] = [(0, 0)]
    edge_units: list[int] = []

    def corner_ok(idx_new_edge_start: int) -> bool:
        # The corner completed by starting a new edge: its neighbours are
        # one lattice step along each adjacent edge.
        if not ear_blocked_only:
            return True
        v = verts[idx_new_edge_start]
        prev = verts[idx_new_edge_start - 1]
        nxt = verts[idx_new_edge_start + 1] if idx_new_edge_start + 1 < len(verts) else None
        assert nxt is not None
        du = (prev[0] - v[0], prev[1] - v[1])
        g = gcd(abs(du[0]), abs(du[1]))
        u = (v[0] + du[0] // g, v[1] + du[1] // g)
        dw = (nxt[0] - v[0], nxt[1] - v[1])
        g = gcd(abs(dw[0]), abs(dw[1]))
        w = (v[0] + dw[0] // g, v[1] + dw[1] // g)
        return _ear_blocked(u, v, w)

    def close_ok() -> bool:
        # Only the corner at the start vertex becomes fixed on closure; all
        # other corners were checked as their second edge began.
        if ear_blocked_only:
            cyc = verts[:-1]
            if not _ear_blocked(cyc[-1], cyc[0], cyc[1]):
                return False
        return True

    def extent_ok() -> bool:
        xs = [p[0] for p in verts]
        ys = [p[1] for p in verts]
        return max(xs) - min(xs) <= max_box and max(ys) - min(ys) <= max_box

    def rec(i: int, units: int) -> None:
        x, y = verts[-1]
        if (x, y) == (0, 0) and len(verts) > 1:
            if (
                len(verts) >= 4
                and signed_area_halves(verts[:-1]) > 0
                and (boundary_points is None or units == boundary_points)
                and close_ok()
            ):
                corners = corner_cycle(verts[:-1])
                ox = min(p[0] for p in corners)
                oy = min(p[1] for p in corners)
                cyc = normalize_cycle([(x - ox, y - oy) for x, y in corners])
                results.setdefault(canonical_cycle(cyc), cyc)
            return
        if i == n or units >= max_units:
            return
        if not feasible(i, x, y):
            return
        # Option 1: skip this direction entirely.
        rec(i + 1, units)
        # Option 2: use it as the next edge with multiplicity k.
        dx, dy = dirs[i]
        k = 0
        base_len = len(verts)
        while units + k < max_units:
            k += 1
            verts.append((verts[-1][0] + dx, verts[-1][1] + dy))
            if not extent_ok():
                break
            if len(verts) >= 3 and k == 1:
                # The corner at the edge's start vertex is now fixed.
                if not corner_ok(base_len - 1):
                    break
            rec(i + 1, units + k)
        del verts[base_len:]

    rec(0, 0)
    return sorted(results.values())


def naive_convex_polygons(
    max_box: int, boundary_points: int | None = None
) -> list[tuple[Point, ...]]:
    """Brute-force cross-check: corner subsets in strictly convex position."""
    dots = [(x, y) for x in range(max_box + 1) for y in range(max_box + 1)]
    results: dict[tuple, tuple[Point, ...]] = {}
    max_corners = min(len(dots), 8 if max_box <= 4 else 12)
    for r in range(3, max_corners + 1):
        for subset in combinations(dots, r):
            hull = _strict_hull(subset)
            if hull is None or len(hull) != r:
                continue
            cyc = normalize_cycle(hull)
            xs = [p[0] for p in cyc]
            ys = [p[1] for p in cyc]
            if max(xs) - min(xs) > max_box or max(ys) - min(ys) > max_box:
                continue
            if boundary_points is not None:
                b, _ = lattice_census(cyc)
                if len(b) != boundary_points:
                    continue
            results.setdefault(canonical_cycle(cyc), cyc)
    return sorted(results.values())


def _strict_hull(points) -> list[Point] | None:
    """Convex hull if every input point is a strict hull corner."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return None

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) != len(pts):
        return None
    return hull


# ---------------------------------------------------------------------------
# Expanded irises and reduced eyes


def chords_all_blockable(outer: tuple[Point, ...]) -> bool:
    """Necessary condition for a reduced eye: every legal boundary chord
    could at least in principle be cut off by an iris.

    A chord with every interior dot strictly on one side can never be
    crossed by a segment between interior dots, so it stays playable no
    matter the iris and the region cannot be reduced.
    """
    from .shapes import boundary_walk_points

    region = Region.of(outer)
    interior = region.interior_points()
    walk = boundary_walk_points(region.outer)
    n = len(walk)
    corners = list(region.outer)
    m = len(corners)
    edge_lines = [(corners[i], corners[(i + 1) % m]) for i in range(m)]
    for i in range(n):
        for j in range(i + 1, n):
            if j - i == 1 or (i == 0 and j == n - 1):
                continue  # adjacent boundary points: the edge is drawn
            u, w = walk[i], walk[j]
            if gcd(abs(u[0] - w[0]), abs(u[1] - w[1])) != 1:
                continue
            if any(
                cross(a, b, u) == 0 and cross(a, b, w) == 0
                for a, b in edge_lines
            ):
                continue  # lies along a supporting edge line
            signs = {(cross(u, w, p) > 0) for p in interior if cross(u, w, p) != 0}
            strict = all(cross(u, w, p) != 0 for p in interior)
            if strict and len(signs) == 1:
                return False
    return True


def expanded_irises(
    outer: tuple[Point, ...], variant: Variant
) -> list[tuple[frozenset[Segment], GameState]]:
    """All interior structures reachable by play that cannot be extended.

    Starting from the bare closed boundary, grow segments between interior
    dots through the engine (so closures claim and block exactly as in a
    game) until no interior-to-interior move is legal.  Each maximal leaf
    is an expanded iris.
    """
    region0 = Region.of(outer)
    interior = set(region0.interior_points())
    base = build_state(region0, variant)
    leaves: dict[frozenset[Segment], GameState] = {}
    seen: set[frozenset[Segment]] = set()

    def ii_moves(state: GameState) -> list[Segment]:
        return [
            m
            for m in region_moves(state, region0.outer)
            if m.a in interior and m.b in interior
        ]

    def rec(state: GameState, added: frozenset[Segment]) -> None:
        if added in seen:
            return
        seen.add(added)
        moves = ii_moves(state)
        if not moves:
            leaves.setdefault(added, state)
            return
        for m in moves:
            nxt = state.clone()
            nxt.play(m)
            rec(nxt, added | {m})

    rec(base, frozenset())
    return sorted(leaves.items(), key=lambda kv: sorted(kv[0]))


def reduced_eyes(
    max_box: int, variant: Variant
) -> list[tuple[Region, GameState]]:
    """All reduced eyes with convex boundary in the box, up to symmetry.

    Scope: convex outer cycles (every paper instance is convex) whose
    corners all fail the ear test, paired with every expanded iris that
    forms a single spanning structure detached from the boundary, filtered
    by the exact reduced-eye test.
    """
    from .shapes import is_reduced_eye

    out: dict[tuple, tuple[Region, GameState]] = {}
    for outer in convex_polygons(max_box, ear_blocked_only=True):
        region0 = Region.of(outer)
        if not region0.interior_points():
            continue
        if not chords_all_blockable(outer):
            continue
        for iris, state in expanded_irises(outer, variant):
            region = Region(region0.outer, iris)
            if not is_reduced_eye(region, variant):
                continue
            out.setdefault(canonical_region(region), (region, state))
    return [out[k] for k in sorted(out)]
