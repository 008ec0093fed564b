"""Planar subdivision of a set of non-crossing lattice segments.

Faces are traced with the classic half-edge walk: neighbours of every
vertex are sorted by angle (exact integer comparisons), and the successor
of the directed edge u->v is the edge v->w where w is the first neighbour
of v clockwise from u.  Bounded faces come out counterclockwise with
positive shoelace sum; each connected component additionally produces one
non-positive "outside" walk, which is how holes are detected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .geometry import Halves, Point, Segment, signed_area_halves, winding_number

DirEdge = tuple[Point, Point]


def _angle_half(d: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi)
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_cmp(d1: Point, d2: Point) -> int:
    h1, h2 = _angle_half(d1), _angle_half(d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def canonical_walk(walk: Sequence[Point]) -> tuple[Point, ...]:
    """Lexicographically least rotation of a closed vertex walk."""
    w = tuple(walk)
    n = len(w)
    best = None
    for i in range(n):
        rot = w[i:] + w[:i]
        if best is None or rot < best:
            best = rot
    return best


@dataclass(frozen=True)
class Face:
    """One bounded face of the arrangement.

    ``outer`` is the counterclockwise boundary walk; it repeats vertices
    when pendant structures attach to the boundary, so ``simple`` really
    means the walk is a plain cycle.  ``hole_components`` are the segment
    sets of structures floating inside the face, and ``area_halves``
    already excludes the area those structures enclose.
    """

    outer: tuple[Point, ...]
    simple: bool
    area_halves: Halves
    hole_components: tuple[frozenset[Segment], ...]
    hole_walks: tuple[tuple[Point, ...], ...]

    @property
    def key(self) -> tuple[Point, ...]:
        return canonical_walk(self.outer)

    @property
    def vertices(self) -> frozenset[Point]:
        return frozenset(self.outer)

    @property
    def edges(self) -> frozenset[Segment]:
        n = len(self.outer)
        return frozenset(
            Segment.of(self.outer[i], self.outer[(i + 1) % n]) for i in range(n)
        )

    def contains(self, p: Point) -> bool:
        """Strict interior test for a point not on any arrangement segment."""
        if winding_number(p, self.outer) == 0:
            return False
        return all(winding_number(p, hw) == 0 for hw in self.hole_walks)


class Arrangement:
    """Face structure of a drawn segment set."""

    def __init__(self, segments: Iterable[Segment]):
        self.segments = frozenset(segments)
        self._build()

    def _build(self) -> None:
        adj: dict[Point, list[Point]] = {}
        for s in self.segments:
            adj.setdefault(s.a, []).append(s.b)
            adj.setdefault(s.b, []).append(s.a)
        for v, nbrs in adj.items():
            nbrs.sort(
                key=cmp_to_key(
                    lambda p, q, v=v: _angle_cmp(
                        (p[0] - v[0], p[1] - v[1]), (q[0] - v[0], q[1] - v[1])
                    )
                )
            )
        self._adj = adj

        # Connected components via union-find on vertices.
        parent: dict[Point, Point] = {v: v for v in adj}

        def find(x: Point) -> Point:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.segments:
            ra, rb = find(s.a), find(s.b)
            if ra != rb:
                parent[ra] = rb
        self._component = {v: find(v) for v in adj}

        # Trace every directed edge into its face walk.
        walks: list[tuple[Point, ...]] = []
        walk_of: dict[DirEdge, int] = {}
        for s in self.segments:
            for start in ((s.a, s.b), (s.b, s.a)):
                if start in walk_of:
                    continue
                walk: list[Point] = []
                e = start
                while True:
                    walk_of[e] = len(walks)
                    walk.append(e[0])
                    u, v = e
                    ring = self._adj[v]
                    w = ring[ring.index(u) - 1]
                    e = (v, w)
                    if e == start:
                        break
                walks.append(tuple(walk))
        self._walk_of = walk_of

        areas = [signed_area_halves(w) for w in walks]
        bounded_idx = [i for i, a in enumerate(areas) if a > 0]
        outside_idx = {}
        for i, a in enumerate(areas):
            if a <= 0:
                outside_idx[self._component[walks[i][0]]] = i

        # Assign every component's outside walk to its smallest containing
        # bounded face from a different component; that face gains a hole.
        holes_of: dict[int, list[int]] = {i: [] for i in bounded_idx}
        for comp, oi in outside_idx.items():
            test = walks[oi][0]
            best = None
            for fi in bounded_idx:
                if self._component[walks[fi][0]] == comp:
                    continue
                if winding_number(test, walks[fi]) != 0:
                    if best is None or areas[fi] < areas[best]:
                        best = fi
            if best is not None:
                holes_of[best].append(oi)

        comp_segments: dict[Point, list[Segment]] = {}
        for s in self.segments:
            comp_segments.setdefault(self._component[s.a], []).append(s)

        faces = []
        for fi in bounded_idx:
            walk = walks[fi]
            hole_idx = sorted(holes_of[fi], key=lambda i: walks[i])
            hole_comps = tuple(
                frozenset(comp_segments[self._component[walks[i][0]]])
                for i in hole_idx
            )
            hole_walks = tuple(walks[i] for i in hole_idx)
            area = areas[fi] + sum(areas[i] for i in hole_idx)
            faces.append(
                Face(
                    outer=walk,
                    simple=len(set(walk)) == len(walk),
                    area_halves=area,
                    hole_components=hole_comps,
                    hole_walks=hole_walks,
                )
            )
        faces.sort(key=lambda f: f.key)
        self.faces: list[Face] = faces
        self.face_keys = {f.key for f in faces}

    def faces_with_edge(self, s: Segment) -> list[Face]:
        return [f for f in self.faces if s in f.edges]

    def face_at(self, p: Point) -> Face | None:
        """Smallest bounded face strictly containing p, if any."""
        best = None
        for f in self.faces:
            if f.contains(p):
                if best is None or f.area_halves < best.area_halves:
                    best = f
        return best
