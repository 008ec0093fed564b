"""Classification of closed regions and constructive claiming procedures.

A region is a closed boundary cycle plus the segments drawn inside it.
The taxonomy implemented here: a region is *claimable* when a single move
claims area; *reduced* when nothing claims and every boundary-to-boundary
chord would split it into two parts that both contain interior dots;
*extremely reduced* when no boundary-to-boundary chord is legal at all.
An *eye* is a region whose interior dots form one connected structure
(the iris) that never touches the boundary; hanging / split / lazy refine
that picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, NamedTuple, Sequence

from .engine import BoardSpec, GameState, IllegalMove, Player, Variant
from .geometry import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    Halves,
    Point,
    Segment,
    cycle_edges,
    lattice_census,
    normalize_cycle,
    point_in_cycle,
    segment_points,
    shoelace_area,
    winding_number,
)


class ReductionClass(Enum):
    CLAIMABLE = "claimable"
    NOT_REDUCED = "not-reduced"
    REDUCED = "reduced"
    EXTREMELY_REDUCED = "extremely-reduced"


class EyeKind(Enum):
    NOT_AN_EYE = "not-an-eye"
    EYE = "eye"
    HANGING_EYE = "hanging-eye"
    SPLIT_HANGING_EYE = "split-hanging-eye"


class IrisComponent(NamedTuple):
    points: frozenset[Point]  # interior dots of the component
    segments: frozenset[Segment]
    attachments: frozenset[Point]  # boundary dots it touches


@dataclass(frozen=True)
class EyeClass:
    kind: EyeKind
    lazy: bool
    iris_expanded: bool
    iris_components: tuple[IrisComponent, ...]


@dataclass(frozen=True)
class Region:
    """Closed region: counterclockwise outer cycle plus interior segments."""

    outer: tuple[Point, ...]
    interior_segments: frozenset[Segment]

    @staticmethod
    def of(outer: Iterable[Sequence[int]], interior=()) -> "Region":
        cyc = normalize_cycle(outer)
        segs = frozenset(
            s if isinstance(s, Segment) else Segment.of(s[0], s[1]) for s in interior
        )
        return Region(cyc, segs)

    @property
    def area_halves(self) -> Halves:
        return shoelace_area(self.outer)

    def census(self) -> tuple[list[Point], list[Point]]:
        return lattice_census(self.outer)

    def boundary_points(self) -> list[Point]:
        return self.census()[0]

    def interior_points(self) -> list[Point]:
        return self.census()[1]

    def board(self) -> BoardSpec:
        pts = list(self.outer)
        for s in self.interior_segments:
            pts += [s.a, s.b]
        w = max(p[0] for p in pts) + 1
        h = max(p[1] for p in pts) + 1
        return BoardSpec(max(w, 2), max(h, 2))


def boundary_pieces(outer: Sequence[Point]) -> list[Segment]:
    """The outer cycle as primitive one-move pieces."""
    out = []
    for e in cycle_edges(outer):
        pts = segment_points(e)
        out += [Segment.of(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    return out


def boundary_walk_points(outer: Sequence[Point]) -> list[Point]:
    """All boundary lattice points, in cyclic order along the cycle."""
    out: list[Point] = []
    n = len(outer)
    for i in range(n):
        a, b = outer[i], outer[(i + 1) % n]
        pts = segment_points(Segment.of(a, b))
        if pts[0] != a:
            pts.reverse()
        out += pts[:-1]
    return out


def build_state(
    region: Region,
    variant: Variant,
    missing: Iterable[Segment] = (),
    to_move: Player | None = None,
    board: BoardSpec | None = None,
) -> GameState:
    """Engine position for a region: interior structure first, then boundary.

    Interior cycles close (and are claimed) as they complete, which is how
    partially claimed irises arise.  Boundary pieces listed in ``missing``
    are left undrawn.
    """
    state = GameState(board or region.board(), variant)
    skip = {s if isinstance(s, Segment) else Segment.of(s[0], s[1]) for s in missing}
    # A segment nested inside an iris cycle must be drawn before the cycle
    # closes and claims, so retry deferred segments until none makes progress.
    pending = sorted(region.interior_segments)
    while pending:
        deferred = []
        progress = False
        for s in pending:
            if state.reject_reason(s) is None:
                state.play(s)
                progress = True
            else:
                deferred.append(s)
        if not progress:
            raise IllegalMove(state.reject_reason(deferred[0]), deferred[0])
        pending = deferred
    for s in boundary_pieces(region.outer):
        if s not in skip:
            state.play(s)
    if to_move is not None:
        state.to_move = to_move
    return state


def _scale2(walk: Sequence[Point]) -> tuple[Point, ...]:
    return tuple((2 * x, 2 * y) for x, y in walk)


def segment_in_region(s: Segment, outer: Sequence[Point]) -> bool:
    """True if s lies within the closed region (boundary included)."""
    if point_in_cycle(s.a, outer) == OUTSIDE or point_in_cycle(s.b, outer) == OUTSIDE:
        return False
    mid = (s.a[0] + s.b[0], s.a[1] + s.b[1])
    return point_in_cycle(mid, _scale2(outer)) != OUTSIDE


def region_moves(state: GameState, outer: Sequence[Point]) -> list[Segment]:
    """Legal moves whose whole extent stays within the region."""
    return [s for s in state.legal_moves() if segment_in_region(s, outer)]


def claimed_halves(state: GameState) -> Halves:
    return sum(c.area_halves for c in state.claims)


def move_claims(state: GameState, s: Segment) -> Halves:
    """Area a move would claim, probed on a clone."""
    probe = state.clone()
    out = probe.play(s)
    return sum(c.area_halves for c in out.claimed)


# ---------------------------------------------------------------------------
# Reduction classification


def classify_reduction(region: Region, variant: Variant) -> ReductionClass:
    state = build_state(region, variant)
    moves = region_moves(state, region.outer)
    if any(move_claims(state, m) for m in moves):
        return ReductionClass.CLAIMABLE

    bset = set(region.boundary_points())
    interior = set(region.interior_points())
    chords = [m for m in moves if m.a in bset and m.b in bset]
    if not chords:
        return ReductionClass.EXTREMELY_REDUCED

    walk = boundary_walk_points(region.outer)
    index = {p: i for i, p in enumerate(walk)}
    for chord in chords:
        i, j = sorted((index[chord.a], index[chord.b]))
        side1 = walk[i : j + 1]
        side2 = walk[j:] + walk[: i + 1]
        for side in (side1, side2):
            inside = sum(1 for p in interior if winding_number(p, side) != 0)
            if inside == 0:
                return ReductionClass.NOT_REDUCED
    return ReductionClass.REDUCED


# ---------------------------------------------------------------------------
# Eye classification


def classify_eye(
    region: Region, variant: Variant = Variant.POLYGONS, state: GameState | None = None
) -> EyeClass:
    if state is None:
        state = build_state(region, variant)
    interior = set(region.interior_points())
    bset = set(region.boundary_points())
    if not interior:
        return EyeClass(EyeKind.NOT_AN_EYE, lazy=False, iris_expanded=True,
                        iris_components=())

    # Interior dots swallowed by claimed sub-regions.
    claimed_interior = {
        p
        for p in interior
        if any(winding_number(p, c.outer) != 0 for c in state.claims)
    }

    # Connected components of the interior structure; two segments belong
    # together only when they share an *interior* dot, so structures meeting
    # only at a boundary vertex stay separate irises.
    segs = sorted(region.interior_segments)
    parent = list(range(len(segs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pt_to_segs: dict[Point, list[int]] = {}
    for i, s in enumerate(segs):
        for p in (s.a, s.b):
            if p in interior:
                pt_to_segs.setdefault(p, []).append(i)
    for ids in pt_to_segs.values():
        for i in ids[1:]:
            ri, r0 = find(i), find(ids[0])
            if ri != r0:
                parent[ri] = r0

    groups: dict[int, list[int]] = {}
    for i in range(len(segs)):
        groups.setdefault(find(i), []).append(i)

    components: list[IrisComponent] = []
    covered: set[Point] = set()
    for ids in groups.values():
        pts, attach, ss = set(), set(), set()
        for i in ids:
            ss.add(segs[i])
            for p in (segs[i].a, segs[i].b):
                if p in interior:
                    pts.add(p)
                elif p in bset:
                    attach.add(p)
        covered |= pts
        components.append(
            IrisComponent(frozenset(pts), frozenset(ss), frozenset(attach))
        )
    if not region.interior_segments:
        # Bare region: every interior dot is its own degenerate point iris
        # (the single dot of a plain diamond is the canonical case).
        for p in sorted(interior - claimed_interior):
            components.append(IrisComponent(frozenset([p]), frozenset(), frozenset()))
    components.sort(key=lambda c: sorted(c.points))

    spanned = covered | claimed_interior | {
        p for c in components for p in c.points
    }
    lazy = bool(interior - spanned)

    moves = region_moves(state, region.outer)
    expanded = not any(m.a in interior and m.b in interior for m in moves)

    if any(len(c.attachments) >= 2 for c in components):
        kind = EyeKind.NOT_AN_EYE
    elif len(components) == 0:
        kind = EyeKind.EYE  # everything interior to claimed area
    elif len(components) == 1:
        kind = (
            EyeKind.HANGING_EYE
            if components[0].attachments
            else EyeKind.EYE
        )
    else:
        kind = EyeKind.SPLIT_HANGING_EYE

    return EyeClass(
        kind=kind,
        lazy=lazy,
        iris_expanded=expanded,
        iris_components=tuple(components),
    )


def is_expanded_eye(region: Region, variant: Variant = Variant.POLYGONS) -> bool:
    """Single free iris spanning all interior dots, iris fully expanded."""
    eye = classify_eye(region, variant)
    return eye.kind is EyeKind.EYE and not eye.lazy and eye.iris_expanded


def is_reduced_eye(region: Region, variant: Variant = Variant.POLYGONS) -> bool:
    """Expanded eye in which additionally no boundary chord is playable."""
    if not is_expanded_eye(region, variant):
        return False
    return classify_reduction(region, variant) is ReductionClass.EXTREMELY_REDUCED


# ---------------------------------------------------------------------------
# One-turn claiming searches


def one_turn_claim_search(
    state: GameState,
    moves_fn: Callable[[GameState], list[Segment]],
    target_halves: Halves,
    node_budget: int = 2_000_000,
) -> list[Segment] | None:
    """Exhaustive search for a chain of claiming moves reaching the target.

    Every move in the chain must claim, so the chain runs within a single
    turn.  Returns the move list, or None when no chain exists (the search
    is exhaustive over claiming moves, memoized by drawn-segment set).
    """
    failed: set[frozenset[Segment]] = set()
    nodes = 0

    def rec(st: GameState, gained: Halves, seq: list[Segment]) -> list[Segment] | None:
        nonlocal nodes
        if gained >= target_halves:
            return list(seq)
        key = frozenset(st.segments)
        if key in failed:
            return None
        nodes += 1
        if nodes > node_budget:
            raise RuntimeError("one-turn search budget exhausted")
        for m in moves_fn(st):
            nxt = st.clone()
            out = nxt.play(m)
            got = sum(c.area_halves for c in out.claimed)
            if not got:
                continue
            seq.append(m)
            r = rec(nxt, gained + got, seq)
            if r is not None:
                return r
            seq.pop()
        failed.add(key)
        return None

    return rec(state, 0, [])


def max_one_turn_gain(
    state: GameState,
    moves_fn: Callable[[GameState], list[Segment]] | None = None,
) -> Halves:
    """Largest area a single turn of chained claiming moves can take."""
    if moves_fn is None:
        moves_fn = lambda st: st.legal_moves()
    best_by_state: dict[frozenset[Segment], Halves] = {}

    def rec(st: GameState) -> Halves:
        key = frozenset(st.segments)
        if key in best_by_state:
            return best_by_state[key]
        best = 0
        for m in moves_fn(st):
            nxt = st.clone()
            out = nxt.play(m)
            got = sum(c.area_halves for c in out.claimed)
            if not got:
                continue
            best = max(best, got + rec(nxt))
        best_by_state[key] = best
        return best

    return rec(state)


def claim_all_no_interior(region: Region, variant: Variant) -> list[Segment]:
    """One-turn sequence claiming a closed region with no interior dots.

    Greedy is safe here: after any claiming move the leftovers are again
    closed regions without interior dots, so no claiming move is ever a
    dead end.
    """
    if region.interior_points():
        raise ValueError("region has interior lattice points")
    state = build_state(region, variant)
    # In the polygons variant a bare closed region claims itself at closure,
    # so nothing may be left to do.
    seq: list[Segment] = []
    while claimed_halves(state) < region.area_halves:
        for m in region_moves(state, region.outer):
            if move_claims(state, m):
                state.play(m)
                seq.append(m)
                break
        else:
            raise AssertionError(
                f"no claiming move although area remains in {region.outer}"
            )
    return seq


def expand_iris(
    region: Region, variant: Variant = Variant.POLYGONS
) -> list[Segment]:
    """Claiming moves between iris dots until no such segment can be added.

    Raises if the iris would need a non-claiming move to finish expanding:
    that would contradict the free-turn property this procedure relies on.
    """
    interior = set(region.interior_points())
    if not interior:
        raise ValueError("region has no iris")
    state = build_state(region, variant)
    seq: list[Segment] = []
    while True:
        ii = [
            m
            for m in region_moves(state, region.outer)
            if m.a in interior and m.b in interior
        ]
        if not ii:
            return seq
        claiming = [m for m in ii if move_claims(state, m)]
        if not claiming:
            raise AssertionError(
                f"iris not expanded but no claiming move in {region.outer}"
            )
        state.play(claiming[0])
        seq.append(claiming[0])


def single_turn_claim(
    region: Region, variant: Variant, state: GameState | None = None
) -> list[Segment] | None:
    """A one-turn sequence claiming the whole region, if any exists."""
    if state is None:
        state = build_state(region, variant)
    target = region.area_halves - claimed_halves(state)
    return one_turn_claim_search(
        state, lambda st: region_moves(st, region.outer), target
    )


def second_player_eye_reply(
    region: Region, first: Segment, variant: Variant
) -> list[Segment]:
    """Reply chain that takes everything left of the eye after ``first``.

    In the polygons variant the opening move demonstrably claims nothing:
    the walk it closes reuses the new segment twice, which disqualifies
    the face.  The region must be an expanded eye; it is usually also
    reduced, but the reply works whenever the iris is expanded.
    """
    if not is_expanded_eye(region, variant):
        raise ValueError("region is not an expanded eye")
    state = build_state(region, variant, to_move=Player.ONE)
    out = state.play(first)
    if variant is Variant.POLYGONS:
        assert not out.claimed, "opening move in a reduced eye must claim nothing"
    assert state.to_move is Player.TWO
    target = region.area_halves - claimed_halves(state)
    reply = one_turn_claim_search(
        state, lambda st: region_moves(st, region.outer), target
    )
    if reply is None:
        raise AssertionError(
            f"no full-claim reply to {first} in reduced eye {region.outer}"
        )
    return reply
