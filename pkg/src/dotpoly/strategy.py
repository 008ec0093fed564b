"""Playing strategies and the exact solver.

Strategies: uniform random, a greedy that claims when it can and otherwise
cedes the least, a double-dealer that hands over a fully claimable region
to keep the initiative, and the second-player policy for nested diamonds
(double-deal in every layer but the last).  The solver is a memoized
negamax over drawn-segment sets; a claiming move keeps the turn, so the
value recursion only flips sign on non-claiming moves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

from .engine import BoardSpec, GameState, Player, Variant, board_segments
from .geometry import (
    Halves,
    Point,
    Segment,
    cross,
    normalize_cycle,
    segments_conflict,
    winding_number,
)
from .shapes import (
    Region,
    boundary_pieces,
    one_turn_claim_search,
    max_one_turn_gain,
    region_moves,
    segment_in_region,
)
from .subdivision import Face


class StrategyId(str, Enum):
    RANDOM = "random"
    GREEDY = "greedy"
    DOUBLE_DEALER = "double-dealer"
    NESTED_DIAMOND = "nested-diamond"
    EXACT = "exact"


MoveFilter = Callable[[GameState], list[Segment]]


def _all_moves(state: GameState) -> list[Segment]:
    return state.legal_moves()


def _claim_value(state: GameState, m: Segment) -> Halves:
    probe = state.clone()
    out = probe.play(m)
    return sum(c.area_halves for c in out.claimed)


@lru_cache(maxsize=8)
def _conflict_graph(width: int, height: int) -> dict[Segment, frozenset[Segment]]:
    segs = sorted(board_segments(width, height))
    out: dict[Segment, set[Segment]] = {s: set() for s in segs}
    for i, s1 in enumerate(segs):
        for s2 in segs[i + 1:]:
            if segments_conflict(s1, s2):
                out[s1].add(s2)
                out[s2].add(s1)
    return {s: frozenset(v) for s, v in out.items()}


@lru_cache(maxsize=8)
def _tri_support(
    width: int, height: int
) -> tuple[
    dict[Segment, tuple[tuple[Segment, Segment], ...]],
    dict[Segment, tuple[tuple[Segment, Segment], ...]],
]:
    """Area-1/2 triangle support structure of a board.

    ``pairs[c]`` lists the (e1, e2) edge pairs that close a minimal triangle
    over segment c; ``index[e]`` lists (c, other) pairs in which e supports
    c together with the other edge.
    """
    dots = [(x, y) for x in range(width) for y in range(height)]
    segset = board_segments(width, height)
    pairs: dict[Segment, list[tuple[Segment, Segment]]] = {s: [] for s in segset}
    index: dict[Segment, list[tuple[Segment, Segment]]] = {s: [] for s in segset}
    for c in segset:
        for w in dots:
            if abs(cross(c.a, c.b, w)) != 1:
                continue
            e1, e2 = Segment.of(c.a, w), Segment.of(c.b, w)
            if e1 in segset and e2 in segset:
                pairs[c].append((e1, e2))
                index[e1].append((c, e2))
                index[e2].append((c, e1))
    return (
        {s: tuple(v) for s, v in pairs.items()},
        {s: tuple(v) for s, v in index.items()},
    )


class _TriPos:
    """Lightweight triangles position: drawn set, candidates, claim counts.

    Every claim in the triangles variant is a lattice triangle of area 1/2,
    so claim detection reduces to counting completed support pairs, which
    this structure maintains incrementally under play/undo.  Positions are
    memo-keyed by (claimed triangles, non-claiming additions): segments
    drawn inside already claimed area cannot influence anything outside it,
    so interchangeable triangulations collapse onto one key.
    """

    def __init__(self, state: GameState, allowed: Iterable[Segment] | None = None):
        assert state.variant is Variant.TRIANGLES
        w, h = state.board.width, state.board.height
        self.conflicts = _conflict_graph(w, h)
        self.support_pairs, self.support_index = _tri_support(w, h)
        self.segments: set[Segment] = set(state.segments)
        cands = state.legal_moves()
        if allowed is not None:
            allowed = set(allowed)
            cands = [c for c in cands if c in allowed]
        self.cands: set[Segment] = set(cands)
        self.frontier: set[Segment] = set()
        self.edge_claims: dict[Segment, int] = {}
        self.nonclaim_added: set[Segment] = set()
        self.claim_count: dict[Segment, int] = {}
        self.claiming: set[Segment] = set()
        for c in self.cands:
            n = sum(
                1
                for e1, e2 in self.support_pairs[c]
                if e1 in self.segments and e2 in self.segments
            )
            self.claim_count[c] = n
            if n:
                self.claiming.add(c)

    def state_key(self):
        return (frozenset(self.frontier), frozenset(self.nonclaim_added))

    def claims_of(self, s: Segment) -> int:
        return self.claim_count.get(s, 0)

    def claiming_moves(self) -> list[Segment]:
        return sorted(self.claiming)

    def _bump_edge(self, e: Segment, d: int) -> None:
        n = self.edge_claims.get(e, 0) + d
        self.edge_claims[e] = n
        if n == 1:
            self.frontier.add(e)
        else:
            self.frontier.discard(e)

    def play(self, s: Segment) -> tuple[int, tuple]:
        tri_edges = [
            (e1, e2)
            for e1, e2 in self.support_pairs[s]
            if e1 in self.segments and e2 in self.segments
        ]
        removed = self.cands & self.conflicts[s]
        removed.add(s)
        self.cands -= removed
        self.claiming -= removed
        self.segments.add(s)
        if tri_edges:
            for e1, e2 in tri_edges:
                self._bump_edge(e1, 1)
                self._bump_edge(e2, 1)
                self._bump_edge(s, 1)
        else:
            self.nonclaim_added.add(s)
        cc = self.claim_count
        bumped = []
        for c, other in self.support_index[s]:
            if other in self.segments and c in cc:
                cc[c] += 1
                bumped.append(c)
                if c in self.cands:
                    self.claiming.add(c)
        return len(tri_edges), (s, removed, tuple(tri_edges), tuple(bumped))

    def undo(self, s: Segment, token: tuple) -> None:
        s2, removed, tri_edges, bumped = token
        assert s2 == s
        cc = self.claim_count
        for c in bumped:
            cc[c] -= 1
            if cc[c] == 0:
                self.claiming.discard(c)
        self.segments.discard(s)
        if tri_edges:
            for e1, e2 in tri_edges:
                self._bump_edge(e1, -1)
                self._bump_edge(e2, -1)
                self._bump_edge(s, -1)
        else:
            self.nonclaim_added.discard(s)
        self.cands |= removed
        for c in removed:
            if cc.get(c, 0):
                self.claiming.add(c)

    def _forced_claims(self) -> tuple[Halves, list[tuple[Segment, tuple]]]:
        """Play every claimer that crosses no other claimer.

        Candidate-candidate conflicts are always proper crossings, and a
        segment crossing a claimer's segment would overlap the triangle it
        claims, so taking such a claim can never block claiming other
        area.  The chain search then only branches on mutually crossing
        claimers.
        """
        gain = 0
        toks: list[tuple[Segment, tuple]] = []
        while True:
            free = None
            for m in sorted(self.claiming):
                if not (self.conflicts[m] & self.claiming):
                    free = m
                    break
            if free is None:
                return gain, toks
            claims, tok = self.play(free)
            gain += claims
            toks.append((free, tok))

    def max_chain_gain(self) -> Halves:
        """Best total a single turn of chained claims can take from here."""
        memo: dict[frozenset, Halves] = {}

        def rec() -> Halves:
            gain0, toks = self._forced_claims()
            key = frozenset(self.frontier)
            hit = memo.get(key)
            if hit is None:
                best = 0
                for m in sorted(self.claiming):
                    claims, token = self.play(m)
                    best = max(best, claims + rec())
                    self.undo(m, token)
                memo[key] = best
                hit = best
            for m, tok in reversed(toks):
                self.undo(m, tok)
            return gain0 + hit

        return rec()


# ---------------------------------------------------------------------------
# Double-dealing detection


def _scale(walk, k: int = 2) -> tuple[Point, ...]:
    return tuple((k * x, k * y) for x, y in walk)


def _midpoint2(s: Segment) -> Point:
    return (s.a[0] + s.b[0], s.a[1] + s.b[1])


def _segment_in_face_closure(m: Segment, face: Face) -> bool:
    mid = _midpoint2(m)
    if winding_number(mid, _scale(face.outer)) != 0:
        return all(winding_number(mid, _scale(hw)) == 0 for hw in face.hole_walks)
    # Midpoint on the face boundary counts as within the closure.
    for e in face.edges:
        a2, b2 = _scale([e.a])[0], _scale([e.b])[0]
        if cross(a2, b2, mid) == 0 and min(a2[0], b2[0]) <= mid[0] <= max(a2[0], b2[0]) \
                and min(a2[1], b2[1]) <= mid[1] <= max(a2[1], b2[1]):
            return True
    return False


def is_double_dealing(state: GameState, s: Segment) -> bool:
    """Test the three-part double-dealing condition for a legal move s.

    (a) the mover could claim the whole region around s within this turn,
    (b) s itself claims nothing, and
    (c) after s the opponent can claim that whole region in one turn,
    which leaves the opponent on the move afterwards.
    """
    post = state.clone()
    outcome = post.play(s)
    if outcome.claimed:
        return False

    claimed_keys = {c.outer for c in post.claims}
    faces = [
        f
        for f in post.arrangement.faces
        if s in f.edges and f.key not in claimed_keys
    ]
    if not faces:
        return False
    target = sum(f.area_halves for f in faces)

    def scope(st: GameState) -> list[Segment]:
        return [
            m
            for m in st.legal_moves()
            if any(_segment_in_face_closure(m, f) for f in faces)
        ]

    if one_turn_claim_search(state, scope, target) is None:
        return False
    return one_turn_claim_search(post, scope, target) is not None


# ---------------------------------------------------------------------------
# Greedy and double-dealer strategies


def greedy_move(state: GameState, scope: MoveFilter = _all_moves) -> Segment:
    """Claim when possible, otherwise cede the least immediate area."""
    moves = scope(state)
    if not moves:
        raise ValueError("no legal move")
    if state.variant is Variant.TRIANGLES:
        pos = _TriPos(state, allowed=moves)
        for m in moves:
            if pos.claims_of(m):
                return m
        best, best_cede = None, None
        for m in moves:
            _, token = pos.play(m)
            cede = pos.max_chain_gain()
            pos.undo(m, token)
            if best_cede is None or cede < best_cede:
                best, best_cede = m, cede
        return best
    for m in moves:
        if _claim_value(state, m):
            return m
    best, best_cede = None, None
    for m in moves:
        nxt = state.clone()
        nxt.play(m)
        cede = max_one_turn_gain(nxt, scope)
        if best_cede is None or cede < best_cede:
            best, best_cede = m, cede
    return best


def double_dealer_move(state: GameState, scope: MoveFilter = _all_moves) -> Segment:
    for m in scope(state):
        if _claim_value(state, m) == 0 and is_double_dealing(state, m):
            return m
    return greedy_move(state, scope)


# ---------------------------------------------------------------------------
# Nested diamonds


@dataclass(frozen=True)
class NestedDiamondSpec:
    """n concentric diamonds with slope +-1 edges around a shared centre."""

    layers: int
    center: Point

    def __post_init__(self) -> None:
        if self.layers < 1:
            raise ValueError("need at least one layer")

    def ring_cycle(self, k: int) -> tuple[Point, ...]:
        cx, cy = self.center
        return normalize_cycle(
            [(cx + k, cy), (cx, cy + k), (cx - k, cy), (cx, cy - k)]
        )

    def outer_region(self) -> Region:
        return Region.of(self.ring_cycle(self.layers))

    def boundary_segments(self) -> list[Segment]:
        out = []
        for k in range(1, self.layers + 1):
            out += boundary_pieces(self.ring_cycle(k))
        return out

    def board(self) -> BoardSpec:
        cx, cy = self.center
        if cx < self.layers or cy < self.layers:
            raise ValueError("diamond does not fit a board at this centre")
        return BoardSpec(cx + self.layers + 1, cy + self.layers + 1)

    @staticmethod
    def standard(layers: int) -> "NestedDiamondSpec":
        return NestedDiamondSpec(layers, (layers, layers))

    @staticmethod
    def detect(state: GameState) -> "NestedDiamondSpec | None":
        """Largest fully drawn nested diamond in the position, if any."""
        best = None
        for c in state.board.dots:
            k = 0
            while True:
                spec = NestedDiamondSpec(k + 1, c)
                ring = spec.ring_cycle(k + 1)
                if not all(state.board.contains(v) for v in ring):
                    break
                if not all(p in state.segments for p in boundary_pieces(ring)):
                    break
                k += 1
            if k and (best is None or k > best.layers):
                best = NestedDiamondSpec(k, c)
        return best


def diamond_subgame(
    spec: NestedDiamondSpec, variant: Variant = Variant.TRIANGLES
) -> GameState:
    """All diamond boundaries drawn, first player to move."""
    from .engine import position_from_segments

    state = position_from_segments(
        spec.board(), variant, spec.boundary_segments(), to_move=Player.ONE
    )
    assert not state.claims
    return state


def _claim_inside(claim_walk, cycle) -> bool:
    """Exact test: does the (triangular) claim sit inside the cycle?"""
    assert len(claim_walk) == 3
    centroid3 = (
        sum(p[0] for p in claim_walk),
        sum(p[1] for p in claim_walk),
    )
    return winding_number(centroid3, _scale(cycle, 3)) != 0


def _ring_unclaimed(state: GameState, spec: NestedDiamondSpec, k: int) -> Halves:
    """Unclaimed area of layer k (between rings k-1 and k), in halves."""
    outer = spec.ring_cycle(k)
    area = 2 * k * k * 2 - (2 * (k - 1) * (k - 1) * 2)
    claimed = 0
    for c in state.claims:
        if _claim_inside(c.outer, outer) and not (
            k > 1 and _claim_inside(c.outer, spec.ring_cycle(k - 1))
        ):
            claimed += c.area_halves
    return area - claimed


def nested_diamond_second_move(
    state: GameState, spec: NestedDiamondSpec | None = None
) -> Segment:
    """Double-deal in every layer but the last; claim everything there."""
    if spec is None:
        spec = NestedDiamondSpec.detect(state)
    if spec is None:
        return greedy_move(state)
    outer = spec.outer_region().outer
    scope: MoveFilter = lambda st: region_moves(st, outer)
    moves = scope(state)
    if not moves:
        return greedy_move(state)

    ring = 1
    while ring <= spec.layers and _ring_unclaimed(state, spec, ring) == 0:
        ring += 1
    if ring > spec.layers:
        return greedy_move(state)
    last = ring == spec.layers

    pos = _TriPos(state, allowed=moves) if state.variant is Variant.TRIANGLES else None

    def claims_of(m: Segment) -> int:
        return pos.claims_of(m) if pos is not None else _claim_value(state, m)

    if not last and _ring_unclaimed(state, spec, ring) == 4:
        for m in moves:
            if claims_of(m) == 0 and is_double_dealing(state, m):
                return m
    singles = [m for m in moves if claims_of(m) == 1]
    if singles:
        return singles[0]
    claiming = [m for m in moves if claims_of(m) > 0]
    if claiming:
        return claiming[0]
    return greedy_move(state, scope)


def nested_diamond_playout(
    spec: NestedDiamondSpec, variant: Variant = Variant.TRIANGLES
) -> tuple[Halves, Halves]:
    """Scripted playout of the diamond subgame, returning claimed halves.

    First plays greedy (innermost-first falls out of least-cede); second
    double-deals every layer but the last and then sweeps it.
    """
    if variant is not Variant.TRIANGLES:
        raise ValueError("the scripted playout is defined for triangles")
    state = diamond_subgame(spec, variant)
    outer = spec.outer_region().outer
    scope: MoveFilter = lambda st: region_moves(st, outer)
    target = spec.outer_region().area_halves
    while sum(c.area_halves for c in state.claims) < target:
        if state.to_move is Player.ONE:
            m = greedy_move(state, scope)
        else:
            m = nested_diamond_second_move(state, spec)
        state.play(m)
    sc = state.scores()
    return sc[Player.ONE], sc[Player.TWO]


def choose_move(
    strategy: StrategyId,
    state: GameState,
    seed: int | None = None,
    scope: MoveFilter = _all_moves,
) -> Segment:
    """Pick a legal move; deterministic given (strategy, state, seed)."""
    if state.is_over():
        raise ValueError("game over")
    strategy = StrategyId(strategy)
    if strategy is StrategyId.RANDOM:
        return random.Random(seed).choice(scope(state))
    if strategy is StrategyId.GREEDY:
        return greedy_move(state, scope)
    if strategy is StrategyId.DOUBLE_DEALER:
        return double_dealer_move(state, scope)
    if strategy is StrategyId.NESTED_DIAMOND:
        return nested_diamond_second_move(state)
    if strategy is StrategyId.EXACT:
        res = solve(state)
        if not res.principal_variation:
            raise ValueError("solver returned no move")
        return res.principal_variation[0]
    raise ValueError(f"unknown strategy {strategy}")


# ---------------------------------------------------------------------------
# Exact solver


class SolveResult(NamedTuple):
    value: Halves  # mover's area minus opponent's, in halves
    principal_variation: tuple[Segment, ...]
    nodes_visited: int
    complete: bool


class _Budget(Exception):
    pass


_LOWER, _EXACT, _UPPER = -1, 0, 1


class _TriangleSolver:
    def __init__(self, pos: _TriPos, budget: int, reverse: bool):
        self.pos = pos
        self.budget = budget
        self.reverse = reverse
        self.nodes = 0
        self.tt: dict[frozenset[Segment], tuple[int, Halves, Segment | None]] = {}

    def ordered(self) -> list[tuple[int, Segment]]:
        pos = self.pos
        out = [(pos.claims_of(m), m) for m in sorted(pos.cands, reverse=self.reverse)]
        out.sort(key=lambda t: -t[0])
        return out

    def search(self, alpha: Halves, beta: Halves) -> tuple[Halves, Segment | None]:
        self.nodes += 1
        if self.budget and self.nodes > self.budget:
            raise _Budget()
        pos = self.pos
        if not pos.cands:
            return 0, None
        key = pos.state_key()
        hit = self.tt.get(key)
        if hit is not None:
            flag, val, mv = hit
            if flag == _EXACT or (flag == _LOWER and val >= beta) or \
                    (flag == _UPPER and val <= alpha):
                return val, mv

        best, best_move = None, None
        a0 = alpha
        for claims, m in self.ordered():
            _, token = self.pos.play(m)
            try:
                if claims:
                    if pos.cands:
                        sub, _ = self.search(alpha - claims, beta - claims)
                        v = claims + sub
                    else:
                        v = claims
                else:
                    sub, _ = self.search(-beta, -alpha)
                    v = -sub
            finally:
                self.pos.undo(m, token)
            if best is None or v > best:
                best, best_move = v, m
            alpha = max(alpha, v)
            if alpha >= beta:
                break
        flag = _UPPER if best <= a0 else (_LOWER if best >= beta else _EXACT)
        self.tt[key] = (flag, best, best_move)
        return best, best_move


def _solve_triangles(
    state: GameState, allowed: Iterable[Segment], budget: int, reverse: bool
) -> SolveResult:
    pos = _TriPos(state, allowed=allowed)
    solver = _TriangleSolver(pos, budget, reverse)
    inf = state.board.area_halves + 1
    try:
        value, _ = solver.search(-inf, inf)
    except _Budget:
        return SolveResult(0, (), solver.nodes, complete=False)

    solver.budget = 0
    pv: list[Segment] = []
    while pos.cands:
        _, mv = solver.search(-inf, inf)
        if mv is None:
            break
        pv.append(mv)
        pos.play(mv)
    return SolveResult(value, tuple(pv), solver.nodes, complete=True)


def _solve_generic(
    state: GameState, moves_fn: MoveFilter, budget: int, reverse: bool
) -> SolveResult:
    tt: dict[frozenset[Segment], tuple[int, Halves, Segment | None]] = {}
    nodes = 0
    inf = state.board.area_halves + 1

    def rec(st: GameState, alpha: Halves, beta: Halves) -> tuple[Halves, Segment | None]:
        nonlocal nodes
        nodes += 1
        if budget and nodes > budget:
            raise _Budget()
        moves = moves_fn(st)
        if not moves:
            return 0, None
        key = frozenset(st.segments)
        hit = tt.get(key)
        if hit is not None:
            flag, val, mv = hit
            if flag == _EXACT or (flag == _LOWER and val >= beta) or \
                    (flag == _UPPER and val <= alpha):
                return val, mv

        scored = []
        for m in sorted(moves, reverse=reverse):
            probe = st.clone()
            out = probe.play(m)
            gained = sum(c.area_halves for c in out.claimed)
            scored.append((gained, m, probe))
        scored.sort(key=lambda t: -t[0])

        best, best_move = None, None
        a0 = alpha
        for gained, m, child in scored:
            if gained:
                if moves_fn(child):
                    sub, _ = rec(child, alpha - gained, beta - gained)
                    v = gained + sub
                else:
                    v = gained
            else:
                sub, _ = rec(child, -beta, -alpha)
                v = -sub
            if best is None or v > best:
                best, best_move = v, m
            alpha = max(alpha, v)
            if alpha >= beta:
                break
        flag = _UPPER if best <= a0 else (_LOWER if best >= beta else _EXACT)
        tt[key] = (flag, best, best_move)
        return best, best_move

    try:
        value, _ = rec(state, -inf, inf)
    except _Budget:
        return SolveResult(0, (), nodes, complete=False)

    pv: list[Segment] = []
    st = state.clone()
    while moves_fn(st):
        _, mv = rec(st, -inf, inf)
        if mv is None:
            break
        pv.append(mv)
        st.play(mv)
    return SolveResult(value, tuple(pv), nodes, complete=True)


def solve(
    state: GameState,
    node_budget: int = 0,
    region: Region | None = None,
    reverse_order: bool = False,
) -> SolveResult:
    """Exact game value for the side to move, in halves.

    ``region`` restricts play (and the value) to the subgame inside a
    closed region.  With a node budget the search aborts cleanly and the
    result is flagged incomplete.
    """
    if region is not None:
        allowed = [
            s
            for s in board_segments(state.board.width, state.board.height)
            if segment_in_region(s, region.outer)
        ]
    else:
        allowed = list(board_segments(state.board.width, state.board.height))

    if state.variant is Variant.TRIANGLES:
        return _solve_triangles(state, allowed, node_budget, reverse_order)

    allowed_set = frozenset(allowed)

    def moves_fn(st: GameState) -> list[Segment]:
        return [m for m in st.legal_moves() if m in allowed_set]

    return _solve_generic(state, moves_fn, node_budget, reverse_order)
