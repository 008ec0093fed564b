"""Game engine for dots-and-triangles and dots-and-polygons.

Moves are primitive lattice segments that may not cross, touch or overlap
previously drawn ones.  In the triangles variant a player claims every
newly closed face that is a bare triangle (three boundary dots, no
interior dots); in the polygons variant every newly closed face whose
boundary walk is a plain cycle with no interior structure is claimed.
Claiming grants an extra move; a move that closes two faces at once is a
doublecross and still grants only one extra move.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .geometry import (
    Halves,
    Point,
    Segment,
    lattice_census,
    segments_conflict,
    winding_number,
)
from .subdivision import Arrangement, Face, canonical_walk


class Variant(str, Enum):
    TRIANGLES = "triangles"
    POLYGONS = "polygons"


class Player(IntEnum):
    ONE = 1
    TWO = 2

    @property
    def opponent(self) -> "Player":
        return Player.TWO if self is Player.ONE else Player.ONE


@dataclass(frozen=True)
class BoardSpec:
    """Dot counts of the rectangular board; claimable area is (w-1)(h-1).

    Degenerate single-row or single-column boards are representable for
    analysis (area zero); ``new_game`` rejects them.
    """

    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("board needs at least one dot per side")

    @property
    def dots(self) -> list[Point]:
        return [(x, y) for x in range(self.width) for y in range(self.height)]

    @property
    def dot_count(self) -> int:
        return self.width * self.height

    @property
    def area_halves(self) -> Halves:
        return 2 * (self.width - 1) * (self.height - 1)

    def contains(self, p: Point) -> bool:
        return 0 <= p[0] < self.width and 0 <= p[1] < self.height


class IllegalMove(Exception):
    """Raised when a segment cannot be drawn; carries a stable reason token."""

    def __init__(self, reason: str, segment: Segment):
        self.reason = reason
        self.segment = segment
        super().__init__(f"{reason}: {segment.a}-{segment.b}")


DUPLICATE = "duplicate"
CONFLICT = "conflict"
NON_PRIMITIVE = "non-primitive"
OUT_OF_BOARD = "out-of-board"
INSIDE_CLAIMED = "inside-claimed-region"


class Claim(NamedTuple):
    outer: tuple[Point, ...]  # counterclockwise walk, canonical rotation
    player: Player
    area_halves: Halves


class MoveOutcome(NamedTuple):
    claimed: tuple[Claim, ...]
    extra_turn: bool
    doublecross: bool
    next_player: Player
    game_over: bool


class GameAccounting(NamedTuple):
    dots: int
    turns: int
    segments_drawn: int
    regions_claimed: int
    doublecrosses: int
    unused_dots: int


class MoveRecord(NamedTuple):
    segment: Segment
    player: Player
    claims: tuple[Claim, ...]


@lru_cache(maxsize=None)
def board_segments(width: int, height: int) -> frozenset[Segment]:
    """All primitive segments between dots of the board."""
    dots = [(x, y) for x in range(width) for y in range(height)]
    out = set()
    for i, a in enumerate(dots):
        for b in dots[i + 1:]:
            s = Segment.of(a, b)
            from math import gcd

            if gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) == 1:
                out.add(s)
    return frozenset(out)


def _midpoint2(s: Segment) -> Point:
    return (s.a[0] + s.b[0], s.a[1] + s.b[1])


def _scale2(walk: Sequence[Point]) -> tuple[Point, ...]:
    return tuple((x * 2, y * 2) for x, y in walk)


def open_segment_inside_walk(s: Segment, walk: Sequence[Point]) -> bool:
    """True if the open segment's midpoint lies strictly inside the walk.

    Sufficient for candidates that do not conflict with the walk's edges:
    such a segment is either entirely inside or entirely outside.
    """
    return winding_number(_midpoint2(s), _scale2(walk)) != 0


class GameState:
    """Full game position.  Value semantics: ``clone()`` is independent."""

    def __init__(self, board: BoardSpec, variant: Variant):
        self.board = board
        self.variant = Variant(variant)
        self.to_move = Player.ONE
        self.turns = 0
        self.doublecrosses = 0
        self.log: list[MoveRecord] = []
        self.segments: set[Segment] = set()
        self.claims: list[Claim] = []
        self._claimed_keys: set[tuple[Point, ...]] = set()
        self._candidates: set[Segment] = set(
            board_segments(board.width, board.height)
        )
        self._arr = Arrangement(())

    # -- read access ------------------------------------------------------

    @property
    def arrangement(self) -> Arrangement:
        return self._arr

    def faces(self) -> list[Face]:
        return list(self._arr.faces)

    def legal_moves(self) -> list[Segment]:
        return sorted(self._candidates)

    def is_over(self) -> bool:
        over = not self._candidates
        if over:
            claimed = sum(c.area_halves for c in self.claims)
            assert claimed == self.board.area_halves, (
                f"game over with {claimed}/2 of {self.board.area_halves}/2 claimed"
            )
        return over

    def scores(self) -> dict[Player, Halves]:
        out = {Player.ONE: 0, Player.TWO: 0}
        for c in self.claims:
            out[c.player] += c.area_halves
        return out

    def unused_dots(self) -> list[Point]:
        """Dots with no incident segment that sit inside claimed area."""
        used = set()
        for s in self.segments:
            used.add(s.a)
            used.add(s.b)
        out = []
        for d in self.board.dots:
            if d in used:
                continue
            for c in self.claims:
                if winding_number(d, c.outer) != 0:
                    out.append(d)
                    break
        return out

    @property
    def accounting(self) -> GameAccounting:
        return GameAccounting(
            dots=self.board.dot_count,
            turns=self.turns,
            segments_drawn=len(self.segments),
            regions_claimed=len(self.claims),
            doublecrosses=self.doublecrosses,
            unused_dots=len(self.unused_dots()),
        )

    def clone(self) -> "GameState":
        new = object.__new__(GameState)
        new.board = self.board
        new.variant = self.variant
        new.to_move = self.to_move
        new.turns = self.turns
        new.doublecrosses = self.doublecrosses
        new.log = list(self.log)
        new.segments = set(self.segments)
        new.claims = list(self.claims)
        new._claimed_keys = set(self._claimed_keys)
        new._candidates = set(self._candidates)
        new._arr = self._arr  # immutable snapshot, rebuilt on next play()
        return new

    # -- mutation ---------------------------------------------------------

    def reject_reason(self, s: Segment) -> str | None:
        """Why s cannot be played, or None if it is legal."""
        if s in self._candidates:
            return None
        if not (self.board.contains(s.a) and self.board.contains(s.b)):
            return OUT_OF_BOARD
        from .geometry import is_primitive

        if not is_primitive(s):
            return NON_PRIMITIVE
        if s in self.segments:
            return DUPLICATE
        for d in self.segments:
            if segments_conflict(s, d):
                return CONFLICT
        return INSIDE_CLAIMED

    def play(self, s: Segment) -> MoveOutcome:
        """Apply a move in place and report what it claimed."""
        reason = self.reject_reason(s)
        if reason is not None:
            raise IllegalMove(reason, s)

        mover = self.to_move
        prev_keys = self._arr.face_keys
        self.segments.add(s)
        self._arr = Arrangement(self.segments)

        new_claims: list[Claim] = []
        for f in self._arr.faces:
            key = f.key
            if key in prev_keys or key in self._claimed_keys:
                continue
            if s not in f.edges:
                continue
            if self._claimable(f):
                new_claims.append(Claim(key, mover, f.area_halves))
        assert len(new_claims) <= 2, "a segment borders at most two faces"
        for c in sorted(new_claims):
            self.claims.append(c)
            self._claimed_keys.add(c.outer)

        # Candidate maintenance: drop the move itself, conflicts, and
        # anything now strictly inside claimed area.
        self._candidates.discard(s)
        self._candidates = {
            c for c in self._candidates if not segments_conflict(c, s)
        }
        for c in new_claims:
            self._candidates = {
                cand
                for cand in self._candidates
                if not open_segment_inside_walk(cand, c.outer)
            }

        doublecross = len(new_claims) == 2
        if doublecross:
            self.doublecrosses += 1

        game_over = not self._candidates
        if new_claims and not game_over:
            extra_turn = True
            next_player = mover
        else:
            extra_turn = False
            self.turns += 1
            next_player = mover if game_over else mover.opponent
        self.to_move = next_player

        outcome = MoveOutcome(
            claimed=tuple(sorted(new_claims)),
            extra_turn=extra_turn,
            doublecross=doublecross,
            next_player=next_player,
            game_over=game_over,
        )
        self.log.append(MoveRecord(s, mover, outcome.claimed))
        if game_over:
            self.is_over()  # runs the full-area assertion
        return outcome

    def _claimable(self, f: Face) -> bool:
        if not f.simple or f.hole_components:
            return False
        if self.variant is Variant.POLYGONS:
            return True
        return len(f.outer) == 3 and f.area_halves == 1


def new_game(board: BoardSpec, variant: Variant) -> GameState:
    if board.width < 2 or board.height < 2:
        raise ValueError("width or height < 2")
    return GameState(board, variant)


def legal_moves(state: GameState) -> list[Segment]:
    return state.legal_moves()


def apply_move(state: GameState, s: Segment) -> tuple[GameState, MoveOutcome]:
    """Pure-style wrapper: returns a new state, leaving the input untouched."""
    nxt = state.clone()
    outcome = nxt.play(s)
    return nxt, outcome


def faces(state: GameState) -> list[Face]:
    return state.faces()


def scores(state: GameState) -> dict[Player, Halves]:
    return state.scores()


def is_over(state: GameState) -> bool:
    return state.is_over()


def position_from_segments(
    board: BoardSpec,
    variant: Variant,
    segments: Iterable[Segment],
    to_move: Player | None = None,
) -> GameState:
    """Build an analysis position by replaying segments in the given order.

    Legality is enforced move by move; claims fall to whichever synthetic
    player happens to be on turn.  Useful for fixtures and classification,
    not for turn accounting.
    """
    state = GameState(board, variant)
    for s in segments:
        state.play(s)
    if to_move is not None:
        state.to_move = to_move
    return state


# ---------------------------------------------------------------------------
# Record persistence


def save_record(state: GameState) -> bytes:
    moves = []
    for rec in state.log:
        moves.append(
            {
                "player": int(rec.player),
                "from": list(rec.segment.a),
                "to": list(rec.segment.b),
                "claims": [
                    {
                        "outer": [list(p) for p in c.outer],
                        "area_halves": c.area_halves,
                    }
                    for c in rec.claims
                ],
            }
        )
    sc = state.scores()
    doc = {
        "board": {"width": state.board.width, "height": state.board.height},
        "variant": state.variant.value,
        "moves": moves,
        "result": {
            "p1_halves": sc[Player.ONE],
            "p2_halves": sc[Player.TWO],
            "turns": state.turns,
            "doublecrosses": state.doublecrosses,
            "unused_dots": len(state.unused_dots()),
        },
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=True).encode("utf-8")


class RecordError(ValueError):
    pass


def load_record(data: bytes) -> GameState:
    """Replay a saved record, validating its redundant claim/result fields."""
    try:
        doc = json.loads(data.decode("utf-8"))
        board = BoardSpec(int(doc["board"]["width"]), int(doc["board"]["height"]))
        variant = Variant(doc["variant"])
        moves = doc["moves"]
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as e:
        raise RecordError(f"malformed record: {e}") from e

    state = GameState(board, variant)
    for i, m in enumerate(moves):
        try:
            s = Segment.of(tuple(m["from"]), tuple(m["to"]))
            player = Player(int(m["player"]))
            recorded_claims = m.get("claims", [])
        except (KeyError, TypeError, ValueError) as e:
            raise RecordError(f"malformed move {i}: {e}") from e
        if state.to_move != player:
            raise RecordError(f"move {i}: player {player} out of turn")
        try:
            outcome = state.play(s)
        except IllegalMove as e:
            raise RecordError(f"move {i} illegal on replay: {e}") from e
        got = [
            {
                "outer": [list(p) for p in c.outer],
                "area_halves": c.area_halves,
            }
            for c in outcome.claimed
        ]
        want = [
            {
                "outer": [list(map(int, p)) for p in c["outer"]],
                "area_halves": int(c["area_halves"]),
            }
            for c in recorded_claims
        ]
        if sorted(got, key=json.dumps) != sorted(want, key=json.dumps):
            raise RecordError(f"move {i}: recorded claims do not match replay")

    result = doc.get("result")
    if result is not None:
        sc = state.scores()
        expect = {
            "p1_halves": sc[Player.ONE],
            "p2_halves": sc[Player.TWO],
            "turns": state.turns,
            "doublecrosses": state.doublecrosses,
            "unused_dots": len(state.unused_dots()),
        }
        for k, v in expect.items():
            if int(result.get(k, -1)) != v:
                raise RecordError(f"result field {k}: recorded {result.get(k)} != {v}")
    return state


# ---------------------------------------------------------------------------
# Invariant checking (used heavily by the test suite)


def check_invariants(state: GameState) -> None:
    from .geometry import is_primitive

    segs = sorted(state.segments)
    for s in segs:
        assert is_primitive(s), f"non-primitive segment {s}"
        assert state.board.contains(s.a) and state.board.contains(s.b)
    for i, s1 in enumerate(segs):
        for s2 in segs[i + 1:]:
            assert not segments_conflict(s1, s2), f"conflict {s1} {s2}"

    arr = state.arrangement
    claimed_area = 0
    for c in state.claims:
        assert c.outer in arr.face_keys, "claimed face no longer a face"
        claimed_area += c.area_halves

    total_faces = sum(f.area_halves for f in arr.faces)
    unclaimed = [f for f in arr.faces if f.key not in state._claimed_keys]
    unclaimed_area = sum(f.area_halves for f in unclaimed)
    assert claimed_area + unclaimed_area == total_faces
    assert total_faces <= state.board.area_halves
    if state.is_over():
        assert claimed_area == state.board.area_halves

    # Exact cross-check of every simple, hole-free face: the walk area must
    # match the Pick area of its lattice census.
    for f in arr.faces:
        if f.simple and not f.hole_components:
            b, i = lattice_census(f.outer)
            from .geometry import pick_area

            assert pick_area(len(i), len(b)) == f.area_halves

    # Claim-at-closure: no unclaimed face may be claimable.
    for f in unclaimed:
        assert not state._claimable(f), f"unclaimed claimable face {f.key}"
