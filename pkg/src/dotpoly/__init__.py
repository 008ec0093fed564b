"""dotpoly: exact engine and analysis toolkit for lattice claiming games."""

from .engine import (
    BoardSpec,
    Claim,
    GameState,
    IllegalMove,
    MoveOutcome,
    Player,
    Variant,
    apply_move,
    load_record,
    new_game,
    save_record,
)
from .geometry import Segment, seg

__all__ = [
    "BoardSpec",
    "Claim",
    "GameState",
    "IllegalMove",
    "MoveOutcome",
    "Player",
    "Segment",
    "Variant",
    "apply_move",
    "load_record",
    "new_game",
    "save_record",
    "seg",
]
