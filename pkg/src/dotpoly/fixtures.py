"""Bundled region and record fixtures (fig2 .. fig16).

Region fixtures use the record geometry sub-format: an outer cycle plus
interior segments, with optional pre-claimed cycles, undrawn boundary
pieces, a highlighted move, a variant, and a board override.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .engine import BoardSpec, GameState, Player, Variant, load_record
from .geometry import Segment, normalize_cycle
from .shapes import Region, build_state
from .subdivision import canonical_walk

FIXTURE_NAMES = [
    "fig2",
    "fig5",
    "fig7",
    "fig8L",
    "fig8R",
    "fig10",
    "fig11L",
    "fig11M",
    "fig11R",
    "fig12",
    "fig13",
    "fig14",
    "fig15",
    "fig16",
]


@dataclass(frozen=True)
class RegionFixture:
    name: str
    region: Region
    variant: Variant | None
    claimed: tuple[tuple[tuple[int, int], ...], ...]
    missing: tuple[Segment, ...]
    move: Segment | None
    board: BoardSpec | None

    def state(
        self, variant: Variant | None = None, to_move: Player | None = None
    ) -> GameState:
        v = variant or self.variant or Variant.POLYGONS
        st = build_state(
            self.region, v, missing=self.missing, to_move=to_move, board=self.board
        )
        got = sorted(canonical_walk(c.outer) for c in st.claims)
        want = sorted(canonical_walk(normalize_cycle(c)) for c in self.claimed)
        assert got == want, f"{self.name}: built claims {got} != declared {want}"
        return st


def _raw(name: str) -> dict:
    path = resources.files("dotpoly").joinpath(f"fixtures/{name}.json")
    return json.loads(path.read_text("utf-8"))


def load_fixture(name: str) -> RegionFixture:
    doc = _raw(name)
    if "record" in doc:
        raise ValueError(f"{name} is a record fixture; use load_record_fixture")
    region = Region.of(
        [tuple(p) for p in doc["outer"]],
        [Segment.of(tuple(a), tuple(b)) for a, b in doc.get("interior_segments", [])],
    )
    return RegionFixture(
        name=name,
        region=region,
        variant=Variant(doc["variant"]) if doc.get("variant") else None,
        claimed=tuple(
            tuple(tuple(p) for p in cyc) for cyc in doc.get("claimed", [])
        ),
        missing=tuple(
            Segment.of(tuple(a), tuple(b)) for a, b in doc.get("missing", [])
        ),
        move=(
            Segment.of(tuple(doc["move"][0]), tuple(doc["move"][1]))
            if doc.get("move")
            else None
        ),
        board=(
            BoardSpec(doc["board"]["width"], doc["board"]["height"])
            if doc.get("board")
            else None
        ),
    )


def load_record_fixture(name: str) -> GameState:
    doc = _raw(name)
    return load_record(json.dumps(doc["record"]).encode("utf-8"))
