"""Plat presentations of Legendrian knots and their front diagrams.

A plat on ``strands`` horizontal strands (strand 1 on top) is closed on the
left by cusps joining positions (1, 2), (3, 4), ... and on the right by cusps
joining the same position pairs.  Each braid letter ``k`` is a crossing of
the strands at positions k and k + 1, placed in its own column.

Generators are labelled x_1 .. x_m for the crossings (left to right) and
x_{m+1} .. x_{m + strands/2} for the right cusps (top to bottom).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path


class FrontError(ValueError):
    pass


class NotAKnot(FrontError):
    pass


@dataclass(frozen=True)
class PlatBraid:
    strands: int
    word: tuple

    def __post_init__(self):
        if self.strands < 2 or self.strands % 2:
            raise FrontError(f"strand count must be even and >= 2, got {self.strands}")
        for k in self.word:
            if not 1 <= k < self.strands:
                raise FrontError(f"letter {k} out of range for {self.strands} strands")

    def serialize(self) -> str:
        return ", ".join(str(k) for k in self.word)


def default_strands(word) -> int:
    top = max(word, default=1) + 1
    return top + (top % 2)


def parse_plat_word(text: str, strands: int | None = None) -> PlatBraid:
    """Parse a comma- or whitespace-separated braid word."""
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    word = []
    for t in tokens:
        try:
            word.append(int(t))
        except ValueError:
            raise FrontError(f"non-integer token {t!r} in braid word") from None
    if strands is None:
        strands = default_strands(word)
    return PlatBraid(strands, tuple(word))


@dataclass(frozen=True)
class Crossing:
    label: int     # generator index
    column: int    # 0-based x position
    position: int  # upper position k of the pair (k, k + 1)
    upper: int     # strand id entering from the upper left
    lower: int     # strand id entering from the lower left


@dataclass(frozen=True)
class RightCusp:
    label: int
    position: int  # upper position 2i - 1
    upper: int     # strand ids meeting at the cusp
    lower: int


@dataclass(frozen=True)
class FrontDiagram:
    """Front of a plat closure.  Strand ids are left-end positions."""

    braid: PlatBraid
    crossings: tuple
    right_cusps: tuple
    right_order: tuple  # strand id at each right-end position
    labels: dict = field(compare=False)

    @property
    def strands(self) -> int:
        return self.braid.strands

    @property
    def n_generators(self) -> int:
        return len(self.crossings) + len(self.right_cusps)

    def is_cusp(self, g: int) -> bool:
        return g > len(self.crossings)

    def generator_names(self) -> dict:
        return dict(self.labels)


def build_front(braid: PlatBraid) -> FrontDiagram:
    pos = list(range(1, braid.strands + 1))  # pos[i] = strand at position i + 1
    crossings = []
    for col, k in enumerate(braid.word):
        a, b = pos[k - 1], pos[k]
        crossings.append(Crossing(col + 1, col, k, a, b))
        pos[k - 1], pos[k] = b, a
    m = len(crossings)
    cusps = tuple(
        RightCusp(m + j + 1, 2 * j + 1, pos[2 * j], pos[2 * j + 1])
        for j in range(braid.strands // 2)
    )
    labels = {g: f"x_{g}" for g in range(1, m + len(cusps) + 1)}
    return FrontDiagram(braid, tuple(crossings), cusps, tuple(pos), labels)


# ----------------------------------------------------------------------
# Orientation and classical invariants
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Direction of each strand (+1 rightward, -1 leftward) and cusp passages.

    ``cusp_down`` maps ('L', i) / ('R', i) for the i-th left/right cusp
    (0-based, top to bottom) to True when the knot passes it downward.
    """

    direction: dict
    cusp_down: dict
    components: int


def _closure_cycles(front: FrontDiagram):
    n = front.strands
    left_partner = {s: s + 1 if s % 2 else s - 1 for s in range(1, n + 1)}
    right_partner = {}
    for c in front.right_cusps:
        right_partner[c.upper] = c.lower
        right_partner[c.lower] = c.upper
    return left_partner, right_partner


def count_components(front: FrontDiagram) -> int:
    # Each component alternates left-cusp and right-cusp arcs; walk them.
    left_partner, right_partner = _closure_cycles(front)
    unvisited = set(range(1, front.strands + 1))
    comps = 0
    while unvisited:
        start = min(unvisited)
        comps += 1
        s = start
        while True:
            unvisited.discard(s)
            p = right_partner[s]
            unvisited.discard(p)
            s = left_partner[p]
            if s == start:
                break
    return comps


def orient(front: FrontDiagram) -> Orientation:
    """Orient the closure so that the top left cusp is passed downward."""
    left_partner, right_partner = _closure_cycles(front)
    rpos = {s: i for i, s in enumerate(front.right_order)}
    direction: dict = {}
    cusp_down: dict = {("L", 0): True}
    s = 2  # leaves the top left cusp on its lower strand, heading right
    while True:
        direction[s] = 1
        p = right_partner[s]
        direction[p] = -1
        cusp_index = min(rpos[s], rpos[p]) // 2
        cusp_down[("R", cusp_index)] = rpos[s] < rpos[p]
        q = left_partner[p]
        if q == 2:
            break
        cusp_down[("L", (min(p, q) - 1) // 2)] = p < q
        s = q
    comps = count_components(front)
    return Orientation(direction, cusp_down, comps)


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    r: int
    writhe: int


def writhe(front: FrontDiagram, orientation: Orientation) -> int:
    d = orientation.direction
    return sum(1 if d[c.upper] == d[c.lower] else -1 for c in front.crossings)


def classical_invariants(front: FrontDiagram) -> ClassicalInvariants:
    """tb = writhe - #right cusps; r = (down cusps - up cusps) / 2.

    The rotation number is reported for the orientation in which the top
    left cusp is passed downward; reversing orientation negates it.
    """
    o = orient(front)
    if o.components != 1:
        raise NotAKnot(f"plat closure has {o.components} components; only knots are supported")
    w = writhe(front, o)
    down = sum(1 for v in o.cusp_down.values() if v)
    up = len(o.cusp_down) - down
    return ClassicalInvariants(w - len(front.right_cusps), (down - up) // 2, w)


# ----------------------------------------------------------------------
# Knot records
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class KnotRecord:
    name: str
    strands: int
    word: tuple
    notes: str = ""

    def braid(self) -> PlatBraid:
        return PlatBraid(self.strands, tuple(self.word))

    def front(self) -> FrontDiagram:
        return build_front(self.braid())

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "strands": self.strands, "word": list(self.word), "notes": self.notes},
            indent=2,
        )


KNOTS = {
    "m10_161": KnotRecord(
        "m10_161",
        10,
        (4, 5, 2, 3, 4, 5, 6, 7, 8, 9, 1, 1, 4, 5, 6, 7, 8, 9, 2, 3, 4, 5, 6, 7,
         5, 6, 7, 3, 4, 4, 1, 2, 6, 7, 8),
        "nondestabilizable Legendrian m(10_161) with non-maximal tb",
    ),
    "m10_139": KnotRecord(
        "m10_139",
        14,
        (6, 7, 8, 9, 10, 11, 12, 13, 13, 5, 7, 9, 11, 2, 4, 6, 8, 10, 11,
         13, 12, 10, 11, 9, 10, 8, 9, 7, 8, 6, 7, 5, 6, 4, 5, 3, 4, 2),
        "Legendrian m(10_139) with non-maximal tb and vanishing contact homology",
    ),
    "unknot": KnotRecord("unknot", 2, (), "standard tb = -1 unknot"),
}


def load_knot_file(path) -> KnotRecord:
    """Read a knot record: JSON object {name, strands, word, notes}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FrontError(f"cannot read knot file {path}: {exc}") from None
    if not isinstance(data, dict) or "word" not in data:
        raise FrontError(f"knot file {path} must be an object with a 'word' field")
    word = data["word"]
    if isinstance(word, str):
        braid = parse_plat_word(word, data.get("strands"))
    else:
        if not all(isinstance(k, int) for k in word):
            raise FrontError("word entries must be integers")
        braid = PlatBraid(int(data.get("strands") or default_strands(word)), tuple(word))
    return KnotRecord(str(data.get("name", Path(path).stem)), braid.strands, braid.word,
                      str(data.get("notes", "")))


def get_knot(name: str) -> KnotRecord:
    try:
        return KNOTS[name]
    except KeyError:
        raise FrontError(f"unknown knot {name!r}; built-in knots: {', '.join(sorted(KNOTS))}") from None
