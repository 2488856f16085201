"""Front diagrams of Legendrian links: parsing, strands, classical invariants.

A front is read left to right as a word of events.  ``L k`` is a left cusp
whose two new strands occupy positions ``k, k+1``; ``R k`` is a right cusp
joining the strands at ``k, k+1``; ``X k`` is a crossing of the strands at
``k, k+1``.  Positions count from the top (highest z) starting at 1.

Orientation convention: each component is traversed starting on the upper
strand of its leftmost left cusp, moving right.  A crossing is positive
when both strands through it point the same way horizontally.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPosition, MultiComponent, NonClosedDiagram, UnknownToken

KINDS = ("L", "R", "X")
_TOKEN = re.compile(r"^([LRX])([1-9][0-9]*)$")


@dataclass(frozen=True)
class FrontEvent:
    kind: str
    pos: int

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"


@dataclass(frozen=True)
class Strand:
    """An arc between a left cusp and a right cusp (events are 1-based)."""

    id: int
    left_cusp: int
    right_cusp: int
    upper_at_left: bool
    upper_at_right: bool


class FrontDiagram:
    """A validated front.  Zone ``m`` is the region after event ``m``."""

    def __init__(self, events: Iterable[FrontEvent | tuple[str, int]]):
        evs = []
        for e in events:
            if not isinstance(e, FrontEvent):
                e = FrontEvent(*e)
            evs.append(e)
        self.events: tuple[FrontEvent, ...] = tuple(evs)
        self._zones = _sweep(self.events)

    # -- construction ------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "FrontDiagram":
        return parse_front(text)

    def __str__(self) -> str:
        return " ".join(str(e) for e in self.events)

    def __repr__(self) -> str:
        return f"FrontDiagram({str(self)!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrontDiagram) and self.events == other.events

    def __hash__(self) -> int:
        return hash(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def to_json(self) -> dict:
        return {"events": [{"kind": e.kind, "pos": e.pos} for e in self.events]}

    # -- structure ---------------------------------------------------------

    @property
    def profile(self) -> tuple[int, ...]:
        """Strand counts n_0 = 0, n_1, ..., n_E = 0."""
        return tuple(len(z) for z in self._zones)

    def zone(self, m: int) -> tuple[int, ...]:
        """Strand ids in zone ``m`` listed top to bottom."""
        return self._zones[m]

    @cached_property
    def strands(self) -> tuple[Strand, ...]:
        left: dict[int, tuple[int, bool]] = {}
        right: dict[int, tuple[int, bool]] = {}
        for m, e in enumerate(self.events, start=1):
            if e.kind == "L":
                a, b = self._zones[m][e.pos - 1], self._zones[m][e.pos]
                left[a], left[b] = (m, True), (m, False)
            elif e.kind == "R":
                a, b = self._zones[m - 1][e.pos - 1], self._zones[m - 1][e.pos]
                right[a], right[b] = (m, True), (m, False)
        return tuple(
            Strand(s, left[s][0], right[s][0], left[s][1], right[s][1])
            for s in sorted(left)
        )

    def cusp_partner(self, strand: int, side: str) -> int:
        s = self.strands[strand]
        m = s.left_cusp if side == "left" else s.right_cusp
        zone = self._zones[m] if side == "left" else self._zones[m - 1]
        pos = self.events[m - 1].pos
        a, b = zone[pos - 1], zone[pos]
        return b if a == strand else a

    def crossings(self) -> list[int]:
        """1-based event indices of the crossings, left to right."""
        return [m for m, e in enumerate(self.events, start=1) if e.kind == "X"]

    def left_cusps(self) -> list[int]:
        return [m for m, e in enumerate(self.events, start=1) if e.kind == "L"]

    def right_cusps(self) -> list[int]:
        return [m for m, e in enumerate(self.events, start=1) if e.kind == "R"]

    def crossing_strands(self, event: int) -> tuple[int, int]:
        """(upper, lower) strand ids entering crossing ``event`` from the left."""
        e = self.events[event - 1]
        if e.kind != "X":
            raise ValueError(f"event {event} is not a crossing")
        zone = self._zones[event - 1]
        return zone[e.pos - 1], zone[e.pos]

    @cached_property
    def _components(self) -> tuple[tuple[int, ...], ...]:
        parent = list(range(len(self.strands)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.strands:
            for side in ("left", "right"):
                a, b = find(s.id), find(self.cusp_partner(s.id, side))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for s in self.strands:
            groups.setdefault(find(s.id), []).append(s.id)
        # components ordered by their leftmost left cusp == smallest strand id
        return tuple(tuple(g) for _, g in sorted(groups.items()))

    def traverse(self, start: int, heading: int = +1) -> tuple[dict[int, int], dict[int, int], int]:
        """Walk one component from ``start`` in direction ``heading``.

        Returns the running index per strand (0 on ``start``, +1 when a cusp
        leads to a higher strand, -1 otherwise), the heading per strand, and
        the rotation number ``r`` with ``k - k' = 2r``.
        """
        values: dict[int, int] = {start: 0}
        direction: dict[int, int] = {start: heading}
        current, value = start, 0
        while True:
            s = self.strands[current]
            side = "right" if heading > 0 else "left"
            was_upper = s.upper_at_right if heading > 0 else s.upper_at_left
            current = self.cusp_partner(current, side)
            value += -1 if was_upper else +1
            heading = -heading
            if current == start:
                break
            values[current] = value
            direction[current] = heading
        # the rotation sign is flipped when the walk opposes the orientation
        r = -value // 2
        return values, direction, r

    @cached_property
    def _traversals(self) -> tuple[tuple[dict[int, int], dict[int, int], int], ...]:
        return tuple(self.traverse(comp[0], +1) for comp in self._components)

    def component_of(self, strand: int) -> int:
        for i, comp in enumerate(self._components):
            if strand in comp:
                return i
        raise KeyError(strand)

    def strand_direction(self, strand: int) -> int:
        """+1 if the oriented strand points right, -1 if left."""
        return self._traversals[self.component_of(strand)][1][strand]


def _sweep(events: Sequence[FrontEvent]) -> tuple[tuple[int, ...], ...]:
    zones: list[tuple[int, ...]] = [()]
    current: list[int] = []
    next_id = 0
    for m, e in enumerate(events, start=1):
        n = len(current)
        if e.kind not in KINDS:
            raise UnknownToken(f"{e.kind}{e.pos}", m)
        if e.kind == "L":
            if not 1 <= e.pos <= n + 1:
                raise InvalidPosition(m, e.kind, e.pos, n)
            current[e.pos - 1:e.pos - 1] = [next_id, next_id + 1]
            next_id += 2
        else:
            if not 1 <= e.pos <= n - 1:
                raise InvalidPosition(m, e.kind, e.pos, n)
            k = e.pos - 1
            if e.kind == "R":
                del current[k:k + 2]
            else:
                current[k], current[k + 1] = current[k + 1], current[k]
        zones.append(tuple(current))
    if current:
        raise NonClosedDiagram(len(current))
    return tuple(zones)


def parse_front(text: str) -> FrontDiagram:
    """Parse an event word such as ``"L1 L3 X2 X2 X2 R1 R1"`` or its JSON form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return FrontDiagram(FrontEvent(str(e["kind"]), int(e["pos"])) for e in data["events"])
    events = []
    for i, token in enumerate(stripped.split(), start=1):
        match = _TOKEN.match(token)
        if not match:
            raise UnknownToken(token, i)
        events.append(FrontEvent(match.group(1), int(match.group(2))))
    return FrontDiagram(events)


def components(front: FrontDiagram) -> list[tuple[int, ...]]:
    """Strand ids of each link component, ordered by leftmost left cusp."""
    return list(front._components)


def rotation_number(front: FrontDiagram, component: int = 0) -> int:
    return front._traversals[component][2]


@dataclass(frozen=True)
class MaslovPotential:
    """Integer (or residue) attached to each strand; upper = lower + 1 at cusps.

    ``modulus`` is the common modulus used for every comparison: the gcd
    of ``2|r|`` over components, or 0 when all rotation numbers vanish.
    """

    front: FrontDiagram
    values: Mapping[int, int]
    modulus: int = 0

    def __getitem__(self, strand: int) -> int:
        return self.values[strand]

    def reduce(self, value: int) -> int:
        return value % self.modulus if self.modulus else value

    def zone(self, m: int) -> tuple[int, ...]:
        return tuple(self.values[s] for s in self.front.zone(m))

    def crossing_degree(self, event: int) -> int:
        """Grading of crossing ``event``: mu(upper-left strand) - mu(lower-left strand)."""
        upper, lower = self.front.crossing_strands(event)
        return self.reduce(self.values[upper] - self.values[lower])

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "zones": [list(self.zone(m)) for m in range(len(self.front.events) + 1)],
        }


def maslov_potential(front: FrontDiagram, shifts: Sequence[int] | None = None) -> MaslovPotential:
    """Potential normalised to minimum 0 per component, then shifted per component.

    Components with nonzero rotation ``r`` get residues mod ``2|r|``.
    """
    comps = front._components
    if shifts is None:
        shifts = [0] * len(comps)
    if len(shifts) != len(comps):
        raise ValueError(f"expected {len(comps)} shifts, got {len(shifts)}")
    modulus = 0
    for _, _, r in front._traversals:
        modulus = math.gcd(modulus, 2 * abs(r))
    values: dict[int, int] = {}
    for (raw, _, r), shift in zip(front._traversals, shifts):
        base = min(raw.values())
        comp_mod = 2 * abs(r)
        for s, v in raw.items():
            v = v - base
            if comp_mod:
                v %= comp_mod
            values[s] = v + shift
    if modulus:
        values = {s: v % modulus for s, v in values.items()}
    return MaslovPotential(front, values, modulus)


def thurston_bennequin(front: FrontDiagram) -> int:
    if len(front._components) != 1:
        raise MultiComponent("tb is only implemented for knots")
    return writhe(front) - len(front.right_cusps())


def writhe(front: FrontDiagram) -> int:
    total = 0
    for m in front.crossings():
        a, b = front.crossing_strands(m)
        total += 1 if front.strand_direction(a) == front.strand_direction(b) else -1
    return total


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int | None
    rotation: tuple[int, ...]
    component_count: int

    def to_json(self) -> dict:
        return {"tb": self.tb, "rotation": list(self.rotation), "components": self.component_count}


def classical_invariants(front: FrontDiagram) -> ClassicalInvariants:
    comps = components(front)
    tb = thurston_bennequin(front) if len(comps) == 1 else None
    return ClassicalInvariants(
        tb, tuple(rotation_number(front, i) for i in range(len(comps))), len(comps)
    )
