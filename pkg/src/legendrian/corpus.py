"""Named example fronts and a random front generator for stress tests."""

from __future__ import annotations

import random

from .front import FrontDiagram, FrontEvent, parse_front

CORPUS = {
    "unknot": "L1 R1",
    "trefoil": "L1 L3 X2 X2 X2 R1 R1",
    "zigzag": "L1 L3 R2 R1",
    "unlink": "L1 L1 R1 R1",
    "torus25": "L1 L3 X2 X2 X2 X2 X2 R1 R1",
    "clasp": "L1 L3 X2 X2 R1 R1",
}

KNOTS = ("unknot", "trefoil", "zigzag", "torus25")


def corpus_front(name: str) -> FrontDiagram:
    return parse_front(CORPUS[name])


def random_front(rng: random.Random, max_crossings: int = 6, max_strands: int = 6) -> FrontDiagram:
    """A random closed front with at most ``max_crossings`` crossings."""
    events: list[FrontEvent] = []
    n = crossings = 0
    budget = rng.randint(1, 12)
    while budget > 0 or n:
        choices = []
        if n + 2 <= max_strands and budget > 0:
            choices += ["L"] * 2
        if n >= 2:
            choices += ["R"] * (2 if budget > 0 else 6)
            if crossings < max_crossings and budget > 0:
                choices += ["X"] * 3
        kind = rng.choice(choices)
        if kind == "L":
            events.append(FrontEvent("L", rng.randint(1, n + 1)))
            n += 2
        elif kind == "R":
            events.append(FrontEvent("R", rng.randint(1, n - 1)))
            n -= 2
        else:
            events.append(FrontEvent("X", rng.randint(1, n - 1)))
            crossings += 1
        budget -= 1
    return FrontDiagram(events)
