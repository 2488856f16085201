"""Splashed Chekanov-Eliashberg DGA of a front.

The front is cut into laminated zones separated by inserts.  Insert ``m``
sits immediately left of zone ``m``; zone 0 (before the first insert) and
the last zone are empty.  By default there is one insert per front event;
a sample plan may add parallel inserts ``"P"`` anywhere.

Generators are ``xp_m_i_j`` and ``xm_m_i_j`` (zone ``m``, strands ``i<j``
counted from the top), ``y_m`` for a crossing insert and ``z_m`` for a
right-cusp insert.  With ``X+`` and ``X-`` the strictly upper triangular
matrices of a zone,

    d X+_m = (X+_m)^2
    d X-_m = X+_m (I + X-_m) + (I + X-_m) Xt_{m-1}

where ``Xt_{m-1}`` is the previous zone's ``X+`` transported across insert
``m`` (conjugated at a crossing, extended at a left cusp, quotiented at a
right cusp, unchanged at a parallel insert).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .front import FrontDiagram, FrontEvent, MaslovPotential, maslov_potential
from .z2 import DGA, Z2Poly

PlanItem = Union[FrontEvent, str]
ZERO = Z2Poly()
ONE = Z2Poly.one()


def xp_name(m: int, i: int, j: int) -> str:
    return f"xp_{m}_{i}_{j}"


def xm_name(m: int, i: int, j: int) -> str:
    return f"xm_{m}_{i}_{j}"


def y_name(m: int) -> str:
    return f"y_{m}"


def z_name(m: int) -> str:
    return f"z_{m}"


@dataclass(frozen=True)
class Insert:
    """Insert ``m``: kind is ``L``, ``R``, ``X`` or ``P``; ``event`` is the front event index."""

    index: int
    kind: str
    pos: int = 0
    event: int | None = None

    def to_json(self) -> dict:
        return {"insert": self.index, "kind": self.kind, "pos": self.pos, "event": self.event}


@dataclass(frozen=True)
class Zone:
    index: int
    strands: tuple[int, ...]
    potential: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.strands)

    def pairs(self) -> list[tuple[int, int]]:
        n = self.size
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def to_json(self) -> dict:
        return {"zone": self.index, "strands": self.size, "potential": list(self.potential)}


@dataclass(frozen=True)
class SplashedDGA:
    dga: DGA
    front: FrontDiagram
    potential: MaslovPotential
    zones: tuple[Zone, ...]
    inserts: tuple[Insert, ...]  # inserts[m-1] is insert m

    @property
    def modulus(self) -> int:
        return self.dga.modulus

    def insert(self, m: int) -> Insert:
        return self.inserts[m - 1]

    def zone(self, m: int) -> Zone:
        return self.zones[m]

    def zone_of_event(self, event: int) -> int:
        """Index of the zone directly right of front event ``event``."""
        for ins in self.inserts:
            if ins.event == event:
                return ins.index
        raise KeyError(event)

    def to_json(self) -> dict:
        return {
            **self.dga.to_json(),
            "zones": [z.to_json() for z in self.zones],
            "inserts": [i.to_json() for i in self.inserts],
        }


def default_plan(front: FrontDiagram) -> list[PlanItem]:
    return list(front.events)


def _normalize_plan(front: FrontDiagram, plan: Sequence[PlanItem] | None) -> list[Insert]:
    if plan is None:
        plan = default_plan(front)
    inserts = []
    event = 0
    for m, item in enumerate(plan, start=1):
        if isinstance(item, str) and item.upper() == "P":
            inserts.append(Insert(m, "P"))
            continue
        event += 1
        if event > len(front.events) or front.events[event - 1] != item:
            raise ValueError(f"plan item {m} ({item}) does not match the front events")
        inserts.append(Insert(m, item.kind, item.pos, event))
    if event != len(front.events):
        raise ValueError("plan omits front events")
    return inserts


def splash_dga(
    front: FrontDiagram,
    plan: Sequence[PlanItem] | None = None,
    potential: MaslovPotential | None = None,
) -> SplashedDGA:
    """Build the splashed DGA; ``plan`` interleaves front events with ``"P"``."""
    if potential is None:
        potential = maslov_potential(front)
    inserts = _normalize_plan(front, plan)
    reduce = potential.reduce

    zones = [Zone(0, (), ())]
    for ins in inserts:
        strands = front.zone(ins.event) if ins.event is not None else zones[-1].strands
        zones.append(Zone(ins.index, strands, tuple(potential[s] for s in strands)))

    degrees: dict[str, int] = {}
    diff: dict[str, Z2Poly] = {}

    def xp(m: int, i: int, j: int) -> Z2Poly:
        return Z2Poly.gen(xp_name(m, i, j)) if i < j else ZERO

    def xm(m: int, i: int, j: int) -> Z2Poly:
        return Z2Poly.gen(xm_name(m, i, j)) if i < j else ZERO

    for zone in zones:
        m, mu = zone.index, zone.potential
        for i, j in zone.pairs():
            degrees[xp_name(m, i, j)] = reduce(mu[i - 1] - mu[j - 1] - 1)
        for i, j in zone.pairs():
            degrees[xm_name(m, i, j)] = reduce(mu[i - 1] - mu[j - 1])

    for ins in inserts:
        m = ins.index
        prev, cur = zones[m - 1], zones[m]
        if ins.kind == "X":
            upper, lower = prev.potential[ins.pos - 1], prev.potential[ins.pos]
            degrees[y_name(m)] = reduce(upper - lower)
            diff[y_name(m)] = xp(m - 1, ins.pos, ins.pos + 1)
        elif ins.kind == "R":
            degrees[z_name(m)] = reduce(1)
            diff[z_name(m)] = ONE + xp(m - 1, ins.pos, ins.pos + 1)
        xt = transported(ins, prev.size, cur.size)
        n = cur.size
        for i, j in cur.pairs():
            diff[xp_name(m, i, j)] = _sum(xp(m, i, s) * xp(m, s, j) for s in range(i + 1, j))
            acc = xp(m, i, j) + xt(i, j)
            for s in range(i + 1, j):
                acc = acc + xp(m, i, s) * xm(m, s, j) + xm(m, i, s) * xt(s, j)
            diff[xm_name(m, i, j)] = acc
        assert n == cur.size

    # canonical generator order: zone by zone, then y/z of the following insert
    order: list[str] = []
    for zone in zones:
        m = zone.index
        ins = inserts[m - 1] if m >= 1 else None
        if ins is not None and ins.kind == "X":
            order.append(y_name(m))
        if ins is not None and ins.kind == "R":
            order.append(z_name(m))
        order += [xp_name(m, i, j) for i, j in zone.pairs()]
        order += [xm_name(m, i, j) for i, j in zone.pairs()]
    dga = DGA(
        {g: degrees[g] for g in order},
        {g: diff.get(g, ZERO) for g in order},
        potential.modulus,
    )
    return SplashedDGA(dga, front, potential, tuple(zones), tuple(inserts))


def _sum(polys: Iterable[Z2Poly]) -> Z2Poly:
    acc = ZERO
    for p in polys:
        acc = acc + p
    return acc


def transported(ins: Insert, n_prev: int, n_cur: int):
    """Return ``(u, v) -> Xt_{m-1}[u, v]`` in zone-``m`` positions.

    At a left cusp zone ``m-1`` is relabelled by omitting ``k, k+1``; at a
    right cusp zone ``m`` is.
    """
    m, k = ins.index, ins.pos

    def x(u: int, v: int) -> Z2Poly:
        if u < v <= n_prev:
            return Z2Poly.gen(xp_name(m - 1, u, v))
        return ZERO

    if ins.kind == "P":
        return x

    if ins.kind == "X":
        y = Z2Poly.gen(y_name(m))

        def bar(w: int) -> int:
            return k + 1 if w == k else k if w == k + 1 else w

        def xhat(u: int, v: int) -> Z2Poly:
            return ZERO if (u, v) == (k, k + 1) else x(u, v)

        def crossing(u: int, v: int) -> Z2Poly:
            if (u, v) == (k, k + 1):
                return ZERO
            out = xhat(bar(u), bar(v))
            if u == k + 1:
                out = out + y * xhat(k + 1, v)
            if v == k:
                out = out + xhat(u, k) * y
            return out

        return crossing

    if ins.kind == "L":
        def back(w: int) -> int:
            return w if w < k else w - 2

        def left(u: int, v: int) -> Z2Poly:
            if (u, v) == (k, k + 1):
                return ONE
            if u in (k, k + 1) or v in (k, k + 1):
                return ZERO
            return x(back(u), back(v))

        return left

    if ins.kind == "R":
        z = Z2Poly.gen(z_name(m))

        def up(w: int) -> int:
            return w if w < k else w + 2

        def right(u: int, v: int) -> Z2Poly:
            a, b = up(u), up(v)
            out = x(a, b)
            if a < k and b > k + 1:
                out = (
                    out
                    + x(a, k + 1) * x(k, b)
                    + x(a, k) * z * x(k, b)
                    + x(a, k + 1) * z * x(k + 1, b)
                    + x(a, k) * z * z * x(k + 1, b)
                )
            return out

        return right

    raise ValueError(f"unknown insert kind {ins.kind!r}")


def degree_table(splashed: SplashedDGA) -> dict[str, int]:
    return dict(splashed.dga.degrees)
