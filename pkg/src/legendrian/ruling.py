"""Rulings of fronts: sweeps, normality, gradings, enumeration, ruling polynomial.

A ruling is encoded by its switch set (1-based crossing event indices).  The
per-zone involution ``tau`` is a tuple with ``tau[i-1]`` the partner of
position ``i``; positions are 1-based and 1 is the top strand.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import PartneredCrossing, RightCuspMismatch, SwitchOfPartneredStrands
from .front import FrontDiagram, MaslovPotential, maslov_potential

Involution = tuple[int, ...]


@dataclass(frozen=True)
class Ruling:
    switches: frozenset[int]
    pairing: tuple[tuple[int, int], ...] = ()
    involutions: tuple[Involution, ...] = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        return {"switches": sorted(self.switches), "pairing": [list(p) for p in self.pairing]}

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.switches))


def _transpose_partners(tau: list[int], k: int) -> None:
    """Conjugate the involution by the transposition (k k+1), in place."""
    i, j = k - 1, k
    a, b = tau[i], tau[j]
    tau[i], tau[j] = b, a
    for idx, partner in enumerate(tau):
        if partner == k:
            tau[idx] = k + 1
        elif partner == k + 1:
            tau[idx] = k


def _left_cusp(tau: list[int], k: int) -> list[int]:
    shifted = [p + 2 if p >= k else p for p in tau]
    return shifted[:k - 1] + [k + 1, k] + shifted[k - 1:]


def _right_cusp(tau: list[int], k: int) -> list[int]:
    rest = tau[:k - 1] + tau[k + 1:]
    return [p - 2 if p > k + 1 else p for p in rest]


def sweep_involutions(front: FrontDiagram, switches: Iterable[int]) -> Ruling:
    """Run the left-to-right sweep and return the ruling with its zone involutions."""
    switches = frozenset(switches)
    crossings = set(front.crossings())
    stray = switches - crossings
    if stray:
        raise ValueError(f"switches {sorted(stray)} are not crossing events")
    tau: list[int] = []
    labels: list[int] = []  # left-cusp event owning each position
    pairing = []
    zones: list[Involution] = [()]
    for m, e in enumerate(front.events, start=1):
        k = e.pos
        if e.kind == "L":
            tau = _left_cusp(tau, k)
            labels[k - 1:k - 1] = [m, m]
        elif e.kind == "R":
            if tau[k - 1] != k + 1:
                raise RightCuspMismatch("right cusp strands belong to different pairs", m)
            pairing.append((labels[k - 1], m))
            tau = _right_cusp(tau, k)
            del labels[k - 1:k + 1]
        elif tau[k - 1] == k + 1:
            if m in switches:
                raise SwitchOfPartneredStrands("switch between partnered strands", m)
            raise PartneredCrossing("partnered strands cross", m)
        elif m not in switches:
            _transpose_partners(tau, k)
            labels[k - 1], labels[k] = labels[k], labels[k - 1]
        zones.append(tuple(tau))
    return Ruling(switches, tuple(sorted(pairing)), tuple(zones))


def switch_case(tau: Sequence[int], k: int) -> int:
    """Which of the six relative configurations the strands at k, k+1 are in.

    With ``a = tau(k)``, ``b = tau(k+1)``: 1 is b<a<k, 2 is a<b<k,
    3 is a<k<k+1<b, 4 is b<k<k+1<a, 5 is k+1<b<a, 6 is k+1<a<b.
    """
    a, b = tau[k - 1], tau[k]
    if a < k and b < k:
        return 1 if b < a else 2
    if a > k + 1 and b > k + 1:
        return 5 if b < a else 6
    if a < k < k + 1 < b:
        return 3
    if b < k < k + 1 < a:
        return 4
    raise ValueError(f"positions {k}, {k + 1} are partnered")


NORMAL_CASES = frozenset({1, 3, 5})


def _switch_is_normal(tau: Sequence[int], k: int) -> bool:
    a, b = tau[k - 1], tau[k]
    return (a < k and b > k + 1) or (b < a < k) or (a > b > k + 1)


def is_normal(front: FrontDiagram, ruling: Ruling | Iterable[int]) -> bool:
    ruling = _as_ruling(front, ruling)
    for m in ruling.switches:
        if not _switch_is_normal(ruling.involutions[m - 1], front.events[m - 1].pos):
            return False
    return True


def _divides(rho: int, degree: int, modulus: int) -> bool:
    step = math.gcd(rho, modulus)
    return degree % step == 0 if step else degree == 0


def is_graded(
    front: FrontDiagram,
    ruling: Ruling | Iterable[int],
    rho: int = 0,
    potential: MaslovPotential | None = None,
) -> bool:
    """Every switch has degree divisible by ``rho`` (``rho = 0``: degree exactly 0).

    With a potential defined mod M the test is taken mod gcd(rho, M).
    """
    ruling = _as_ruling(front, ruling)
    if potential is None:
        potential = maslov_potential(front)
    return all(
        _divides(rho, potential.crossing_degree(m), potential.modulus) for m in ruling.switches
    )


def _as_ruling(front: FrontDiagram, ruling: Ruling | Iterable[int]) -> Ruling:
    if isinstance(ruling, Ruling) and ruling.involutions:
        return ruling
    switches = ruling.switches if isinstance(ruling, Ruling) else ruling
    return sweep_involutions(front, switches)


def enumerate_rulings(
    front: FrontDiagram,
    normal: bool = False,
    rho: int | None = None,
    potential: MaslovPotential | None = None,
) -> list[Ruling]:
    """All rulings passing the filters, ordered lexicographically by switch set.

    ``rho=None`` applies no grading filter.
    """
    if rho is not None and potential is None:
        potential = maslov_potential(front)
    events = front.events
    found: list[frozenset[int]] = []

    def allowed_switch(m: int, tau: Sequence[int]) -> bool:
        k = events[m - 1].pos
        if normal and not _switch_is_normal(tau, k):
            return False
        if rho is not None and not _divides(rho, potential.crossing_degree(m), potential.modulus):
            return False
        return True

    def walk(m: int, tau: list[int], switches: tuple[int, ...]) -> None:
        if m > len(events):
            found.append(frozenset(switches))
            return
        e = events[m - 1]
        k = e.pos
        if e.kind == "L":
            walk(m + 1, _left_cusp(tau, k), switches)
        elif e.kind == "R":
            if tau[k - 1] == k + 1:
                walk(m + 1, _right_cusp(tau, k), switches)
        elif tau[k - 1] != k + 1:
            if allowed_switch(m, tau):
                walk(m + 1, tau, switches + (m,))
            plain = list(tau)
            _transpose_partners(plain, k)
            walk(m + 1, plain, switches)

    walk(1, [], ())
    found.sort(key=lambda s: tuple(sorted(s)))
    return [sweep_involutions(front, s) for s in found]


def j_statistic(front: FrontDiagram, ruling: Ruling | Iterable[int]) -> int:
    switches = ruling.switches if isinstance(ruling, Ruling) else frozenset(ruling)
    return len(switches) - len(front.right_cusps()) + 1


@dataclass(frozen=True)
class RulingPolynomial:
    """Laurent polynomial in z with nonnegative integer coefficients."""

    coefficients: tuple[tuple[int, int], ...]

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "RulingPolynomial":
        return cls(tuple(sorted(Counter(exponents).items(), reverse=True)))

    def __getitem__(self, exponent: int) -> int:
        return dict(self.coefficients).get(exponent, 0)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def evaluate(self, z: float) -> float:
        return sum(c * z**e for e, c in self.coefficients)

    def to_json(self) -> dict:
        return {"coefficients": {str(e): c for e, c in self.coefficients}}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for e, c in self.coefficients:
            if e == 0:
                parts.append(str(c))
                continue
            mono = "z" if e == 1 else f"z^{e}"
            parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)


def ruling_polynomial(
    front: FrontDiagram, rho: int = 0, potential: MaslovPotential | None = None
) -> RulingPolynomial:
    rulings = enumerate_rulings(front, normal=True, rho=rho, potential=potential)
    return RulingPolynomial.from_exponents(j_statistic(front, r) for r in rulings)


def all_switch_subsets(front: FrontDiagram) -> Iterator[frozenset[int]]:
    """Every subset of crossings; used by exhaustive cross-checks."""
    crossings = front.crossings()
    for mask in range(1 << len(crossings)):
        yield frozenset(c for i, c in enumerate(crossings) if mask >> i & 1)
