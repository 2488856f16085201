"""Morse movies: the combinatorial shadow of a one-parameter family of functions.

A movie alternates slices and events, ``S0, e1, S1, ..., eM, SM``, with
``S0`` and ``SM`` empty.  A slice lists critical points in decreasing
critical value together with their Morse indices and the Morse
differential ``eta`` (row ``i`` is the boundary of point ``i``).  Events:

* ``B(k, lam)``: birth of points at ``k`` (index lam+1) and ``k+1`` (index lam)
* ``D(k)``: death of the points at ``k, k+1``
* ``TCV(k)``: the critical values of ``k`` and ``k+1`` cross
* ``MS(k, l)``: handle slide, ``k < l`` of equal index
* ``P``: nothing happens
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .augment import Augmentation, linearize, verify_augmentation
from .errors import AugmentationCheckFailed, MovieError, NotGraded, NotNormal
from .front import FrontDiagram, FrontEvent, MaslovPotential, maslov_potential
from .ruling import Ruling, is_graded, is_normal, switch_case, sweep_involutions
from .splash import SplashedDGA, splash_dga, xm_name, xp_name
from .z2 import GradedComplex, Z2Matrix, barannikov_pairing, homology_dims, is_acyclic

EVENT_KINDS = ("B", "D", "TCV", "MS", "P")


@dataclass(frozen=True)
class MorseSlice:
    indices: tuple[int, ...]
    eta: Z2Matrix

    @classmethod
    def empty(cls) -> "MorseSlice":
        return cls((), Z2Matrix.zeros(0))

    @classmethod
    def from_pairs(cls, indices: Sequence[int], pairs: Sequence[tuple[int, int]]) -> "MorseSlice":
        """Slice with eta(i, j) = 1 exactly for the given 1-based pairs."""
        n = len(indices)
        return cls(tuple(indices), Z2Matrix.from_entries(n, [(i - 1, j - 1) for i, j in pairs]))

    @property
    def size(self) -> int:
        return len(self.indices)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based access; out-of-range entries are 0."""
        i, j = ij
        if 1 <= i <= self.size and 1 <= j <= self.size:
            return self.eta[i - 1, j - 1]
        return 0

    def to_json(self) -> dict:
        return {"points": [{"index": lam} for lam in self.indices], "eta": self.eta.to_dense()}

    @classmethod
    def from_json(cls, data: Mapping) -> "MorseSlice":
        indices = tuple(int(p["index"]) for p in data.get("points", []))
        eta = data.get("eta") or []
        return cls(indices, Z2Matrix.from_dense(eta, len(indices)) if indices else Z2Matrix.zeros(0))


@dataclass(frozen=True)
class MovieEvent:
    kind: str
    k: int = 0
    l: int = 0
    lam: int = 0

    def __str__(self) -> str:
        if self.kind == "B":
            return f"B({self.k},{self.lam})"
        if self.kind == "MS":
            return f"MS({self.k},{self.l})"
        if self.kind == "P":
            return "P"
        return f"{self.kind}({self.k})"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind != "P":
            out["pos"] = self.k
        if self.kind == "B":
            out["index"] = self.lam
        if self.kind == "MS":
            out["l"] = self.l
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "MovieEvent":
        kind = str(data["kind"]).upper()
        if kind not in EVENT_KINDS:
            raise MovieError(f"unknown movie event kind {kind!r}")
        return cls(kind, int(data.get("pos", 0)), int(data.get("l", 0)), int(data.get("index", 0)))


@dataclass(frozen=True)
class MorseMovie:
    slices: tuple[MorseSlice, ...]
    events: tuple[MovieEvent, ...]

    def __post_init__(self):
        if len(self.slices) != len(self.events) + 1:
            raise MovieError("a movie needs exactly one more slice than events")

    def to_json(self) -> dict:
        return {"slices": [s.to_json() for s in self.slices], "events": [e.to_json() for e in self.events]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "MorseMovie":
        if isinstance(data, str):
            data = json.loads(data)
        events = tuple(MovieEvent.from_json(e) for e in data.get("events", []))
        slices = [MorseSlice.from_json(s) for s in data.get("slices", [])]
        if not slices:
            slices = [MorseSlice.empty()]
        return cls(tuple(slices), events)

    def with_parallel(self, positions: Sequence[int]) -> "MorseMovie":
        """Insert a P event after each listed slice index (duplicating that slice)."""
        slices, events = [self.slices[0]], []
        extra = sorted(positions)
        for j, e in enumerate(self.events):
            while extra and extra[0] == j:
                events.append(MovieEvent("P"))
                slices.append(slices[-1])
                extra.pop(0)
            events.append(e)
            slices.append(self.slices[j + 1])
        for _ in extra:
            events.append(MovieEvent("P"))
            slices.append(slices[-1])
        return MorseMovie(tuple(slices), tuple(events))


# ---------------------------------------------------------------------------
# event rules


def _swap(eta: Z2Matrix, k: int) -> Z2Matrix:
    return eta.conjugate_by_transposition(k - 1, k)


def _elementary(n: int, k: int, l: int) -> Z2Matrix:
    return Z2Matrix.identity(n).with_entry(k - 1, l - 1, 1)


def birth_conjugator(after: MorseSlice, k: int) -> Z2Matrix:
    """I + E with E(i,k) = eta(i,k+1) and E(k+1,j) = eta(k,j): the birth isomorphism."""
    n = after.size
    entries = [(i, k) for i in range(1, k) if after[i, k + 1]]
    entries += [(k + 1, j) for j in range(k + 2, n + 1) if after[k, j]]
    return Z2Matrix.identity(n) + Z2Matrix.from_entries(n, [(i - 1, j - 1) for i, j in entries])


def split_extension(before: MorseSlice, k: int) -> Z2Matrix:
    """eta of ``before`` relabelled around a new pair at k, k+1 with k -> k+1."""
    n = before.size + 2

    def up(w: int) -> int:
        return w if w < k else w + 2

    entries = [(up(i + 1) - 1, up(j + 1) - 1) for i, j in before.eta.entries()]
    entries.append((k - 1, k))
    return Z2Matrix.from_entries(n, entries)


def death_quotient(before: MorseSlice, k: int) -> Z2Matrix:
    """eta(i,j) + eta(i,k+1) eta(k,j) on the points other than k, k+1."""
    n = before.size - 2
    keep = [w for w in range(1, before.size + 1) if w not in (k, k + 1)]
    entries = []
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            if (before[i, j] + before[i, k + 1] * before[k, j]) % 2:
                entries.append((a, b))
    return Z2Matrix.from_entries(n, entries)


def slice_problem(s: MorseSlice) -> str | None:
    n = s.size
    if s.eta.shape != (n, n):
        return "eta has the wrong shape"
    if not s.eta.is_strictly_upper():
        return "eta is not strictly upper triangular"
    for i, j in s.eta.entries():
        if s.indices[i] != s.indices[j] + 1:
            return f"eta({i + 1},{j + 1}) joins indices {s.indices[i]} and {s.indices[j]}"
    if not (s.eta @ s.eta).is_zero():
        return "eta^2 != 0"
    if not is_acyclic(s.eta):
        return "slice complex is not acyclic"
    return None


def event_problem(before: MorseSlice, e: MovieEvent, after: MorseSlice) -> str | None:
    n = before.size
    k = e.k
    if e.kind == "P":
        return None if before == after else "P changes the slice"
    if e.kind == "B":
        if not 1 <= k <= n + 1:
            return f"birth position {k} out of range"
        lam = before.indices[:k - 1] + (e.lam + 1, e.lam) + before.indices[k - 1:]
        if after.indices != lam:
            return "birth indices do not match"
        a = birth_conjugator(after, k)
        if a @ after.eta != split_extension(before, k) @ a:
            return "birth slices are not related by the birth isomorphism"
        return None
    if not 1 <= k <= n - 1:
        return f"position {k} out of range"
    if e.kind == "D":
        if before[k, k + 1] != 1:
            return "death requires eta(k,k+1) = 1"
        if after.indices != before.indices[:k - 1] + before.indices[k + 1:]:
            return "death indices do not match"
        if after.eta != death_quotient(before, k):
            return "death slice is not the quotient complex"
        return None
    if e.kind == "TCV":
        if before[k, k + 1] != 0:
            return "crossing critical values require eta(k,k+1) = 0"
        lam = list(before.indices)
        lam[k - 1], lam[k] = lam[k], lam[k - 1]
        if after.indices != tuple(lam):
            return "crossing indices do not match"
        if after.eta != _swap(before.eta, k):
            return "crossing slice is not the relabelled complex"
        return None
    if e.kind == "MS":
        l = e.l
        if not 1 <= k < l <= n:
            return "handle slide needs 1 <= k < l <= n"
        if before.indices[k - 1] != before.indices[l - 1]:
            return "handle slide between points of different index"
        if after.indices != before.indices:
            return "handle slide changes indices"
        a = _elementary(n, k, l)
        if after.eta != a @ before.eta @ a:
            return "handle slide slice is not (I+E_kl) eta (I+E_kl)"
        return None
    return f"unknown event {e.kind}"


@dataclass(frozen=True)
class MovieDiagnostics:
    ok: bool
    step: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else f"invalid at step {self.step}: {self.message}"


def validate_movie(movie: MorseMovie) -> MovieDiagnostics:
    """First violated rule; step 2j is slice j and step 2j-1 is event j."""
    if movie.slices[0].size or movie.slices[-1].size:
        return MovieDiagnostics(False, 0 if movie.slices[0].size else 2 * len(movie.events), "end slices must be empty")
    for j, s in enumerate(movie.slices):
        problem = slice_problem(s)
        if problem:
            return MovieDiagnostics(False, 2 * j, problem)
    for j, e in enumerate(movie.events, start=1):
        problem = event_problem(movie.slices[j - 1], e, movie.slices[j])
        if problem:
            return MovieDiagnostics(False, 2 * j - 1, f"{e}: {problem}")
    return MovieDiagnostics(True)


def check_movie(movie: MorseMovie) -> None:
    report = validate_movie(movie)
    if not report:
        raise MovieError(report.message, report.step)


# ---------------------------------------------------------------------------
# movie <-> front


_FRONT_KIND = {"B": "L", "D": "R", "TCV": "X"}


def movie_to_front(movie: MorseMovie) -> tuple[FrontDiagram, MaslovPotential]:
    """Front of the critical values, with Morse indices as the potential."""
    check_movie(movie)
    events = [FrontEvent(_FRONT_KIND[e.kind], e.k) for e in movie.events if e.kind in _FRONT_KIND]
    front = FrontDiagram(events)
    values: dict[int, int] = {}
    m = 0
    for j, e in enumerate(movie.events, start=1):
        if e.kind not in _FRONT_KIND:
            continue
        m += 1
        for strand, lam in zip(front.zone(m), movie.slices[j].indices):
            values.setdefault(strand, lam)
    return front, MaslovPotential(front, values, 0)


def ruling_to_movie(front: FrontDiagram, ruling: Ruling | Sequence[int]) -> MorseMovie:
    """Movie whose slices realise the ruling: each pair is joined by one trajectory.

    Switches are realised by handle slides around the crossing; which
    slides are used depends on the relative position of the partners.
    """
    if not isinstance(ruling, Ruling) or not ruling.involutions:
        ruling = sweep_involutions(front, ruling.switches if isinstance(ruling, Ruling) else ruling)
    if not is_normal(front, ruling):
        raise NotNormal("ruling is not normal")
    potential = maslov_potential(front)
    if potential.modulus or not is_graded(front, ruling, 0, potential):
        raise NotGraded("ruling is not graded")
    slices = [MorseSlice.empty()]
    events: list[MovieEvent] = []

    def push(event: MovieEvent, after: MorseSlice) -> None:
        events.append(event)
        slices.append(after)

    def pure(m: int) -> MorseSlice:
        tau = ruling.involutions[m]
        lam = potential.zone(m)
        return MorseSlice.from_pairs(lam, [(i, t) for i, t in enumerate(tau, start=1) if i < t])

    def apply(event: MovieEvent) -> None:
        before = slices[-1]
        if event.kind == "MS":
            a = _elementary(before.size, event.k, event.l)
            push(event, MorseSlice(before.indices, a @ before.eta @ a))
        elif event.kind == "TCV":
            lam = list(before.indices)
            lam[event.k - 1], lam[event.k] = lam[event.k], lam[event.k - 1]
            push(event, MorseSlice(tuple(lam), _swap(before.eta, event.k)))

    for m, e in enumerate(front.events, start=1):
        k = e.pos
        if e.kind == "L":
            push(MovieEvent("B", k, lam=potential.zone(m)[k]), pure(m))
        elif e.kind == "R":
            push(MovieEvent("D", k), pure(m))
        elif m not in ruling.switches:
            apply(MovieEvent("TCV", k))
        else:
            tau = ruling.involutions[m - 1]
            a, b = tau[k - 1], tau[k]
            case = switch_case(tau, k)
            apply(MovieEvent("MS", k, k + 1))
            apply(MovieEvent("TCV", k))
            if case in (1, 5):
                lo, hi = min(a, b), max(a, b)
                apply(MovieEvent("MS", lo, hi))
            apply(MovieEvent("MS", k, k + 1))
        if slices[-1] != pure(m):
            raise MovieError(f"movie does not return to the ruling's slice after event {m}")
    movie = MorseMovie(tuple(slices), tuple(events))
    check_movie(movie)
    return movie


def slice_pairings(movie: MorseMovie) -> list[tuple[int, ...]]:
    """Barannikov involution (1-based) of every slice."""
    return [tuple(t + 1 for t in barannikov_pairing(s.eta).tau) for s in movie.slices]


# ---------------------------------------------------------------------------
# movie -> augmentation


def movie_plan(movie: MorseMovie, front: FrontDiagram) -> list:
    """One parallel insert left of each event, then the event itself (or P)."""
    plan: list = []
    front_events = iter(front.events)
    for e in movie.events:
        plan.append("P")
        plan.append(next(front_events) if e.kind in _FRONT_KIND else "P")
    return plan


def movie_to_augmentation(movie: MorseMovie) -> tuple[SplashedDGA, Augmentation]:
    """Splashed DGA of the movie's front and the augmentation read off the slices."""
    front, potential = movie_to_front(movie)
    splashed = splash_dga(front, movie_plan(movie, front), potential)
    values = {g: 0 for g in splashed.dga.generators}
    for j, e in enumerate(movie.events, start=1):
        before, after = movie.slices[j - 1], movie.slices[j]
        left, right = 2 * j - 1, 2 * j
        for zone, s in ((left, before), (right, after)):
            for i, t in s.eta.entries():
                values[xp_name(zone, i + 1, t + 1)] = 1
        if e.kind == "B":
            k = e.k
            for i in range(1, k):
                if after[i, k + 1]:
                    values[xm_name(right, i, k)] = 1
            for t in range(k + 2, after.size + 1):
                if after[k, t]:
                    values[xm_name(right, k + 1, t)] = 1
        elif e.kind == "MS":
            values[xm_name(right, e.k, e.l)] = 1
    aug = Augmentation(values, 0)
    report = verify_augmentation(splashed.dga, aug)
    if not report:
        raise AugmentationCheckFailed(f"{report.generator}: {report.reason}")
    return splashed, aug


# ---------------------------------------------------------------------------
# generating family homology


@dataclass
class _Level:
    """Cells of one t-value: labels, eta used in the boundary, omitted pair."""

    indices: tuple[int, ...]
    eta: MorseSlice
    omit: tuple[int, int] | None = None
    cells: list = field(default_factory=list)

    def has(self, i: int, j: int) -> bool:
        return i < j <= len(self.indices) and i >= 1 and (i, j) != self.omit


def gf_complex(movie: MorseMovie) -> GradedComplex:
    """Cellular complex on the cells xp (one per t-value) and xm (one per interval)."""
    check_movie(movie)
    levels: list[_Level] = []
    for j, s in enumerate(movie.slices):
        if j:
            e = movie.events[j - 1]
            prev = movie.slices[j - 1]
            omit = (e.k, e.k + 1) if e.kind in ("D", "TCV") else None
            levels.append(_Level(prev.indices, prev, omit))
        levels.append(_Level(s.indices, s))

    degrees: dict = {}
    d: dict = {}

    def plus(t: int, i: int, j: int):
        return ("p", t, i, j)

    for t, lv in enumerate(levels):
        lam = lv.indices
        n = len(lam)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if not lv.has(i, j):
                    continue
                degrees[plus(t, i, j)] = lam[i - 1] - lam[j - 1] - 1
                out = []
                for l in range(i + 1, j):
                    if lv.eta[i, l] and lv.has(l, j):
                        out.append(plus(t, l, j))
                    if lv.eta[l, j] and lv.has(i, l):
                        out.append(plus(t, i, l))
                d[plus(t, i, j)] = out

    def add(acc: dict, cell) -> None:
        acc[cell] = acc.get(cell, 0) ^ 1

    for t in range(1, len(levels)):
        # the interval (t-1, t) carries the labels of whichever end is a slice
        if t % 2:
            s = movie.slices[(t - 1) // 2]
        else:
            s = movie.slices[t // 2]
        lam = s.indices
        n = len(lam)
        prev_level, here = levels[t - 1], levels[t]
        event = movie.events[(t - 1) // 2] if t % 2 == 0 else None
        hat = _hat(event, prev_level, movie.slices[t // 2 - 1] if event else None, s, t - 1)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                cell = ("m", t, i, j)
                degrees[cell] = lam[i - 1] - lam[j - 1]
                acc: dict = {}
                for c in hat(i, j):
                    add(acc, c)
                for l in range(i + 1, j):
                    if s[i, l]:
                        add(acc, ("m", t, l, j))
                    if s[l, j]:
                        add(acc, ("m", t, i, l))
                if here.has(i, j):
                    add(acc, plus(t, i, j))
                d[cell] = [c for c, v in acc.items() if v]
    return GradedComplex.from_mapping(degrees, d)


def _hat(event: MovieEvent | None, level: _Level, before: MorseSlice | None, after: MorseSlice, t: int):
    """Transport of the cells of level ``t`` into the labels of the next interval."""

    def x(i: int, j: int) -> list:
        return [("p", t, i, j)] if level.has(i, j) else []

    if event is None or event.kind == "P":
        return x
    k = event.k
    if event.kind == "B":
        def pre(w: int) -> int:
            return w if w < k else w - 2

        def birth(i: int, j: int) -> list:
            if i in (k, k + 1) and j in (k, k + 1) or i == k or j == k + 1:
                return []
            if i == k + 1:
                out = []
                for l in range(k + 2, j):
                    if after[k, l]:
                        out += x(pre(l), pre(j))
                return out
            if j == k:
                out = []
                for l in range(i + 1, k):
                    if after[l, k + 1]:
                        out += x(i, pre(l))
                return out
            return x(pre(i), pre(j))

        return birth
    if event.kind == "D":
        def up(w: int) -> int:
            return w if w < k else w + 2

        def death(i: int, j: int) -> list:
            a, b = up(i), up(j)
            out = x(a, b)
            if before[a, k + 1]:
                out += x(k, b)
            if before[k, b]:
                out += x(a, k + 1)
            return out

        return death
    if event.kind == "TCV":
        def bar(w: int) -> int:
            return k + 1 if w == k else k if w == k + 1 else w

        return lambda i, j: x(bar(i), bar(j))
    if event.kind == "MS":
        l = event.l

        def slide(i: int, j: int) -> list:
            out = x(i, j)
            if i == k and j != l:
                out += x(l, j)
            if j == l and i != k:
                out += x(i, k)
            return out

        return slide
    raise MovieError(f"unknown event {event.kind}")


def gf_homology(movie: MorseMovie) -> dict[int, int]:
    return homology_dims(gf_complex(movie))


# ---------------------------------------------------------------------------
# theorem checks


def format_dims(dims: Mapping[int, int]) -> str:
    return "{" + ",".join(f"{k}:{v}" for k, v in sorted(dims.items()) if v) + "}"


@dataclass(frozen=True)
class Theorem53Report:
    gh: dict
    lch: dict

    @property
    def equal(self) -> bool:
        return self.gh == self.lch

    def __str__(self) -> str:
        verdict = "EQUAL" if self.equal else "DIFFERENT"
        return f"GH = {format_dims(self.gh)}; LCH = {format_dims(self.lch)}; {verdict}"

    def to_json(self) -> dict:
        return {
            "gh": {str(k): v for k, v in self.gh.items()},
            "lch": {str(k): v for k, v in self.lch.items()},
            "equal": self.equal,
        }


def theorem53_check(movie: MorseMovie) -> Theorem53Report:
    """Compare generating family homology with linearized homology of the induced augmentation."""
    gh = gf_homology(movie)
    splashed, aug = movie_to_augmentation(movie)
    lch = homology_dims(linearize(splashed.dga, aug))
    return Theorem53Report(gh, lch)


def duality_check(dims: Mapping[int, int], kind: str = "LCH") -> bool:
    """dim_k = dim_-k for k != +-1 and dim_1 = dim_-1 + 1.

    The relation is the same for linearized and generating family homology;
    ``kind`` only labels the report.
    """
    if kind.upper() not in ("LCH", "GF", "GH"):
        raise ValueError(f"unknown homology kind {kind!r}")
    dims = {int(k): int(v) for k, v in dims.items()}
    if dims.get(1, 0) != dims.get(-1, 0) + 1:
        return False
    return all(dims.get(-k, 0) == v for k, v in dims.items() if k not in (1, -1))
