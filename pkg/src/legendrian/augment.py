"""Augmentations of splashed DGAs, linearized homology, and the passage to rulings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import NormalityViolation, NotAcyclic, NotAnAugmentation
from .ruling import Ruling, _left_cusp, _right_cusp, _transpose_partners, is_graded, is_normal, sweep_involutions
from .splash import SplashedDGA, transported, xm_name, xp_name, y_name, z_name
from .z2 import DGA, GradedComplex, Z2Matrix, barannikov_pairing, homology_dims, is_acyclic


def support_modulus(rho: int, modulus: int) -> int:
    """Modulus in which an augmentation's support must have degree 0."""
    return math.gcd(rho, modulus)


def _allowed(degree: int, step: int) -> bool:
    return degree % step == 0 if step else degree == 0


@dataclass(frozen=True)
class Augmentation:
    values: Mapping[str, int]
    rho: int = 0

    def __getitem__(self, name: str) -> int:
        return self.values.get(name, 0)

    def support(self) -> list[str]:
        return [g for g, v in self.values.items() if v]

    def to_json(self) -> dict:
        return {"values": dict(self.values), "rho": self.rho}

    @classmethod
    def from_json(cls, data: Mapping) -> "Augmentation":
        return cls({str(k): int(v) & 1 for k, v in data["values"].items()}, int(data.get("rho", 0)))


@dataclass(frozen=True)
class AugmentationReport:
    ok: bool
    generator: str | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_augmentation(dga: DGA, aug: Augmentation | Mapping[str, int], rho: int | None = None) -> AugmentationReport:
    """Check epsilon(d g) = 0 for every generator, plus graded support when ``rho`` is set.

    ``rho`` defaults to the augmentation's own flag.
    """
    if isinstance(aug, Augmentation):
        values, rho = aug.values, aug.rho if rho is None else rho
    else:
        values = aug
    unknown = set(values) - set(dga.degrees)
    if unknown:
        return AugmentationReport(False, sorted(unknown)[0], "not a generator")
    if rho is not None:
        step = support_modulus(rho, dga.modulus)
        for g, deg in dga.degrees.items():
            if values.get(g, 0) and not _allowed(deg, step):
                return AugmentationReport(False, g, f"support in degree {deg}")
    for g in dga.degrees:
        if dga.differential[g].evaluate(values):
            return AugmentationReport(False, g, "epsilon(d g) = 1")
    return AugmentationReport(True)


def _zone_matrix(values: Mapping[str, int], m: int, n: int, plus: bool = True) -> Z2Matrix:
    name = xp_name if plus else xm_name
    entries = [
        (i - 1, j - 1)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if values.get(name(m, i, j), 0)
    ]
    return Z2Matrix.from_entries(n, entries)


def zone_matrices(splashed: SplashedDGA, aug: Augmentation | Mapping[str, int]) -> list[Z2Matrix]:
    """E+_m = epsilon(X+_m) for every zone, including the empty end zones."""
    values = aug.values if isinstance(aug, Augmentation) else aug
    return [_zone_matrix(values, z.index, z.size) for z in splashed.zones]


def enumerate_augmentations(splashed: SplashedDGA, rho: int = 0) -> list[Augmentation]:
    """All ``rho``-graded augmentations, by propagation from left to right.

    Free choices are the admissible entries of E-_m and the values on y_m,
    z_m; E+_m is then forced to be (I + E-_m) Et_{m-1} (I + E-_m)^-1.
    """
    return list(iter_augmentations(splashed, rho))


def iter_augmentations(splashed: SplashedDGA, rho: int = 0) -> Iterator[Augmentation]:
    dga = splashed.dga
    step = support_modulus(rho, dga.modulus)
    zones, inserts = splashed.zones, splashed.inserts
    order = dga.generators

    def ok(name: str) -> bool:
        return _allowed(dga.degrees[name], step)

    def walk(m: int, values: dict[str, int]) -> Iterator[dict[str, int]]:
        if m > len(inserts):
            yield values
            return
        ins = inserts[m - 1]
        prev, cur = zones[m - 1], zones[m]
        k = ins.pos
        extra: list[str] = []
        if ins.kind == "X":
            if values.get(xp_name(m - 1, k, k + 1), 0):
                return
            extra = [y_name(m)]
        elif ins.kind == "R":
            if not values.get(xp_name(m - 1, k, k + 1), 0):
                return
            extra = [z_name(m)]
        xt = transported(ins, prev.size, cur.size)
        free = [g for g in extra if ok(g)]
        free += [xm_name(m, i, j) for i, j in cur.pairs() if ok(xm_name(m, i, j))]
        fixed = [g for g in extra if g not in free]
        fixed += [xm_name(m, i, j) for i, j in cur.pairs() if xm_name(m, i, j) not in free]
        n = cur.size
        for bits in itertools.product((0, 1), repeat=len(free)):
            local = dict(values)
            local.update(zip(free, bits))
            local.update((g, 0) for g in fixed)
            tilde = Z2Matrix.from_entries(
                n,
                [(i - 1, j - 1) for i, j in cur.pairs() if xt(i, j).evaluate(local)],
            )
            conj = Z2Matrix.identity(n) + _zone_matrix(local, m, n, plus=False)
            plus = conj @ tilde @ conj.inverse()
            good = True
            for i, j in plus.entries():
                name = xp_name(m, i + 1, j + 1)
                if not ok(name):
                    good = False
                    break
                local[name] = 1
            if not good:
                continue
            for i, j in cur.pairs():
                local.setdefault(xp_name(m, i, j), 0)
            yield from walk(m + 1, local)

    for values in walk(1, {}):
        aug = Augmentation({g: values.get(g, 0) for g in order}, rho)
        report = verify_augmentation(dga, aug)
        if not report:
            raise AssertionError(f"propagation produced a non-augmentation at {report.generator}")
        yield aug


def linearize(dga: DGA, aug: Augmentation | Mapping[str, int], rho: int | None = None) -> GradedComplex:
    """Linear part of d after the change of variables s -> s + epsilon(s)."""
    if not isinstance(aug, Augmentation):
        aug = Augmentation(dict(aug), 0 if rho is None else rho)
    elif rho is not None:
        aug = Augmentation(aug.values, rho)
    report = verify_augmentation(dga, aug)
    if not report:
        raise NotAnAugmentation(f"{report.generator}: {report.reason}")
    values = aug.values
    d: dict[str, list[str]] = {}
    for g in dga.generators:
        counts: dict[str, int] = {}
        for word in dga.differential[g]:
            for i, letter in enumerate(word):
                if all(values.get(other, 0) for t, other in enumerate(word) if t != i):
                    counts[letter] = counts.get(letter, 0) ^ 1
        d[g] = [s for s in dga.generators if counts.get(s)]
    return GradedComplex.from_mapping(
        dict(dga.degrees), d, support_modulus(aug.rho, dga.modulus)
    )


def linearized_homology(dga: DGA, aug: Augmentation | Mapping[str, int], rho: int | None = None) -> dict[int, int]:
    return homology_dims(linearize(dga, aug, rho))


def augmentation_to_ruling(splashed: SplashedDGA, aug: Augmentation) -> Ruling:
    """Pair each zone complex canonically and read off the switches.

    A crossing is a switch exactly when the pairing does not change across it.
    """
    report = verify_augmentation(splashed.dga, aug)
    if not report:
        raise NotAnAugmentation(f"{report.generator}: {report.reason}")
    mats = zone_matrices(splashed, aug)
    taus: list[tuple[int, ...]] = []
    for zone, mat in zip(splashed.zones, mats):
        if not is_acyclic(mat):
            raise NotAcyclic(f"zone {zone.index} complex is not acyclic")
        taus.append(tuple(t + 1 for t in barannikov_pairing(mat).tau))
    switches = []
    for ins in splashed.inserts:
        m, k = ins.index, ins.pos
        before, after = list(taus[m - 1]), taus[m]
        if ins.kind == "P":
            expected = before
        elif ins.kind == "L":
            expected = _left_cusp(before, k)
        elif ins.kind == "R":
            if before[k - 1] != k + 1:
                raise NormalityViolation(f"right cusp at insert {m} joins unpaired strands")
            expected = _right_cusp(before, k)
        elif tuple(before) == after:
            switches.append(ins.event)
            continue
        else:
            expected = list(before)
            _transpose_partners(expected, k)
        if tuple(expected) != after:
            raise NormalityViolation(f"pairing changes inconsistently across insert {m}")
    ruling = sweep_involutions(splashed.front, switches)
    if not is_normal(splashed.front, ruling):
        raise NormalityViolation("resulting ruling is not normal")
    if not is_graded(splashed.front, ruling, aug.rho, splashed.potential):
        raise NormalityViolation("resulting ruling is not graded")
    return ruling


def zone_complexes_acyclic(splashed: SplashedDGA, aug: Augmentation) -> bool:
    return all(is_acyclic(mat) for mat in zone_matrices(splashed, aug))
