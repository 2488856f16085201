"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report lines.
"""

from __future__ import annotations

import random
import time

import pytest

from legendrian.augment import (
    augmentation_to_ruling,
    enumerate_augmentations,
    iter_augmentations,
    linearized_homology,
    zone_complexes_acyclic,
)
from legendrian.corpus import CORPUS, KNOTS, corpus_front, random_front
from legendrian.front import parse_front
from legendrian.movie import (
    MorseMovie,
    MorseSlice,
    MovieEvent,
    duality_check,
    gf_homology,
    movie_to_augmentation,
    ruling_to_movie,
    theorem53_check,
)
from legendrian.ruling import enumerate_rulings, is_graded, is_normal, ruling_polynomial
from legendrian.splash import splash_dga
from legendrian.z2 import Z2Matrix, barannikov_pairing, dga_check

TREFOIL = "L1 L3 X2 X2 X2 R1 R1"


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def test_criterion_1_trefoil_rulings(report):
    start = time.perf_counter()
    front = parse_front(TREFOIL)
    rulings = enumerate_rulings(front)
    normal = [r for r in rulings if is_normal(front, r)]
    abnormal = [r.key for r in rulings if not is_normal(front, r)]
    elapsed = time.perf_counter() - start
    ok = len(rulings) == 4 and len(normal) == 3 and abnormal == [(4,)] and elapsed < 1.0
    report(1, ok, f"{len(rulings)} rulings, {len(normal)} normal, abnormal {abnormal} (middle crossing is event 4), {elapsed:.3f}s")


def test_criterion_2_ruling_polynomial(report):
    poly = ruling_polynomial(parse_front(TREFOIL), rho=0)
    report(2, str(poly) == "z^2 + 2", f"R^0(z) = {poly}")


def test_criterion_3_unknot_dga(report):
    s = splash_dga(parse_front("L1 R1"))
    augs = enumerate_augmentations(s, rho=0)
    dims = linearized_homology(s.dga, augs[0]) if len(augs) == 1 else None
    ok = len(s.dga.generators) == 3 and dga_check(s.dga).ok and len(augs) == 1 and dims == {1: 1}
    report(3, ok, f"{len(s.dga.generators)} generators, {len(augs)} augmentation(s), homology {dims}")


def test_criterion_4_d_squared(report):
    rng = random.Random(20240501)
    failures = []
    fronts = [corpus_front(n) for n in CORPUS]
    randoms = [random_front(rng, max_crossings=6) for _ in range(100)]
    assert all(len(f.crossings()) <= 6 for f in randoms)
    for front in fronts + randoms:
        if not dga_check(splash_dga(front).dga).ok:
            failures.append(str(front))
    report(4, not failures, f"{len(fronts)} corpus + {len(randoms)} random fronts, {len(failures)} failures")


def test_criterion_5_acyclic_zones_and_rulings(report):
    failures = 0
    total = 0
    for name in CORPUS:
        front = corpus_front(name)
        s = splash_dga(front)
        for aug in iter_augmentations(s, rho=0):
            total += 1
            try:
                ruling = augmentation_to_ruling(s, aug)
                ok = zone_complexes_acyclic(s, aug) and is_normal(front, ruling) and is_graded(front, ruling, 0)
            except Exception:
                ok = False
            failures += not ok
    report(5, failures == 0, f"{total} graded augmentations checked, {failures} failures")


def test_criterion_6_roundtrip(report):
    failures = []
    total = 0
    for name in CORPUS:
        front = corpus_front(name)
        for ruling in enumerate_rulings(front, normal=True, rho=0):
            total += 1
            splashed, aug = movie_to_augmentation(ruling_to_movie(front, ruling))
            if augmentation_to_ruling(splashed, aug).switches != ruling.switches:
                failures.append((name, ruling.key))
    report(6, not failures and total > 0, f"{total} graded normal rulings, failures {failures}")


def test_criterion_7_generating_family_homology(report):
    start = time.perf_counter()
    pair = MorseSlice.from_pairs((1, 0), [(1, 2)])
    empty = MorseSlice.empty()
    movies = {"unknot": MorseMovie((empty, pair, empty), (MovieEvent("B", 1, lam=0), MovieEvent("D", 1)))}
    trefoil = parse_front(TREFOIL)
    for ruling in enumerate_rulings(trefoil, normal=True, rho=0):
        movies[f"trefoil{set(ruling.key)}"] = ruling_to_movie(trefoil, ruling)
    reports = {name: theorem53_check(m) for name, m in movies.items()}
    elapsed = time.perf_counter() - start
    trefoil_tables = [r.gh for n, r in reports.items() if n.startswith("trefoil")]
    ok = (
        len(movies) == 4
        and all(r.equal for r in reports.values())
        and all(t == {0: 2, 1: 1} for t in trefoil_tables)
        and elapsed < 10.0
    )
    lines = "; ".join(f"{n}: {r}" for n, r in reports.items())
    report(7, ok, f"{lines}; {elapsed:.2f}s")


def test_criterion_8_duality(report):
    lch_tables = 0
    gh_tables = 0
    failures = []
    for name in KNOTS:
        front = corpus_front(name)
        s = splash_dga(front)
        for aug in iter_augmentations(s, rho=0):
            lch_tables += 1
            dims = linearized_homology(s.dga, aug)
            if not duality_check(dims, "LCH"):
                failures.append((name, "LCH", dims))
        for ruling in enumerate_rulings(front, normal=True, rho=0):
            gh_tables += 1
            dims = gf_homology(ruling_to_movie(front, ruling))
            if not duality_check(dims, "GF"):
                failures.append((name, "GF", dims))
    report(8, not failures, f"knots {list(KNOTS)}: {lch_tables} LCH and {gh_tables} GH tables, failures {failures}")


def test_criterion_9_negative_control(report):
    front = parse_front("L1 L3 R2 R1")
    rulings = enumerate_rulings(front)
    augs = enumerate_augmentations(splash_dga(front), rho=0)
    report(9, not rulings and not augs, f"{len(rulings)} rulings, {len(augs)} graded augmentations")


def _unitriangular(n: int, rng: random.Random) -> Z2Matrix:
    entries = [(i, i) for i in range(n)]
    entries += [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return Z2Matrix.from_entries(n, entries)


def _random_exact(rng: random.Random) -> Z2Matrix:
    """A planted perfect matching conjugated by a random unitriangular matrix."""
    n = 2 * rng.randint(1, 16)
    points = list(range(n))
    rng.shuffle(points)
    pure = Z2Matrix.from_entries(n, [(min(a, b), max(a, b)) for a, b in zip(points[::2], points[1::2])])
    m = _unitriangular(n, rng)
    return m @ pure @ m.inverse()


def test_criterion_10_barannikov_uniqueness(report):
    rng = random.Random(10)
    failures = 0
    sizes = set()
    for _ in range(1000):
        d = _random_exact(rng)
        sizes.add(d.nrows)
        tau = barannikov_pairing(d).tau
        m = _unitriangular(d.nrows, rng)
        if barannikov_pairing(m @ d @ m.inverse()).tau != tau:
            failures += 1
    ok = failures == 0 and max(sizes) <= 32
    report(10, ok, f"1000 matrices of size {min(sizes)}..{max(sizes)}, {failures} failures")
