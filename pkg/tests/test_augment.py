from __future__ import annotations

import itertools
import random
from collections import Counter

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from legendrian.augment import (
    Augmentation,
    augmentation_to_ruling,
    enumerate_augmentations,
    iter_augmentations,
    linearize,
    linearized_homology,
    support_modulus,
    verify_augmentation,
    zone_complexes_acyclic,
)
from legendrian.corpus import KNOTS, corpus_front, random_front
from legendrian.errors import NotAnAugmentation
from legendrian.front import classical_invariants, maslov_potential
from legendrian.movie import duality_check
from legendrian.ruling import enumerate_rulings
from legendrian.splash import splash_dga

fronts = st.builds(random_front, st.randoms(use_true_random=False), st.just(4), st.just(4))
LIMIT = 200


def draw_knot(rng: random.Random):
    """First random front that is a knot with rotation number 0."""
    while True:
        front = random_front(rng, 5, 4)
        if knot_with_zero_rotation(front):
            return front


knots = st.randoms(use_true_random=False).map(draw_knot)


def kills(poly, values) -> bool:
    """Independent evaluation of a noncommutative Z/2 polynomial."""
    total = 0
    for word in poly:
        total ^= all(values.get(letter, 0) for letter in word)
    return total == 0


def brute_force_augmentations(dga, rho=0) -> set[tuple]:
    step = support_modulus(rho, dga.modulus)
    cand = [g for g, deg in dga.degrees.items() if (deg % step == 0 if step else deg == 0)]
    out = set()
    for bits in itertools.product((0, 1), repeat=len(cand)):
        values = dict(zip(cand, bits))
        if all(kills(dga.differential[g], values) for g in dga.generators):
            out.add(tuple(sorted(g for g, v in values.items() if v)))
    return out


def knot_with_zero_rotation(front) -> bool:
    inv = classical_invariants(front)
    return inv.component_count == 1 and inv.rotation == (0,)


# -- verification --------------------------------------------------------------


def test_verify_examples():
    dga = splash_dga(corpus_front("unknot")).dga
    good = Augmentation({"xp_1_1_2": 1})
    assert verify_augmentation(dga, good)
    bad = verify_augmentation(dga, Augmentation({}))
    assert not bad and bad.generator == "xm_1_1_2"
    assert verify_augmentation(dga, {"nope": 1}).reason == "not a generator"
    wrong_degree = verify_augmentation(dga, Augmentation({"xp_1_1_2": 1, "z_2": 1}))
    assert not wrong_degree and wrong_degree.generator == "z_2"
    assert Augmentation.from_json(good.to_json()) == good


def test_corpus_augmentation_counts():
    counts = {name: len(enumerate_augmentations(splash_dga(corpus_front(name)))) for name in
              ("unknot", "trefoil", "zigzag", "unlink", "clasp")}
    assert counts == {"unknot": 1, "trefoil": 80, "zigzag": 0, "unlink": 4, "clasp": 64}


def test_iter_is_lazy_and_matches_list():
    s = splash_dga(corpus_front("trefoil"))
    first = list(itertools.islice(iter_augmentations(s), 5))
    assert first == enumerate_augmentations(s)[:5]


@pytest.mark.parametrize("name", ["unknot", "zigzag", "unlink"])
def test_corpus_against_brute_force(name):
    dga = splash_dga(corpus_front(name)).dga
    found = {tuple(sorted(a.support())) for a in enumerate_augmentations(splash_dga(corpus_front(name)))}
    assert found == brute_force_augmentations(dga)


@settings(max_examples=60, deadline=None)
@given(fronts)
def test_random_against_brute_force(front):
    s = splash_dga(front)
    step = support_modulus(0, s.modulus)
    cand = [g for g, deg in s.dga.degrees.items() if (deg % step == 0 if step else deg == 0)]
    assume(len(cand) <= 14)
    found = {tuple(sorted(a.support())) for a in enumerate_augmentations(s)}
    assert found == brute_force_augmentations(s.dga)


def test_ungraded_on_unknot_against_brute_force():
    s = splash_dga(corpus_front("unknot"))
    found = {tuple(sorted(a.support())) for a in enumerate_augmentations(s, rho=1)}
    assert found == brute_force_augmentations(s.dga, rho=1)
    assert len(found) == 4


# -- linearized homology -------------------------------------------------------


def test_linearize_unknot():
    s = splash_dga(corpus_front("unknot"))
    aug = enumerate_augmentations(s)[0]
    cx = linearize(s.dga, aug)
    assert cx.image("xm_1_1_2") == ["xp_1_1_2"]
    assert cx.image("z_2") == ["xp_1_1_2"]
    assert linearized_homology(s.dga, aug) == {1: 1}
    with pytest.raises(NotAnAugmentation):
        linearize(s.dga, Augmentation({}))


@pytest.mark.parametrize(
    "name, table",
    [("unknot", {1: 1}), ("trefoil", {0: 2, 1: 1}), ("unlink", {1: 2}), ("torus25", {0: 4, 1: 1})],
)
def test_homology_tables(name, table):
    s = splash_dga(corpus_front(name))
    tables = {tuple(sorted(linearized_homology(s.dga, a).items())) for a in iter_augmentations(s)}
    assert tables == {tuple(sorted(table.items()))}


def test_clasp_tables():
    s = splash_dga(corpus_front("clasp"))
    tables = Counter(tuple(sorted(linearized_homology(s.dga, a).items())) for a in iter_augmentations(s))
    assert tables == Counter({((-1, 1), (1, 3)): 64})


@settings(max_examples=40, deadline=None)
@given(knots)
def test_euler_characteristic_is_tb(front):
    s = splash_dga(front)
    chi = sum((-1) ** (deg % 2) for deg in s.dga.degrees.values())
    assert chi == classical_invariants(front).tb
    for aug in itertools.islice(iter_augmentations(s), 20):
        dims = linearized_homology(s.dga, aug)
        assert sum((-1) ** (k % 2) * v for k, v in dims.items()) == chi


# -- duality -------------------------------------------------------------------


@pytest.mark.parametrize("name", KNOTS)
def test_duality_on_corpus_knots(name):
    s = splash_dga(corpus_front(name))
    for aug in iter_augmentations(s):
        assert duality_check(linearized_homology(s.dga, aug))


@settings(max_examples=40, deadline=None)
@given(knots)
def test_duality_on_random_knots(front):
    s = splash_dga(front)
    for aug in itertools.islice(iter_augmentations(s), 20):
        assert duality_check(linearized_homology(s.dga, aug))


def test_duality_fails_for_links():
    s = splash_dga(corpus_front("unlink"))
    aug = enumerate_augmentations(s)[0]
    assert not duality_check(linearized_homology(s.dga, aug))


# -- augmentations to rulings --------------------------------------------------


def test_trefoil_rulings_from_augmentations():
    s = splash_dga(corpus_front("trefoil"))
    counts = Counter(augmentation_to_ruling(s, a).key for a in iter_augmentations(s))
    assert counts == Counter({(3,): 32, (5,): 32, (3, 4, 5): 16})


@pytest.mark.parametrize("name", ["unknot", "trefoil", "unlink", "torus25", "clasp"])
def test_augmentations_hit_every_graded_normal_ruling(name):
    front = corpus_front(name)
    s = splash_dga(front)
    hit = set()
    for aug in iter_augmentations(s):
        assert zone_complexes_acyclic(s, aug)
        hit.add(augmentation_to_ruling(s, aug).key)
    assert hit == {r.key for r in enumerate_rulings(front, normal=True, rho=0)}


def test_shifted_clasp_augmentations():
    clasp = corpus_front("clasp")
    shifted = maslov_potential(clasp, [0, -3])
    s = splash_dga(clasp, potential=shifted)
    keys = {augmentation_to_ruling(s, a).key for a in iter_augmentations(s, rho=2)}
    assert keys == {(), (3, 4)}


@settings(max_examples=40, deadline=None)
@given(fronts)
def test_random_augmentations_give_graded_normal_rulings(front):
    s = splash_dga(front)
    expected = {r.key for r in enumerate_rulings(front, normal=True, rho=0)}
    hit = set()
    augs = list(itertools.islice(iter_augmentations(s), LIMIT))
    for aug in augs:
        ruling = augmentation_to_ruling(s, aug)
        assert ruling.key in expected
        hit.add(ruling.key)
    if len(augs) < LIMIT:
        assert hit == expected


# -- parallel inserts ----------------------------------------------------------


def homology_set(s) -> set:
    return {tuple(sorted(linearized_homology(s.dga, a).items())) for a in iter_augmentations(s)}


@pytest.mark.parametrize("name", ["unknot", "trefoil", "unlink", "clasp"])
def test_homology_set_invariant_under_parallel_inserts(name):
    front = corpus_front(name)
    base = homology_set(splash_dga(front))
    rng = random.Random(name)
    for _ in range(2):
        plan = []
        for e in front.events:
            plan += ["P"] * rng.randint(0, 1)
            plan.append(e)
        assert homology_set(splash_dga(front, plan=plan)) == base


def test_parallel_insert_multiplies_counts():
    front = corpus_front("trefoil")
    base = len(enumerate_augmentations(splash_dga(front)))
    plan = list(front.events[:3]) + ["P"] + list(front.events[3:])
    assert len(enumerate_augmentations(splash_dga(front, plan=plan))) > base
