from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian.errors import NotAComplex, NotExact, NotTriangular
from legendrian.z2 import (
    DGA,
    GradedComplex,
    Z2Matrix,
    Z2Poly,
    barannikov_pairing,
    dga_check,
    homology_dims,
    is_acyclic,
)


# -- oracles -----------------------------------------------------------------


def dense_rank(rows: list[list[int]]) -> int:
    """Row echelon rank over Z/2 on plain lists."""
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def dense_homology(degrees: list[int], d: list[list[int]]) -> dict[int, int]:
    out = {}
    for deg in sorted(set(degrees)):
        idx = [i for i, g in enumerate(degrees) if g == deg]
        up = [i for i, g in enumerate(degrees) if g == deg + 1]
        dn = [j for j, g in enumerate(degrees) if g == deg - 1]
        rank_out = dense_rank([[d[i][j] for j in dn] for i in idx]) if dn and idx else 0
        rank_in = dense_rank([[d[i][j] for j in idx] for i in up]) if up and idx else 0
        dim = len(idx) - rank_out - rank_in
        if dim:
            out[deg] = dim
    return out


def unitriangular(n: int, rng: random.Random) -> Z2Matrix:
    entries = [(i, i) for i in range(n)]
    entries += [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return Z2Matrix.from_entries(n, entries)


def planted(n: int, rng: random.Random) -> tuple[Z2Matrix, tuple[int, ...]]:
    """Random triangular exact differential with a known canonical pairing."""
    points = list(range(n))
    rng.shuffle(points)
    tau = [0] * n
    entries = []
    for a, b in zip(points[::2], points[1::2]):
        i, j = min(a, b), max(a, b)
        tau[i], tau[j] = j, i
        entries.append((i, j))
    pure = Z2Matrix.from_entries(n, entries)
    m = unitriangular(n, rng)
    return m @ pure @ m.inverse(), tuple(tau)


def brute_force_pairings(d: Z2Matrix) -> set[tuple[int, ...]]:
    """Every tau realised by some unitriangular change of basis."""
    n = d.nrows
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = set()
    for bits in itertools.product((0, 1), repeat=len(slots)):
        m = Z2Matrix.from_entries(n, [(i, i) for i in range(n)] + [s for s, b in zip(slots, bits) if b])
        new = m @ d @ m.inverse()
        ents = new.entries()
        rows = [i for i, _ in ents]
        cols = [j for _, j in ents]
        if len(set(rows)) == len(rows) and len(set(cols)) == len(cols) and not set(rows) & set(cols):
            if 2 * len(ents) == n:
                tau = [0] * n
                for i, j in ents:
                    tau[i], tau[j] = j, i
                found.add(tuple(tau))
    return found


# -- matrices ----------------------------------------------------------------


def test_matrix_basics():
    a = Z2Matrix.from_dense([[0, 1, 1], [0, 0, 1], [0, 0, 0]])
    assert a.shape == (3, 3)
    assert a[0, 2] == 1 and a[1, 0] == 0
    assert (a + a).is_zero()
    assert a @ a == Z2Matrix.from_entries(3, [(0, 2)])
    assert a.transpose().to_dense() == [[0, 0, 0], [1, 0, 0], [1, 1, 0]]
    assert a.rank() == 2
    assert a.is_strictly_upper()


def test_inverse_of_unitriangular():
    rng = random.Random(4)
    for n in range(1, 9):
        m = unitriangular(n, rng)
        assert m @ m.inverse() == Z2Matrix.identity(n)


def test_conjugate_by_transposition_matches_permutation_product():
    a = Z2Matrix.from_dense([[0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    p = Z2Matrix.from_dense([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert a.conjugate_by_transposition(1, 2) == p @ a @ p


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.randoms(use_true_random=False))
def test_rank_agrees_with_dense_echelon(r, c, rnd):
    dense = [[rnd.randint(0, 1) for _ in range(c)] for _ in range(r)]
    assert Z2Matrix.from_dense(dense).rank() == dense_rank(dense)


# -- homology ----------------------------------------------------------------


def test_homology_examples():
    zero = GradedComplex.from_mapping({"a": 0, "b": 0}, {})
    assert homology_dims(zero) == {0: 2}
    pair = GradedComplex.from_mapping({"e1": 1, "e2": 0}, {"e1": ["e2"]})
    assert homology_dims(pair) == {}


def test_not_a_complex():
    bad = GradedComplex.from_mapping({"a": 2, "b": 1, "c": 0}, {"a": ["b"], "b": ["c"]})
    with pytest.raises(NotAComplex):
        homology_dims(bad)
    wrong_degree = GradedComplex.from_mapping({"a": 0, "b": 0}, {"a": ["b"]})
    with pytest.raises(NotAComplex):
        homology_dims(wrong_degree)


def random_complex(rng: random.Random, size: int) -> tuple[list[int], list[list[int]]]:
    """d = M D M^-1 for a random graded pure differential D: always d^2 = 0."""
    degrees = [rng.randint(-2, 2) for _ in range(size)]
    order = sorted(range(size), key=lambda i: -degrees[i])
    degrees = [degrees[i] for i in order]
    entries = []
    used = set()
    for i in range(size):
        for j in range(i + 1, size):
            if i in used or j in used or degrees[j] != degrees[i] - 1:
                continue
            if rng.random() < 0.6:
                entries.append((i, j))
                used |= {i, j}
    d = Z2Matrix.from_entries(size, entries)
    # graded unitriangular change of basis keeps degree -1
    change = [(i, i) for i in range(size)]
    change += [(i, j) for i in range(size) for j in range(i + 1, size) if degrees[i] == degrees[j] and rng.random() < 0.5]
    m = Z2Matrix.from_entries(size, change)
    return degrees, (m @ d @ m.inverse()).to_dense()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 64), st.randoms(use_true_random=False))
def test_homology_matches_dense_oracle(size, rnd):
    degrees, dense = random_complex(rnd, size)
    mapping = {i: [j for j in range(size) if dense[i][j]] for i in range(size)}
    cx = GradedComplex.from_mapping({i: degrees[i] for i in range(size)}, mapping)
    assert homology_dims(cx) == dense_homology(degrees, dense)


# -- Barannikov pairing ------------------------------------------------------


def test_barannikov_two_elements():
    d = Z2Matrix.from_entries(2, [(0, 1)])
    assert barannikov_pairing(d).cycles() == "(1 2)"


def test_barannikov_four_elements_against_brute_force():
    # d e1 = e3, d e2 = e3 + e4
    d = Z2Matrix.from_entries(4, [(0, 2), (1, 2), (1, 3)])
    result = barannikov_pairing(d)
    assert brute_force_pairings(d) == {result.tau}
    assert result.cycles() == "(1 4)(2 3)"


def test_barannikov_errors():
    with pytest.raises(NotExact):
        barannikov_pairing(Z2Matrix.zeros(2))
    with pytest.raises(NotTriangular):
        barannikov_pairing(Z2Matrix.from_entries(2, [(1, 0)]))


def test_barannikov_basis_change_realises_pairing():
    rng = random.Random(11)
    for _ in range(200):
        n = 2 * rng.randint(1, 8)
        d, tau = planted(n, rng)
        result = barannikov_pairing(d)
        assert result.tau == tau
        m = result.basis_change
        assert all(m[i, i] == 1 for i in range(n)) and (m + Z2Matrix.identity(n)).is_strictly_upper()
        new = m @ d @ m.inverse()
        expected = Z2Matrix.from_entries(n, [(i, t) for i, t in enumerate(tau) if i < t])
        assert new == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_barannikov_agrees_with_exhaustive_search(half, rnd):
    d, tau = planted(2 * half, rnd)
    assert brute_force_pairings(d) == {barannikov_pairing(d).tau} == {tau}


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 16), st.randoms(use_true_random=False))
def test_barannikov_invariant_under_triangular_change(half, rnd):
    d, _ = planted(2 * half, rnd)
    m = unitriangular(d.nrows, rnd)
    assert barannikov_pairing(m @ d @ m.inverse()).tau == barannikov_pairing(d).tau


def test_is_acyclic():
    assert is_acyclic(Z2Matrix.from_entries(2, [(0, 1)]))
    assert not is_acyclic(Z2Matrix.zeros(2))
    assert is_acyclic(Z2Matrix.zeros(0))


# -- polynomials and DGAs ----------------------------------------------------


def test_poly_arithmetic():
    a, b = Z2Poly.gen("a"), Z2Poly.gen("b")
    one = Z2Poly.one()
    assert (a + a) == Z2Poly.zero()
    assert a * b != b * a
    assert (a + one) * (a + one) == a * a + one
    assert str(one + a * b) == "1 + a*b"
    assert Z2Poly.from_json((one + a * b).to_json()) == one + a * b
    assert (a * b + one).evaluate({"a": 1, "b": 1}) == 0
    assert (a * b + one).evaluate({"a": 1}) == 1


def test_dga_check_examples():
    one = Z2Poly.one()
    b = Z2Poly.gen("b")
    bad = DGA({"a": 1, "b": 0}, {"a": b, "b": one})
    diag = dga_check(bad)
    assert not diag.ok
    assert diag.problems[0].generator == "a" and diag.problems[0].kind == "d2"
    stab = DGA({"a": 1, "b": 0}, {"a": b, "b": Z2Poly()})
    assert dga_check(stab).ok


def test_dga_check_reports_degree_problem():
    b = Z2Poly.gen("b")
    dga = DGA({"a": 2, "b": 0}, {"a": b, "b": Z2Poly()})
    diag = dga_check(dga)
    assert [p.kind for p in diag.problems] == ["degree"]
    assert "a" in str(diag.problems[0])


def test_leibniz_rule():
    a, b, c = (Z2Poly.gen(s) for s in "abc")
    dga = DGA({"a": 1, "b": 1, "c": 0}, {"a": c, "b": c, "c": Z2Poly()})
    assert dga.d(a * b) == c * b + a * c


def test_dga_json_roundtrip():
    b = Z2Poly.gen("b")
    dga = DGA({"a": 1, "b": 0}, {"a": b + Z2Poly.one(), "b": Z2Poly()})
    again = DGA.from_json(dga.to_json())
    assert again.degrees == dga.degrees
    assert all(again.differential[g] == dga.differential[g] for g in dga.degrees)
