"""Exact linear and multilinear algebra over Z/2.

Matrices store each row as a Python int used as a bit set (bit ``j`` is
column ``j``).  All routines are deterministic: elimination always picks
the leftmost available pivot.

Matrices of linear maps follow the row convention used throughout the
package: row ``i`` holds the coefficients of the image of basis vector
``i``.  Under this convention ``f o g`` has matrix ``M_g @ M_f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import NotAComplex, NotExact, NotTriangular


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank over Z/2 of a family of bit-set row vectors."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            p = (row & -row).bit_length() - 1
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                break
    return len(pivots)


class Z2Matrix:
    """Dense matrix over Z/2 with bit-packed rows. Immutable."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        if rows is None:
            rows = (0,) * nrows
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Z2Matrix":
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, n: int) -> "Z2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: int | None = None) -> "Z2Matrix":
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if nrows else 0
        rows = []
        for line in dense:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            mask = 0
            for j, v in enumerate(line):
                if v % 2:
                    mask |= 1 << j
            rows.append(mask)
        return cls(nrows, ncols, rows)

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int]], ncols: int | None = None) -> "Z2Matrix":
        rows = [0] * n
        for i, j in entries:
            rows[i] ^= 1 << j
        return cls(n, n if ncols is None else ncols, rows)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def entries(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def with_entry(self, i: int, j: int, value: int) -> "Z2Matrix":
        rows = list(self.rows)
        if value % 2:
            rows[i] |= 1 << j
        else:
            rows[i] &= ~(1 << j)
        return Z2Matrix(self.nrows, self.ncols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __add__(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Z2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def __matmul__(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for j in _bits(r):
                acc ^= other.rows[j]
            out.append(acc)
        return Z2Matrix(self.nrows, other.ncols, out)

    def transpose(self) -> "Z2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j] |= 1 << i
        return Z2Matrix(self.ncols, self.nrows, cols)

    def rank(self) -> int:
        return rank_of_rows(self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_strictly_upper(self) -> bool:
        return all(r & ((1 << (i + 1)) - 1) == 0 for i, r in enumerate(self.rows))

    def inverse(self) -> "Z2Matrix":
        """Gauss-Jordan inverse; raises ValueError when singular."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        work = list(self.rows)
        inv = [1 << i for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if (work[r] >> col) & 1), None)
            if pivot is None:
                raise ValueError("singular matrix")
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            for r in range(n):
                if r != col and (work[r] >> col) & 1:
                    work[r] ^= work[col]
                    inv[r] ^= inv[col]
        return Z2Matrix(n, n, inv)

    def conjugate_by_transposition(self, a: int, b: int) -> "Z2Matrix":
        """``P M P`` for the permutation matrix ``P`` of the transposition (a b)."""
        perm = list(range(self.nrows))
        perm[a], perm[b] = perm[b], perm[a]
        return self.permuted(perm)

    def permuted(self, perm: Sequence[int]) -> "Z2Matrix":
        """Relabel basis vectors: entry (i, j) moves to (perm[i], perm[j])."""
        rows = [0] * self.nrows
        for i, r in enumerate(self.rows):
            acc = 0
            for j in _bits(r):
                acc |= 1 << perm[j]
            rows[perm[i]] = acc
        return Z2Matrix(self.nrows, self.ncols, rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Z2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(v) for v in row) for row in self.to_dense())
        return f"Z2Matrix({self.nrows}x{self.ncols}: {body})"


# ---------------------------------------------------------------------------
# graded complexes


@dataclass(frozen=True)
class GradedComplex:
    """Finite graded Z/2 chain complex with a degree -1 differential.

    ``differential[i]`` is a bit set over basis indices: the image of
    ``basis[i]``.  With ``modulus > 0`` degrees are residues.
    """

    basis: tuple
    degrees: tuple[int, ...]
    differential: tuple[int, ...]
    modulus: int = 0

    @classmethod
    def from_mapping(
        cls,
        degrees: Mapping[Hashable, int],
        d: Mapping[Hashable, Iterable[Hashable]],
        modulus: int = 0,
    ) -> "GradedComplex":
        basis = tuple(degrees)
        index = {b: i for i, b in enumerate(basis)}
        rows = []
        for b in basis:
            mask = 0
            for target in d.get(b, ()):
                mask ^= 1 << index[target]
            rows.append(mask)
        return cls(basis, tuple(degrees[b] for b in basis), tuple(rows), modulus)

    def reduce(self, degree: int) -> int:
        return degree % self.modulus if self.modulus else degree

    def image(self, label: Hashable) -> list:
        i = self.basis.index(label)
        return [self.basis[j] for j in _bits(self.differential[i])]

    def check(self) -> None:
        """Raise NotAComplex unless d o d = 0 and d has degree -1."""
        for i, row in enumerate(self.differential):
            want = self.reduce(self.degrees[i] - 1)
            for j in _bits(row):
                if self.reduce(self.degrees[j]) != want:
                    raise NotAComplex(
                        f"d({self.basis[i]!r}) contains {self.basis[j]!r} of the wrong degree"
                    )
            acc = 0
            for j in _bits(row):
                acc ^= self.differential[j]
            if acc:
                raise NotAComplex(f"d(d({self.basis[i]!r})) != 0")


def homology_dims(complex_: GradedComplex, check: bool = True) -> dict[int, int]:
    """Betti numbers over Z/2, keyed by degree; zero entries are omitted."""
    if check:
        complex_.check()
    by_degree: dict[int, list[int]] = {}
    for i, deg in enumerate(complex_.degrees):
        by_degree.setdefault(complex_.reduce(deg), []).append(i)
    rank_out: dict[int, int] = {}
    for deg, idx in by_degree.items():
        rank_out[deg] = rank_of_rows(complex_.differential[i] for i in idx)
    dims = {}
    for deg, idx in by_degree.items():
        incoming = rank_out.get(complex_.reduce(deg + 1), 0)
        dim = len(idx) - rank_out[deg] - incoming
        if dim:
            dims[deg] = dim
    return dict(sorted(dims.items()))


# ---------------------------------------------------------------------------
# Barannikov pairing


@dataclass(frozen=True)
class BarannikovPairing:
    """Canonical fixed-point-free involution of a triangular exact differential.

    ``tau`` is 0-based.  Row ``i`` of ``basis_change`` expresses the new
    basis vector ``e'_i`` in the old basis; it is unitriangular and
    ``d(e'_i) = e'_tau(i)`` whenever ``tau(i) > i``.
    """

    tau: tuple[int, ...]
    basis_change: Z2Matrix

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.tau) if i < j]

    def cycles(self) -> str:
        return "".join(f"({i + 1} {j + 1})" for i, j in self.pairs)


def barannikov_pairing(d: Z2Matrix) -> BarannikovPairing:
    """Pair a strictly triangular exact differential by lowest-term reduction.

    ``d`` must satisfy ``d(e_i) = sum_{j>i} a_ij e_j`` (strictly upper
    triangular in the row convention) and ``Ker d = Im d``.
    """
    n = d.nrows
    if d.ncols != n or not d.is_strictly_upper():
        raise NotTriangular("differential is not strictly upper triangular")
    if not (d @ d).is_zero():
        raise NotExact("d o d != 0")
    reduced = list(d.rows)
    change = [1 << i for i in range(n)]
    owner: dict[int, int] = {}  # pivot (lowest index in image) -> source
    for i in range(n - 1, -1, -1):
        v = reduced[i]
        while v:
            low = (v & -v).bit_length() - 1
            j = owner.get(low)
            if j is None:
                owner[low] = i
                break
            v ^= reduced[j]
            change[i] ^= change[j]
        reduced[i] = v
    tau = [-1] * n
    for target, source in owner.items():
        tau[source] = target
        tau[target] = source
        # e'_target := d(e'_source), which is e_target + (higher terms)
        change[target] = reduced[source]
    if any(t < 0 for t in tau):
        missing = [i + 1 for i, t in enumerate(tau) if t < 0]
        raise NotExact(f"homology is nonzero; unpaired basis elements {missing}")
    return BarannikovPairing(tuple(tau), Z2Matrix(n, n, change))


def is_acyclic(d: Z2Matrix) -> bool:
    """True when ``d`` squares to zero and has trivial homology."""
    return (d @ d).is_zero() and 2 * d.rank() == d.nrows


# ---------------------------------------------------------------------------
# free noncommutative polynomials


Word = tuple[str, ...]


class Z2Poly:
    """Element of the free unital Z/2 algebra: a finite set of words.

    The empty word is the unit.  Addition is symmetric difference.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Word] = ()):
        acc: set[Word] = set()
        for w in terms:
            w = tuple(w)
            if w in acc:
                acc.remove(w)
            else:
                acc.add(w)
        self.terms: frozenset[Word] = frozenset(acc)

    @classmethod
    def gen(cls, name: str) -> "Z2Poly":
        return cls([(name,)])

    @classmethod
    def one(cls) -> "Z2Poly":
        return cls([()])

    @classmethod
    def zero(cls) -> "Z2Poly":
        return cls()

    @classmethod
    def const(cls, value: int) -> "Z2Poly":
        return cls.one() if value % 2 else cls()

    def __add__(self, other: "Z2Poly") -> "Z2Poly":
        out = Z2Poly()
        out.terms = self.terms ^ other.terms
        return out

    __radd__ = __add__

    def __mul__(self, other: "Z2Poly") -> "Z2Poly":
        return Z2Poly(a + b for a in self.terms for b in other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.terms, key=lambda w: (len(w), w)))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Z2Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def evaluate(self, values: Mapping[str, int]) -> int:
        total = 0
        for w in self.terms:
            prod = 1
            for letter in w:
                if not values.get(letter, 0):
                    prod = 0
                    break
            total ^= prod
        return total

    def to_json(self) -> list[list[str]]:
        return [list(w) for w in self]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "Z2Poly":
        return cls(tuple(w) for w in data)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join("*".join(w) if w else "1" for w in self)

    def __repr__(self) -> str:
        return f"Z2Poly({self})"


# ---------------------------------------------------------------------------
# DGAs


@dataclass(frozen=True)
class DGA:
    """Semifree DGA over Z/2: generator degrees and the differential on them."""

    degrees: Mapping[str, int]
    differential: Mapping[str, Z2Poly]
    modulus: int = 0

    @property
    def generators(self) -> list[str]:
        return list(self.degrees)

    def reduce(self, degree: int) -> int:
        return degree % self.modulus if self.modulus else degree

    def word_degree(self, word: Word) -> int:
        return self.reduce(sum(self.degrees[s] for s in word))

    def d_word(self, word: Word) -> Z2Poly:
        """Leibniz rule: d(s1...sn) = sum_i s1..s_{i-1} d(s_i) s_{i+1}..sn."""
        acc: set[Word] = set()
        for i, s in enumerate(word):
            head, tail = word[:i], word[i + 1:]
            for w in self.differential.get(s, Z2Poly()).terms:
                full = head + w + tail
                if full in acc:
                    acc.remove(full)
                else:
                    acc.add(full)
        out = Z2Poly()
        out.terms = frozenset(acc)
        return out

    def d(self, poly: Z2Poly) -> Z2Poly:
        out = Z2Poly()
        for w in poly.terms:
            out = out + self.d_word(w)
        return out

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g, "degree": deg} for g, deg in self.degrees.items()],
            "d": {g: self.differential[g].to_json() for g in self.degrees},
            **({"modulus": self.modulus} if self.modulus else {}),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DGA":
        degrees = {g["name"]: int(g["degree"]) for g in data["generators"]}
        diff = {g: Z2Poly.from_json(data.get("d", {}).get(g, [])) for g in degrees}
        return cls(degrees, diff, int(data.get("modulus", 0)))


@dataclass(frozen=True)
class DGAProblem:
    generator: str
    kind: str  # "d2" or "degree"
    monomial: Word

    def __str__(self) -> str:
        mono = "*".join(self.monomial) if self.monomial else "1"
        if self.kind == "d2":
            return f"d^2({self.generator}) contains {mono}"
        return f"d({self.generator}) has term {mono} of the wrong degree"


@dataclass(frozen=True)
class DGADiagnostics:
    problems: tuple[DGAProblem, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def dga_check(dga: DGA) -> DGADiagnostics:
    """Check d^2 = 0 and deg d = -1 on every generator.

    Reports one problem per offending generator and kind, quoting the
    first offending monomial in canonical order.
    """
    problems = []
    for g, deg in dga.degrees.items():
        dg = dga.differential.get(g, Z2Poly())
        want = dga.reduce(deg - 1)
        for w in dg:
            if dga.word_degree(w) != want:
                problems.append(DGAProblem(g, "degree", w))
                break
        dd = dga.d(dg)
        if dd:
            problems.append(DGAProblem(g, "d2", next(iter(dd))))
    return DGADiagnostics(tuple(problems))


def gcd_modulus(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, abs(v))
    return out
