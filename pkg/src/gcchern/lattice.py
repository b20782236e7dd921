"""Integral symmetric bilinear forms and degree-2 cohomology classes.

Everything here is exact: pairings use Python integers and the inertia
computation uses rational congruence diagonalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Base class for malformed lattice input."""


class DimensionError(LatticeError):
    pass


class DegenerateFormError(LatticeError):
    pass


@dataclass(frozen=True)
class CohClass:
    """Coordinates of a class in H^2(M; Z)/Tor with respect to a fixed basis."""

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> CohClass:
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, i: int) -> CohClass:
        return cls(1 if j == i else 0 for j in range(rank))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: CohClass) -> None:
        if len(other) != len(self):
            raise DimensionError(f"class lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: CohClass) -> CohClass:
        self._check(other)
        return CohClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: CohClass) -> CohClass:
        self._check(other)
        return CohClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> CohClass:
        return CohClass(-a for a in self.coords)

    def __mul__(self, k: int) -> CohClass:
        return CohClass(k * a for a in self.coords)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)

    def content(self) -> int:
        """gcd of the coordinates (0 for the zero class)."""
        g = 0
        for c in self.coords:
            g = gcd(g, c)
        return g

    def is_even(self) -> bool:
        return all(c % 2 == 0 for c in self.coords)

    def halve(self) -> CohClass:
        if not self.is_even():
            raise ValueError(f"class {list(self.coords)} is not divisible by 2")
        return CohClass(c // 2 for c in self.coords)

    def tolist(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class SignatureData:
    positive: int
    negative: int

    @property
    def sigma(self) -> int:
        return self.positive - self.negative

    @property
    def rank(self) -> int:
        return self.positive + self.negative


def _as_class(x) -> CohClass:
    return x if isinstance(x, CohClass) else CohClass(x)


@dataclass(frozen=True)
class IntersectionLattice:
    """Dense symmetric integer Gram matrix.

    Symmetry is enforced on construction. Nondegeneracy is checked by the
    operations that need it (``signature``, enumeration) and reported by
    manifold validation, so that degenerate input can still be inspected.
    """

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in gram)
        m = len(rows)
        for row in rows:
            if len(row) != m:
                raise DimensionError("Gram matrix is not square")
        for i in range(m):
            for j in range(i + 1, m):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def diagonal(cls, entries: Iterable[int]) -> IntersectionLattice:
        entries = list(entries)
        m = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)])

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __repr__(self) -> str:
        return f"IntersectionLattice({[list(r) for r in self.gram]})"

    @cached_property
    def _pivots(self) -> tuple[Fraction, ...] | None:
        return congruence_pivots(self.gram)

    @property
    def determinant(self) -> int:
        piv = self._pivots
        if piv is None:
            return 0
        d = Fraction(1)
        for p in piv:
            d *= p
        return int(d)

    @property
    def is_nondegenerate(self) -> bool:
        return self._pivots is not None

    @property
    def is_unimodular(self) -> bool:
        return self.determinant in (1, -1)

    @property
    def is_diagonal(self) -> bool:
        g = self.gram
        return all(g[i][j] == 0 for i in range(self.rank) for j in range(self.rank) if i != j)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_definite(self) -> bool:
        s = signature(self)
        return s.positive == 0 or s.negative == 0

    def apply(self, x: CohClass) -> tuple[int, ...]:
        """Row vector gram * x, i.e. the pairings of x with each basis vector."""
        x = _as_class(x)
        if len(x) != self.rank:
            raise DimensionError(f"class has length {len(x)}, lattice has rank {self.rank}")
        return tuple(sum(g * c for g, c in zip(row, x.coords)) for row in self.gram)

    def transform(self, t: Sequence[Sequence[int]]) -> IntersectionLattice:
        """Gram matrix in the basis given by the columns of t: t^T gram t."""
        m = self.rank
        g = self.gram
        gt = [[sum(g[i][k] * t[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
        return IntersectionLattice(
            [[sum(t[k][i] * gt[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
        )


def congruence_pivots(gram: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """Diagonalize a symmetric matrix by rational congruence.

    Returns the diagonal entries (whose sign counts give the inertia and whose
    product is the determinant), or None if the form is degenerate.  A zero
    diagonal is handled by symmetric swaps, and when the whole remaining
    diagonal vanishes, by adding a basis vector to one it pairs with
    nontrivially, which produces diagonal entry 2*a_ij.  Swaps and these
    shears leave the determinant unchanged.
    """
    a = [[Fraction(v) for v in row] for row in gram]
    n = len(a)
    pivots = []
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][i] != 0), None)
        if p is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None
            )
            if pair is None:
                return None
            i, j = pair
            for c in range(k, n):
                a[i][c] += a[j][c]
            for r in range(k, n):
                a[r][i] += a[r][j]
            p = i
        if p != k:
            a[k], a[p] = a[p], a[k]
            for row in a:
                row[k], row[p] = row[p], row[k]
        d = a[k][k]
        pivots.append(d)
        for r in range(k + 1, n):
            f = a[r][k] / d
            if f:
                ak = a[k]
                ar = a[r]
                for c in range(k + 1, n):
                    ar[c] -= f * ak[c]
    return tuple(pivots)


def pair(lattice: IntersectionLattice, x, y) -> int:
    """x^T * gram * y."""
    x = _as_class(x)
    if len(x) != lattice.rank:
        raise DimensionError(f"class has length {len(x)}, lattice has rank {lattice.rank}")
    return sum(a * b for a, b in zip(x.coords, lattice.apply(y)))


def square(lattice: IntersectionLattice, x) -> int:
    return pair(lattice, x, x)


def signature(lattice: IntersectionLattice) -> SignatureData:
    """Inertia of the form via Sylvester's law (exact, no floating point)."""
    piv = lattice._pivots
    if piv is None:
        raise DegenerateFormError("intersection form is degenerate")
    pos = sum(1 for p in piv if p > 0)
    return SignatureData(pos, len(piv) - pos)


def is_characteristic(lattice: IntersectionLattice, w) -> bool:
    # w.y = y.y (mod 2) is additive in y modulo 2, since
    # (y+z).(y+z) = y.y + z.z + 2 y.z, so checking basis vectors suffices.
    w = _as_class(w)
    gw = lattice.apply(w)
    return all((gw[i] - lattice.gram[i][i]) % 2 == 0 for i in range(lattice.rank))


def divisibility(lattice: IntersectionLattice, x) -> int:
    """gcd of the pairings of x with the whole lattice (0 for x = 0)."""
    g = 0
    for v in lattice.apply(x):
        g = gcd(g, v)
    return g


def direct_sum(*lattices: IntersectionLattice) -> IntersectionLattice:
    m = sum(L.rank for L in lattices)
    rows = [[0] * m for _ in range(m)]
    off = 0
    for L in lattices:
        for i, row in enumerate(L.gram):
            rows[off + i][off : off + L.rank] = row
        off += L.rank
    return IntersectionLattice(rows)


HYPERBOLIC = IntersectionLattice([[0, 1], [1, 0]])

# Cartan matrix of E8 (Bourbaki labelling: node 2 attached to node 4).
_E8_EDGES = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def e8(sign: int = 1) -> IntersectionLattice:
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    return IntersectionLattice([[sign * v for v in row] for row in g])
