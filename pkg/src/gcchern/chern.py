"""Truncated Chern polynomials of complex bundles over a closed 4-manifold.

A total Chern class is stored as ``(rank, c1, c2)`` where ``c1`` lives in
H^2(M; Z)/Tor and ``c2`` is the integer c2[M].  Products of degree > 4
vanish, so the Whitney product only needs the pairing on H^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .enumeration import COMPLETE, EnumerationProblem, enumerate_solutions
from .lattice import CohClass, DimensionError, IntersectionLattice, pair

J1 = "J1"
J2 = "J2"


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: CohClass
    c2: int

    def __post_init__(self):
        if not isinstance(self.c1, CohClass):
            object.__setattr__(self, "c1", CohClass(self.c1))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @classmethod
    def unit(cls, lattice_rank: int) -> ChernData:
        return cls(0, CohClass.zero(lattice_rank), 0)

    def key(self) -> tuple:
        return (self.rank, self.c1.coords, self.c2)

    def to_json(self, lattice: IntersectionLattice | None = None) -> dict:
        return {
            "rank": self.rank,
            "c1": self.c1.tolist(),
            "c2": self.c2,
            "pretty": pretty(self, lattice),
        }


def _check_same(lattice: IntersectionLattice, *data: ChernData) -> None:
    for d in data:
        if len(d.c1) != lattice.rank:
            raise DimensionError(
                f"c1 has length {len(d.c1)} but the lattice has rank {lattice.rank}"
            )


def whitney_product(lattice: IntersectionLattice, a: ChernData, b: ChernData) -> ChernData:
    """c(E + F) = c(E) c(F), truncated above degree 4."""
    _check_same(lattice, a, b)
    return ChernData(a.rank + b.rank, a.c1 + b.c1, a.c2 + b.c2 + pair(lattice, a.c1, b.c1))


def conjugate(d: ChernData) -> ChernData:
    return ChernData(d.rank, -d.c1, d.c2)


def complex_structure_chTM(lattice: IntersectionLattice, c1_holo, chi: int) -> ChernData:
    """Chern data of TM + T*M for the generalized complex structure of a complex one.

    ``c1_holo`` is c1 of the holomorphic cotangent bundle T*^{1,0}, so for a
    complex surface it is the canonical class.  Both summands of the +i
    eigenbundle are isomorphic to it, hence the result is its square.
    """
    cot = ChernData(2, CohClass(c1_holo), chi)
    return whitney_product(lattice, cot, cot)


def symplectic_chTM(lattice: IntersectionLattice, c1_ac, chi: int) -> ChernData:
    """Chern data of the complexified tangent bundle T^{1,0} + T^{0,1}."""
    t = ChernData(2, CohClass(c1_ac), chi)
    return whitney_product(lattice, t, conjugate(t))


def gc_chTM_from_pair(
    lattice: IntersectionLattice, plus: ChernData, minus: ChernData, which: str = J1
) -> ChernData:
    """Chern data of the +i eigenbundle from the almost complex pair I+, I-.

    For J1 it is T+^{1,0} + T-^{1,0}; for J2 = G J1 the second factor is
    replaced by its conjugate T-^{0,1}.
    """
    if plus.rank != 2 or minus.rank != 2:
        raise ValueError("almost complex structures on a 4-manifold have rank 2")
    if which == J1:
        return whitney_product(lattice, plus, minus)
    if which == J2:
        return whitney_product(lattice, plus, conjugate(minus))
    raise ValueError(f"unknown structure {which!r}; expected J1 or J2")


@dataclass(frozen=True)
class ChernList:
    """Chern data together with the completeness of the search behind it."""

    data: tuple[ChernData, ...]
    completeness: str
    searched_window: int | None = None

    def __iter__(self) -> Iterator[ChernData]:
        return iter(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def __getitem__(self, i):
        return self.data[i]

    @property
    def is_complete(self) -> bool:
        return self.completeness == COMPLETE


def admissible_ac_chern(manifold, window: int = 8) -> ChernList:
    """All (rank 2, c1, chi) allowed by c2 = chi, c1^2 = 3 sigma + 2 chi, c1 = w2 mod 2.

    These are the classes admissible for an almost complex structure.  That
    each one is realized by an actual almost complex structure (Wu) is assumed.
    """
    problem = EnumerationProblem(
        manifold.lattice, manifold.c1_squared, manifold.w2, window
    )
    res = enumerate_solutions(problem)
    data = tuple(ChernData(2, c, manifold.euler) for c in res.solutions)
    return ChernList(data, res.completeness, res.searched_window)


def gc_admissible_chern(manifold, window: int = 8) -> ChernList:
    """Distinct Chern data of TM + T*M over all ordered pairs of admissible I+, I-."""
    ac = admissible_ac_chern(manifold, window)
    L = manifold.lattice
    # Same result as gc_chTM_from_pair(J1) over all ordered pairs; J1 is
    # symmetric, so unordered pairs suffice, and gram*c is computed once.
    coords = [d.c1.coords for d in ac]
    images = [L.apply(d.c1) for d in ac]
    c2 = 2 * manifold.euler
    seen = set()
    for i, a in enumerate(coords):
        for j in range(i, len(coords)):
            b = coords[j]
            cross = sum(u * v for u, v in zip(a, images[j]))
            seen.add((tuple(u + v for u, v in zip(a, b)), c2 + cross))
    data = tuple(ChernData(4, CohClass(c1), c) for c1, c in sorted(seen))
    return ChernList(data, ac.completeness, ac.searched_window)


def modulo_conjugation(data: Sequence[ChernData]) -> list[ChernData]:
    """One representative per {d, conjugate(d)} pair (the lexicographically larger c1)."""
    reps = {}
    for d in data:
        rep = max(d, conjugate(d), key=ChernData.key)
        reps.setdefault(rep.key(), rep)
    return [reps[k] for k in sorted(reps)]


GENERATOR_NAMES = "ab"


def _term(coef: int, name: str) -> str:
    if coef == 0:
        return ""
    mag = abs(coef)
    body = name if mag == 1 else f"{mag}{name}"
    return f" + {body}" if coef > 0 else f" - {body}"


def pretty(d: ChernData, lattice: IntersectionLattice | None = None) -> str:
    """Render as a polynomial, e.g. ``1 - 3a^2`` on CP^2.

    Classes are written in named generators a, b when the lattice has rank
    <= 2.  The top-degree term is written ``a^2`` on a rank-1 lattice with
    a.a = +-1 and as a multiple of the orientation class ``u`` otherwise.
    Larger lattices fall back to coordinate vectors.
    """
    m = len(d.c1)
    out = "1"
    if m <= 2:
        for coef, name in zip(d.c1.coords, GENERATOR_NAMES):
            out += _term(coef, name)
    elif d.c1:
        out += " + (" + ", ".join(str(c) for c in d.c1.coords) + ")"
    if m == 1 and lattice is not None and lattice.gram[0][0] in (1, -1):
        out += _term(d.c2 * lattice.gram[0][0], "a^2")
    else:
        out += _term(d.c2, "u")
    return out
