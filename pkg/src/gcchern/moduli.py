"""Canonical classes, Diff-orbit invariants and component certificates.

Classes in H^2 are only ever separated, never identified: the invariants
below are invariant under every automorphism of the intersection lattice,
hence under the (smaller) image of Diff(M).  Equal invariants prove nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chern import ChernData, ChernList, gc_admissible_chern, modulo_conjugation
from .lattice import CohClass, IntersectionLattice, divisibility, is_characteristic, square
from .manifold import FourManifoldModel, ManifoldError

DISTINCT = "distinct_orbits"
INCONCLUSIVE = "inconclusive"

VERIFIED = "verified"
UNVERIFIED = "unverified"
FINITE = "finite"
NOT_APPLICABLE = "not_applicable"


class InconsistentChernData(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalClass:
    c1K: CohClass

    def type_change_class(self) -> CohClass:
        """PD of the type-change locus, i.e. -c1(K)."""
        return -self.c1K


@dataclass(frozen=True)
class OrbitInvariants:
    square: int
    divisibility: int
    characteristic: bool
    primitive: bool

    def as_tuple(self) -> tuple:
        return (self.square, self.divisibility, self.characteristic, self.primitive)


def canonical_from_chTM(d: ChernData) -> CanonicalClass:
    """Recover c1(K) from c1(TM + T*M) = 2 c1(K)."""
    if d.rank != 4:
        raise InconsistentChernData(f"expected rank 4 data for TM + T*M, got rank {d.rank}")
    if not d.c1.is_even():
        raise InconsistentChernData(
            f"c1 = {d.c1.tolist()} is not even, so it is not 2 c1(K) for any generalized complex structure"
        )
    return CanonicalClass(d.c1.halve())


def _require_fiber(M: FourManifoldModel) -> CohClass:
    if M.fiber is None:
        raise ManifoldError(f"{M.name} has no fiber class")
    return M.fiber


def log_transform_canonical(M: FourManifoldModel, k: int) -> CanonicalClass:
    """Canonical class after k multiplicity-one logarithmic transforms on regular fibers.

    The type-change locus is then k parallel fibers, so c1(K) = -k PD[F].
    k = 0 is the symplectic structure itself.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return CanonicalClass(-k * _require_fiber(M))


def orbit_invariants(L: IntersectionLattice, x) -> OrbitInvariants:
    x = x if isinstance(x, CohClass) else CohClass(x)
    return OrbitInvariants(
        square=square(L, x),
        divisibility=divisibility(L, x),
        characteristic=is_characteristic(L, x),
        primitive=x.content() == 1,
    )


def distinguish(L: IntersectionLattice, x, y) -> str:
    if orbit_invariants(L, x) != orbit_invariants(L, y):
        return DISTINCT
    return INCONCLUSIVE


@dataclass(frozen=True)
class CertificateEntry:
    k: int
    c1K: CohClass
    invariants: OrbitInvariants

    def to_json(self) -> dict:
        inv = self.invariants
        return {
            "k": self.k,
            "c1K": self.c1K.tolist(),
            "square": inv.square,
            "divisibility": inv.divisibility,
            "characteristic": inv.characteristic,
            "primitive": inv.primitive,
        }


@dataclass(frozen=True)
class InfinitudeCertificate:
    manifold: str
    entries: tuple[CertificateEntry, ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "entries": [e.to_json() for e in self.entries],
            "verdict": self.verdict,
        }


def infinite_components_certificate(M: FourManifoldModel, kmax: int = 10) -> InfinitudeCertificate:
    """Witness that c1(K) takes kmax + 1 values in pairwise distinct Diff-orbits.

    Entry k records the canonical class -k PD[F] of the structure obtained by
    k logarithmic transforms, with the lattice invariants of k PD[F].  Since
    divisibility(kF) = k divisibility(F), the entries separate as soon as F is
    nonzero; k = 0 is the symplectic structure with c1(K) = 0.
    """
    fiber = _require_fiber(M)
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    L = M.lattice
    if not fiber:
        raise ManifoldError(f"{M.name}: fiber class is zero")
    if square(L, fiber) != 0:
        raise ManifoldError(f"{M.name}: fiber class has square {square(L, fiber)}, expected 0")
    entries = tuple(
        CertificateEntry(k, log_transform_canonical(M, k).c1K, orbit_invariants(L, k * fiber))
        for k in range(kmax + 1)
    )
    distinct = len({e.invariants for e in entries}) == len(entries)
    return InfinitudeCertificate(M.name, entries, VERIFIED if distinct else UNVERIFIED)


def check_infinitude_certificate(M: FourManifoldModel, cert: dict) -> bool:
    """Re-check a serialized certificate against the model from scratch."""
    L = M.lattice
    fiber = _require_fiber(M)
    seen = set()
    for e in cert["entries"]:
        k = e["k"]
        c1K = CohClass(e["c1K"])
        if c1K != -k * fiber:
            return False
        inv = orbit_invariants(L, -c1K)
        claimed = (e["square"], e["divisibility"], e["characteristic"], e["primitive"])
        if inv.as_tuple() != claimed or claimed in seen:
            return False
        seen.add(claimed)
    return cert["verdict"] == VERIFIED


@dataclass(frozen=True)
class FinitenessCertificate:
    manifold: str
    verdict: str
    values: ChernList
    lattice: Optional[IntersectionLattice] = None

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def count_modulo_conjugation(self) -> int:
        return len(modulo_conjugation(self.values.data))

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "verdict": self.verdict,
            "completeness": self.values.completeness,
            "count": self.count,
            "count_modulo_conjugation": self.count_modulo_conjugation,
            "values": [d.to_json(self.lattice) for d in self.values],
        }


def finiteness_certificate(M: FourManifoldModel, window: int = 8) -> FinitenessCertificate:
    """Complete list of Chern data of TM + T*M for a definite intersection form.

    Indefinite forms get verdict not_applicable and only the windowed list.
    """
    values = gc_admissible_chern(M, window)
    verdict = FINITE if M.lattice.is_definite else NOT_APPLICABLE
    return FinitenessCertificate(M.name, verdict, values, M.lattice)
