"""Topological models of closed oriented 4-manifolds.

A model carries what the Chern-class bookkeeping needs: the intersection
lattice of H^2(M; Z)/Tor, the Euler characteristic, the signature, an
integral lift of w2 and, for elliptic surfaces, the class of a regular fiber.
Torsion in H^2 is not modelled.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .lattice import (
    HYPERBOLIC,
    CohClass,
    DimensionError,
    IntersectionLattice,
    direct_sum,
    e8,
    is_characteristic,
    signature,
    square,
)


class ManifoldError(ValueError):
    pass


@dataclass(frozen=True)
class FourManifoldModel:
    name: str
    lattice: IntersectionLattice
    euler: int
    sigma: int
    w2: CohClass
    fiber: Optional[CohClass] = None
    complex_c1: Optional[CohClass] = None
    # b1 = 0; enables the check euler == 2 + b2
    simply_connected: bool = False

    def __post_init__(self):
        for attr in ("w2", "fiber", "complex_c1"):
            v = getattr(self, attr)
            if v is None:
                continue
            if not isinstance(v, CohClass):
                v = CohClass(v)
                object.__setattr__(self, attr, v)
            if len(v) != self.lattice.rank:
                raise DimensionError(
                    f"{attr} has length {len(v)}, lattice has rank {self.lattice.rank}"
                )

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def c1_squared(self) -> int:
        """The value c1^2[M] = 3 sigma + 2 chi forced on any almost complex structure."""
        return 3 * self.sigma + 2 * self.euler

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "gram": [list(r) for r in self.lattice.gram],
            "euler": self.euler,
            "sigma": self.sigma,
            "w2": self.w2.tolist(),
            "simply_connected": self.simply_connected,
        }
        if self.fiber is not None:
            out["fiber"] = self.fiber.tolist()
        if self.complex_c1 is not None:
            out["complex_c1"] = self.complex_c1.tolist()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> FourManifoldModel:
        """Build a model from a manifold-spec object.

        The signature is always recomputed from the Gram matrix; a ``sigma``
        entry, if given, is kept so that ``validate`` can cross-check it.
        """
        try:
            lattice = IntersectionLattice(obj["gram"])
            sig = signature(lattice).sigma if lattice.is_nondegenerate else 0
            sigma = int(obj.get("sigma", sig))
            return cls(
                name=str(obj.get("name", "unnamed")),
                lattice=lattice,
                euler=int(obj["euler"]),
                sigma=sigma,
                w2=CohClass(obj["w2"]),
                fiber=CohClass(obj["fiber"]) if obj.get("fiber") is not None else None,
                complex_c1=(
                    CohClass(obj["complex_c1"]) if obj.get("complex_c1") is not None else None
                ),
                simply_connected=bool(obj.get("simply_connected", False)),
            )
        except KeyError as e:
            raise ManifoldError(f"manifold spec is missing field {e.args[0]!r}") from None
        except (TypeError, AttributeError) as e:
            raise ManifoldError(f"malformed manifold spec: {e}") from None

    @classmethod
    def load(cls, path) -> FourManifoldModel:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _simple(name, gram, euler, w2, **kw) -> FourManifoldModel:
    lattice = IntersectionLattice(gram)
    return FourManifoldModel(
        name, lattice, euler, signature(lattice).sigma, CohClass(w2), simply_connected=True, **kw
    )


def cp2() -> FourManifoldModel:
    return _simple("CP2", [[1]], 3, [1])


def cp2bar() -> FourManifoldModel:
    return _simple("CP2bar", [[-1]], 3, [1])


def s2xs2() -> FourManifoldModel:
    return _simple("S2xS2", HYPERBOLIC.gram, 4, [0, 0])


def blowups(m: int, n: int) -> FourManifoldModel:
    """m CP2 # n CP2bar."""
    if m < 0 or n < 0 or m + n < 1:
        raise ManifoldError("need m, n >= 0 and m + n >= 1")
    lattice = IntersectionLattice.diagonal([1] * m + [-1] * n)
    parts = ([f"{m}CP2"] if m else []) + ([f"{n}CP2bar"] if n else [])
    return FourManifoldModel(
        "#".join(parts), lattice, 2 + m + n, m - n, CohClass([1] * (m + n)), simply_connected=True
    )


def elliptic(n: int) -> FourManifoldModel:
    """The simply connected elliptic surface E(n) without multiple fibers.

    Odd n uses (2n-1)<1> + (10n-1)<-1>; there w2 = [F] mod 2, so the fiber must
    be a primitive characteristic isotropic vector and we take
    F = (3^n, 1^{n-1}; -1^{10n-1}), which is 3h - e1 - ... - e9 for n = 1.
    Even n uses n(-E8) + (2n-1)U with F the first isotropic generator of the
    first U.  In both cases c1 of the complex structure is (2 - n) F.
    """
    if n < 1:
        raise ManifoldError("E(n) needs n >= 1")
    if n % 2:
        lattice = IntersectionLattice.diagonal([1] * (2 * n - 1) + [-1] * (10 * n - 1))
        fiber = CohClass([3] * n + [1] * (n - 1) + [-1] * (10 * n - 1))
        w2 = CohClass([1] * lattice.rank)
    else:
        lattice = direct_sum(*([e8(-1)] * n), *([HYPERBOLIC] * (2 * n - 1)))
        fiber = CohClass.basis(lattice.rank, 8 * n)
        w2 = CohClass.zero(lattice.rank)
    name = "K3" if n == 2 else f"E({n})"
    return FourManifoldModel(
        name, lattice, 12 * n, -8 * n, w2, fiber=fiber, complex_c1=(2 - n) * fiber,
        simply_connected=True,
    )


def k3() -> FourManifoldModel:
    return elliptic(2)


_FIXED = {"CP2": cp2, "CP2BAR": cp2bar, "S2XS2": s2xs2, "K3": k3}
_ELLIPTIC = re.compile(r"^E\(?(\d+)\)?$")
_BLOWUPS = re.compile(r"^#?(?:(\d+)CP2)?(?:#?(\d+)CP2BAR)?$")

PRESET_NAMES = ("CP2", "CP2bar", "S2xS2", "K3", "E<n> / E(n)", "<m>CP2#<n>CP2bar")


def preset(name: str) -> FourManifoldModel:
    key = name.strip().upper()
    if key in _FIXED:
        return _FIXED[key]()
    m = _ELLIPTIC.match(key)
    if m:
        return elliptic(int(m.group(1)))
    m = _BLOWUPS.match(key)
    if m and (m.group(1) or m.group(2)):
        return blowups(int(m.group(1) or 0), int(m.group(2) or 0))
    raise ManifoldError(f"unknown manifold preset {name!r}")


def resolve(spec: str) -> FourManifoldModel:
    """A preset name, or a path to a manifold-spec JSON file."""
    if spec.endswith(".json") or Path(spec).is_file():
        try:
            return FourManifoldModel.load(spec)
        except OSError as e:
            raise ManifoldError(f"cannot read {spec}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise ManifoldError(f"{spec} is not valid JSON: {e}") from None
    return preset(spec)


def connected_sum(a: FourManifoldModel, b: FourManifoldModel) -> FourManifoldModel:
    return FourManifoldModel(
        f"{a.name}#{b.name}",
        direct_sum(a.lattice, b.lattice),
        a.euler + b.euler - 2,
        a.sigma + b.sigma,
        CohClass(a.w2.coords + b.w2.coords),
        simply_connected=a.simply_connected and b.simply_connected,
    )


PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class Diagnostics:
    manifold: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "ok": self.ok,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
        }


def validate(M: FourManifoldModel) -> Diagnostics:
    checks = []

    def add(name, ok, detail="", skip=False):
        checks.append(Check(name, SKIP if skip else (PASS if ok else FAIL), detail))

    L = M.lattice
    nondeg = L.is_nondegenerate
    add("nondegenerate", nondeg, f"det = {L.determinant}")
    add("unimodular", L.is_unimodular, f"det = {L.determinant}")
    if nondeg:
        sig = signature(L).sigma
        add("signature", sig == M.sigma, f"recomputed {sig}, model says {M.sigma}")
    else:
        add("signature", False, "degenerate form", skip=True)
    add(
        "euler_range",
        (M.euler - L.rank) % 2 == 0 and M.euler <= 2 + L.rank,
        f"chi = 2 - 2 b1 + b2 needs chi = b2 (mod 2) and chi <= 2 + b2; chi = {M.euler}, b2 = {L.rank}",
    )
    if M.simply_connected:
        add("euler_simply_connected", M.euler == 2 + L.rank, f"chi = {M.euler}, 2 + b2 = {2 + L.rank}")
    add("w2_characteristic", is_characteristic(L, M.w2))
    if L.is_unimodular:
        w = square(L, M.w2)
        add("van_der_blij", (w - M.sigma) % 8 == 0, f"w2.w2 = {w}, sigma = {M.sigma}")
    else:
        add("van_der_blij", False, "needs a unimodular form", skip=True)
    if M.fiber is not None:
        add("fiber_nonzero", bool(M.fiber))
        add("fiber_isotropic", square(L, M.fiber) == 0, f"F.F = {square(L, M.fiber)}")
    if M.complex_c1 is not None:
        add("complex_c1_characteristic", is_characteristic(L, M.complex_c1))
        c = square(L, M.complex_c1)
        add("complex_c1_square", c == M.c1_squared, f"c1^2 = {c}, 3 sigma + 2 chi = {M.c1_squared}")
    return Diagnostics(M.name, tuple(checks))
