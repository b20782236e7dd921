"""Exact Chern-class bookkeeping for almost (generalized) complex 4-manifolds."""

from .chern import (
    ChernData,
    admissible_ac_chern,
    complex_structure_chTM,
    conjugate,
    gc_admissible_chern,
    gc_chTM_from_pair,
    symplectic_chTM,
    whitney_product,
)
from .enumeration import EnumerationProblem, ball_bound, brute_force_oracle, enumerate_solutions
from .lattice import CohClass, IntersectionLattice, direct_sum, is_characteristic, pair, signature
from .manifold import FourManifoldModel, connected_sum, preset, validate
from .moduli import (
    canonical_from_chTM,
    distinguish,
    finiteness_certificate,
    infinite_components_certificate,
    log_transform_canonical,
    orbit_invariants,
)

__version__ = "0.1.0"

__all__ = [
    "ChernData",
    "CohClass",
    "EnumerationProblem",
    "FourManifoldModel",
    "IntersectionLattice",
    "admissible_ac_chern",
    "ball_bound",
    "brute_force_oracle",
    "canonical_from_chTM",
    "complex_structure_chTM",
    "conjugate",
    "connected_sum",
    "direct_sum",
    "distinguish",
    "enumerate_solutions",
    "finiteness_certificate",
    "gc_admissible_chern",
    "gc_chTM_from_pair",
    "infinite_components_certificate",
    "is_characteristic",
    "log_transform_canonical",
    "orbit_invariants",
    "pair",
    "preset",
    "signature",
    "symplectic_chTM",
    "validate",
    "whitney_product",
]
