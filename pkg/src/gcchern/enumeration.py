"""Solve pair(c, c) = N with c congruent to a fixed vector mod 2.

Definite forms are enumerated completely with a Fincke-Pohst search on the
exact LDL^T decomposition.  Indefinite forms have infinitely many solutions
in general, so they are searched inside a coordinate box and the result is
flagged as window-truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt
from typing import Optional

import numpy as np

from .lattice import (
    CohClass,
    DimensionError,
    IntersectionLattice,
    LatticeError,
    pair,
    signature,
    square,
)

COMPLETE = "complete"
WINDOW_TRUNCATED = "window-truncated"

# Work limits for the windowed (indefinite) search.  When a window cannot be
# finished within them, the largest window that could is reported instead.
NODE_BUDGET = 200_000
MAX_SOLUTIONS = 2048

ORACLE_MAX_RANK = 6
ORACLE_MAX_WINDOW = 10


class UnsupportedFormError(LatticeError):
    pass


class OracleRefusal(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationProblem:
    lattice: IntersectionLattice
    target: int
    parity: CohClass
    window: int = 8

    def __post_init__(self):
        if not isinstance(self.parity, CohClass):
            object.__setattr__(self, "parity", CohClass(self.parity))
        if len(self.parity) != self.lattice.rank:
            raise DimensionError(
                f"parity vector has length {len(self.parity)}, lattice has rank {self.lattice.rank}"
            )
        if self.window < 0:
            raise ValueError("window must be non-negative")

    def admits(self, c: CohClass) -> bool:
        return square(self.lattice, c) == self.target and all(
            (a - b) % 2 == 0 for a, b in zip(c, self.parity)
        )


@dataclass(frozen=True)
class EnumerationResult:
    problem: EnumerationProblem
    solutions: tuple[CohClass, ...]
    completeness: str
    infinitude_hint: Optional[CohClass] = None
    # Box half-width actually searched; None for complete (definite) results.
    searched_window: Optional[int] = None

    def __post_init__(self):
        for c in self.solutions:
            if not self.problem.admits(c):
                raise AssertionError(f"enumeration produced a non-solution {c.tolist()}")
        if self.completeness not in (COMPLETE, WINDOW_TRUNCATED):
            raise ValueError(f"unknown completeness flag {self.completeness!r}")

    @property
    def is_complete(self) -> bool:
        return self.completeness == COMPLETE

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)


def _definite_sign(lattice: IntersectionLattice) -> int:
    """+1 / -1 for positive / negative definite forms, 0 if indefinite."""
    s = signature(lattice)
    if s.negative == 0:
        return 1
    if s.positive == 0:
        return -1
    return 0


def _ldl(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """q(x) = sum_k d[k] * (x_k + sum_{j>k} r[k][j] x_j)^2 for positive definite gram."""
    n = len(gram)
    a = [[Fraction(v) for v in row] for row in gram]
    d = []
    r = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        dk = a[k][k]
        if dk <= 0:
            raise UnsupportedFormError("form is not positive definite")
        d.append(dk)
        for j in range(k + 1, n):
            r[k][j] = a[k][j] / dk
        for i in range(k + 1, n):
            f = a[i][k] / dk
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return d, r


def _fincke_pohst(gram, target: int, parity) -> list[tuple[int, ...]]:
    """All x with q(x) == target and x = parity (mod 2), q positive definite."""
    n = len(gram)
    d, r = _ldl(gram)
    out = []
    x = [0] * n

    def descend(k: int, budget: Fraction):
        if k < 0:
            if budget == 0:
                out.append(tuple(x))
            return
        t = -sum((r[k][j] * x[j] for j in range(k + 1, n)), Fraction(0))
        rad = budget / d[k]
        s = isqrt(floor(rad)) + 1
        lo = floor(t) - s - 1
        lo += (lo - parity[k]) % 2
        for v in range(lo, floor(t) + s + 2, 2):
            dev = (v - t) * (v - t)
            if dev <= rad:
                x[k] = v
                descend(k - 1, budget - d[k] * dev)
        x[k] = 0

    descend(n - 1, Fraction(target))
    return out


def _window_values(window: int, p: int) -> list[int]:
    return [v for v in range(-window, window + 1) if (v - p) % 2 == 0]


def _windowed(gram, target: int, parity, window: int, node_budget: int, max_solutions: int):
    """Depth-first box search with interval pruning.

    Returns the solution list, or None when the work limits are exceeded.
    """
    n = len(gram)
    values = [_window_values(window, p) for p in parity]
    if any(not v for v in values):
        return []
    reach = [max(abs(v) for v in vals) for vals in values]
    # cross[k]: bound on |sum_{k<=i<j} 2 g_ij x_i x_j| over the box
    cross = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        cross[k] = cross[k + 1] + sum(
            2 * abs(gram[k][j]) * reach[k] * reach[j] for j in range(k + 1, n)
        )
    out = []
    x = [0] * n
    lin = [0] * n  # lin[j] = sum_{i fixed} g_ij x_i
    nodes = 0

    class _Exhausted(Exception):
        pass

    def descend(k: int, fixed: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _Exhausted
        if k == n:
            if fixed == target:
                out.append(tuple(x))
                if len(out) > max_solutions:
                    raise _Exhausted
            return
        lo = hi = fixed
        for j in range(k, n):
            g, l2 = gram[j][j], 2 * lin[j]
            terms = [l2 * v + g * v * v for v in values[j]]
            lo += min(terms)
            hi += max(terms)
        if not (lo - cross[k] <= target <= hi + cross[k]):
            return
        g = gram[k]
        for v in values[k]:
            x[k] = v
            contrib = 2 * lin[k] * v + g[k] * v * v
            for j in range(k + 1, n):
                lin[j] += g[j] * v
            descend(k + 1, fixed + contrib)
            for j in range(k + 1, n):
                lin[j] -= g[j] * v
        x[k] = 0

    try:
        descend(0, 0)
    except _Exhausted:
        return None
    return out


def _isotropic_hint(lattice: IntersectionLattice, sols: list[CohClass]) -> Optional[CohClass]:
    """A nonzero d with d.d = 0 and c.d = 0 for some solution c.

    Then c + t*d is a solution for every integer t (d is even, being a
    difference of two solutions), so d witnesses an infinite family.
    """
    found = set(s.coords for s in sols)
    for c in sols:
        if c and (-c).coords in found and square(lattice, c) == 0:
            return -2 * c
    head = sols[:64]
    for i, c in enumerate(head):
        for c2 in head[i + 1 :]:
            dvec = c2 - c
            if square(lattice, dvec) == 0 and pair(lattice, c, dvec) == 0:
                return dvec
    return None


def enumerate_solutions(
    problem: EnumerationProblem,
    *,
    node_budget: int = NODE_BUDGET,
    max_solutions: int = MAX_SOLUTIONS,
) -> EnumerationResult:
    L = problem.lattice
    if L.rank == 0:
        sols = [CohClass(())] if problem.target == 0 else []
        return EnumerationResult(problem, tuple(sols), COMPLETE)
    sign = _definite_sign(L)
    parity = [p % 2 for p in problem.parity]

    if sign:
        n = sign * problem.target
        if n < 0:
            raw = []
        else:
            gram = [[sign * v for v in row] for row in L.gram]
            raw = _fincke_pohst(gram, n, parity)
        sols = tuple(CohClass(c) for c in sorted(raw))
        return EnumerationResult(problem, sols, COMPLETE)

    # Grow the box one step at a time and keep the largest one that fits
    # inside the work limits; the result is deterministic.
    best, searched = [], None
    start = min(1 if any(parity) else 0, problem.window)
    for w in range(start, problem.window + 1):
        raw = _windowed(L.gram, problem.target, parity, w, node_budget, max_solutions)
        if raw is None:
            break
        best, searched = raw, w
    sols = [CohClass(c) for c in sorted(best)]
    return EnumerationResult(
        problem,
        tuple(sols),
        WINDOW_TRUNCATED,
        infinitude_hint=_isotropic_hint(L, sols),
        searched_window=searched if searched is not None else 0,
    )


def _inverse_diagonal(gram) -> list[Fraction]:
    n = len(gram)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(gram)]
    for k in range(n):
        p = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[p] = a[p], a[k]
        pk = a[k][k]
        a[k] = [v / pk for v in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [vi - f * vk for vi, vk in zip(a[i], a[k])]
    return [a[i][n + i] for i in range(n)]


def ball_bound(problem: EnumerationProblem) -> int:
    """Per-coordinate bound on solutions of a definite problem.

    For a diagonal form with |entries| >= 1 this is floor(sqrt|N|).  Otherwise
    it is max_i floor(sqrt(|N| * (Q^-1)_ii)), which follows from
    x_i^2 <= Q(x) (Q^-1)_ii for positive definite Q.
    """
    L = problem.lattice
    if L.rank == 0:
        return 0
    sign = _definite_sign(L)
    if not sign:
        raise UnsupportedFormError("ball bound needs a definite form")
    n = abs(problem.target)
    if L.is_diagonal:
        return isqrt(n)
    inv = _inverse_diagonal([[sign * v for v in row] for row in L.gram])
    return max(isqrt(floor(n * q)) for q in inv)


def brute_force_oracle(problem: EnumerationProblem) -> list[CohClass]:
    """Scan the whole box [-window, window]^m.  Test use only."""
    L = problem.lattice
    m, w = L.rank, problem.window
    if m > ORACLE_MAX_RANK or w > ORACLE_MAX_WINDOW:
        raise OracleRefusal(f"oracle limited to rank <= {ORACLE_MAX_RANK}, window <= {ORACLE_MAX_WINDOW}")
    if m == 0:
        return [CohClass(())] if problem.target == 0 else []
    gram = np.array(L.gram, dtype=np.int64)
    if np.abs(gram).max() * m * m * w * w > 2**60:
        raise OracleRefusal("entries too large for the int64 oracle")
    inner = min(m, 4)
    axis = np.arange(-w, w + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * inner), indexing="ij"), -1).reshape(-1, inner)
    parity = np.array([p % 2 for p in problem.parity], dtype=np.int64)
    found = []
    for head in itertools.product(range(-w, w + 1), repeat=m - inner):
        pts = np.hstack([np.tile(np.array(head, dtype=np.int64), (len(grid), 1)), grid])
        q = np.einsum("ij,jk,ik->i", pts, gram, pts)
        ok = (q == problem.target) & np.all((pts - parity) % 2 == 0, axis=1)
        found.extend(tuple(int(v) for v in row) for row in pts[ok])
    return [CohClass(c) for c in sorted(found)]
