"""Shared generators and independent oracles for the test suite."""

import random

import numpy as np
import sympy

from gcchern.lattice import HYPERBOLIC, IntersectionLattice, direct_sum


def charpoly_inertia(gram):
    """(positive, negative) eigenvalue counts of a symmetric integer matrix.

    A real symmetric matrix has only real eigenvalues, so Descartes' rule of
    signs is exact: sign changes of p(t) count the positive roots, sign
    changes of p(-t) the negative ones.
    """
    t = sympy.Symbol("t")
    p = sympy.Matrix(gram).charpoly(t).as_expr()

    def changes(expr):
        coeffs = [c for c in sympy.Poly(expr, t).all_coeffs() if c != 0]
        return sum(1 for a, b in zip(coeffs, coeffs[1:]) if a * b < 0)

    return changes(p), changes(p.subs(t, -t))


def random_unimodular(rng: random.Random, m: int, steps: int = 6):
    """Random integer matrix with determinant +-1 (columns are the new basis)."""
    t = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(steps):
        op = rng.randrange(3) if m > 1 else 2
        if op == 0:
            i, j = rng.sample(range(m), 2)
            k = rng.choice([-2, -1, 1, 2])
            for row in t:
                row[i] += k * row[j]
        elif op == 1:
            i, j = rng.sample(range(m), 2)
            for row in t:
                row[i], row[j] = row[j], row[i]
        else:
            i = rng.randrange(m)
            for row in t:
                row[i] = -row[i]
    return t


def is_definite_float(gram) -> bool:
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return bool(np.all(ev > 1e-9) or np.all(ev < -1e-9))


def random_definite_gram(rng: random.Random, m: int, lo: int = -2, hi: int = 2):
    while True:
        g = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                g[i][j] = g[j][i] = rng.randint(lo, hi)
        if is_definite_float(g):
            return g


SMALL_UNIMODULAR = [
    IntersectionLattice([[1]]),
    IntersectionLattice([[-1]]),
    HYPERBOLIC,
    IntersectionLattice.diagonal([1, -1]),
    IntersectionLattice.diagonal([1, 1]),
    IntersectionLattice.diagonal([1, 1, -1]),
    IntersectionLattice.diagonal([-1, -1, -1]),
    direct_sum(HYPERBOLIC, IntersectionLattice([[1]])),
    direct_sum(HYPERBOLIC, HYPERBOLIC),
    IntersectionLattice.diagonal([1, -1, -1, -1]),
    IntersectionLattice.diagonal([1, 1, 1, 1]),
]
