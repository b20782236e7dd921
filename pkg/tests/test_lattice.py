import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gcchern.lattice import (
    HYPERBOLIC,
    CohClass,
    DegenerateFormError,
    DimensionError,
    IntersectionLattice,
    LatticeError,
    SignatureData,
    direct_sum,
    divisibility,
    e8,
    is_characteristic,
    pair,
    signature,
)

from helpers import SMALL_UNIMODULAR, charpoly_inertia, random_unimodular

U = HYPERBOLIC


class TestPair:
    def test_cp2_generator_times_three(self):
        assert pair(IntersectionLattice([[1]]), CohClass([3]), CohClass([3])) == 9

    def test_isotropic_hyperbolic_basis_vector(self):
        assert pair(U, CohClass([1, 0]), CohClass([1, 0])) == 0

    def test_diagonal_mixed_signs(self):
        L = IntersectionLattice.diagonal([1, -1, -1])
        # 2*1*1 + 1*(-1)*1 + 1*(-1)*0
        assert pair(L, CohClass([2, 1, 1]), CohClass([1, 1, 0])) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            pair(U, CohClass([1]), CohClass([1, 0]))
        with pytest.raises(DimensionError):
            pair(U, CohClass([1, 0]), CohClass([1, 0, 0]))

    def test_big_integers_stay_exact(self):
        x = CohClass([10**40, 1])
        assert pair(U, x, x) == 2 * 10**40

    @settings(max_examples=100)
    @given(st.data())
    def test_symmetric_bilinear(self, data):
        L = data.draw(st.sampled_from(SMALL_UNIMODULAR))
        vec = st.lists(st.integers(-20, 20), min_size=L.rank, max_size=L.rank).map(CohClass)
        x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
        k = data.draw(st.integers(-5, 5))
        assert pair(L, x, y) == pair(L, y, x)
        assert pair(L, x + z, y) == pair(L, x, y) + pair(L, z, y)
        assert pair(L, k * x, y) == k * pair(L, x, y)


class TestSignature:
    def test_cp2(self):
        s = signature(IntersectionLattice([[1]]))
        assert s == SignatureData(1, 0) and s.sigma == 1

    def test_hyperbolic_plane(self):
        assert charpoly_inertia([[0, 1], [1, 0]]) == (1, 1)
        s = signature(U)
        assert s == SignatureData(1, 1) and s.sigma == 0

    def test_rational_elliptic_surface_form(self):
        s = signature(IntersectionLattice.diagonal([1] + [-1] * 9))
        assert (s.positive, s.negative, s.sigma) == (1, 9, -8)

    def test_e8(self):
        assert signature(e8()) == SignatureData(8, 0)
        assert signature(e8(-1)) == SignatureData(0, 8)
        assert e8().determinant == 1
        assert e8().is_even

    def test_zero_diagonal_needs_shear(self):
        # all diagonal entries vanish, so pivoting has to create one
        L = IntersectionLattice([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert signature(L) == SignatureData(*charpoly_inertia(L.gram))
        assert L.determinant == 2

    def test_degenerate(self):
        for gram in ([[0]], [[1, 1], [1, 1]], [[0, 0], [0, 0]], [[0, 1, 0], [1, 0, 0], [0, 0, 0]]):
            L = IntersectionLattice(gram)
            assert not L.is_nondegenerate
            assert L.determinant == 0
            with pytest.raises(DegenerateFormError):
                signature(L)

    def test_determinant_against_sympy(self):
        rng = random.Random(7)
        for _ in range(40):
            m = rng.randint(1, 5)
            g = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    g[i][j] = g[j][i] = rng.randint(-3, 3)
            L = IntersectionLattice(g)
            assert L.determinant == sympy.Matrix(g).det()
            if L.determinant:
                assert signature(L) == SignatureData(*charpoly_inertia(g))

    def test_sylvester_inertia_under_basis_change(self):
        rng = random.Random(2024)
        for i in range(50):
            L = SMALL_UNIMODULAR[i % len(SMALL_UNIMODULAR)]
            t = random_unimodular(rng, L.rank)
            assert abs(sympy.Matrix(t).det()) == 1
            assert signature(L.transform(t)) == signature(L)

    def test_not_symmetric(self):
        with pytest.raises(LatticeError):
            IntersectionLattice([[1, 2], [0, 1]])

    def test_not_square(self):
        with pytest.raises(DimensionError):
            IntersectionLattice([[1, 2]])


class TestCharacteristic:
    def test_odd_rank_one(self):
        assert is_characteristic(IntersectionLattice([[1]]), CohClass([1]))
        assert not is_characteristic(IntersectionLattice([[1]]), CohClass([0]))

    def test_hyperbolic(self):
        assert is_characteristic(U, CohClass([0, 0]))
        assert not is_characteristic(U, CohClass([1, 0]))

    def test_matches_brute_force_definition(self):
        # w.y = y.y mod 2 for all y in a box, versus the basis-vector shortcut
        import itertools

        for L in SMALL_UNIMODULAR:
            for w in itertools.product(range(2), repeat=L.rank):
                brute = all(
                    (pair(L, w, y) - pair(L, y, y)) % 2 == 0
                    for y in itertools.product(range(-1, 2), repeat=L.rank)
                )
                assert is_characteristic(L, CohClass(w)) == brute

    @settings(max_examples=100)
    @given(st.data())
    def test_wu_congruence(self, data):
        L = data.draw(st.sampled_from(SMALL_UNIMODULAR))
        vec = st.lists(st.integers(-9, 9), min_size=L.rank, max_size=L.rank).map(CohClass)
        w = data.draw(vec)
        if not is_characteristic(L, w):
            return
        x = data.draw(vec)
        assert (pair(L, x, x) - pair(L, x, w)) % 2 == 0
        # van der Blij
        assert (pair(L, w, w) - signature(L).sigma) % 8 == 0


class TestDirectSum:
    def test_blocks(self):
        L = direct_sum(IntersectionLattice([[1]]), IntersectionLattice([[-1]]))
        assert L.gram == ((1, 0), (0, -1))

    def test_uu(self):
        L = direct_sum(U, U)
        assert L.rank == 4 and signature(L).sigma == 0

    def test_minus_e8_plus_u(self):
        L = direct_sum(e8(-1), U)
        assert L.rank == 10
        assert signature(L).sigma == -8
        assert charpoly_inertia(L.gram) == (1, 9)

    def test_signature_additive(self):
        for a in SMALL_UNIMODULAR:
            for b in SMALL_UNIMODULAR[:5]:
                s = signature(direct_sum(a, b))
                sa, sb = signature(a), signature(b)
                assert s == SignatureData(sa.positive + sb.positive, sa.negative + sb.negative)


def test_divisibility():
    L = IntersectionLattice.diagonal([1] + [-1] * 9)
    f = CohClass([3] + [-1] * 9)
    assert divisibility(L, f) == 1
    assert divisibility(L, 4 * f) == 4
    assert divisibility(L, CohClass.zero(10)) == 0
    assert divisibility(U, CohClass([2, 6])) == 2


def test_cohclass_arithmetic():
    x = CohClass([1, -2])
    assert -x == CohClass([-1, 2])
    assert 3 * x == x * 3 == CohClass([3, -6])
    assert (x + x).halve() == x
    assert CohClass([4, 6]).content() == 2
    assert not CohClass.zero(3)
    with pytest.raises(ValueError):
        CohClass([1, 2]).halve()
    with pytest.raises(DimensionError):
        x + CohClass([1])
