import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nevpick.config import DEFAULT
from nevpick.errors import NotAnEigenvalue
from nevpick.polynomials import ComplexPoly, from_sym_point, pi_n
from nevpick.spectra import (
    chi,
    cluster,
    companion,
    eigenvalues,
    index_of,
    minimal_polynomial,
    minimal_polynomial_oracle,
    spectral_data,
    spectral_radius,
)
from nevpick.testing import block_diag, jordan_block, random_jordan_case, random_similarity

J2 = jordan_block(0, 2)
J3 = jordan_block(0, 3)


def sorted_eigs(A):
    return np.sort_complex(eigenvalues(A))


class TestEigenvalues:
    def test_diagonal(self):
        np.testing.assert_allclose(sorted_eigs(np.diag([1.0, 2.0])), [1, 2])

    def test_nilpotent(self):
        np.testing.assert_allclose(eigenvalues(J2), [0, 0], atol=1e-12)

    def test_companion_of_factored_quadratic(self):
        np.testing.assert_allclose(sorted_eigs(companion([3, 2])), [1, 2], atol=1e-12)


class TestCluster:
    def test_near_duplicate_merges(self):
        out = cluster([1.0, 1.0 + 1e-12, 2.0], DEFAULT)
        assert [m for _, m in out] == [2, 1]
        assert abs(out[0][0] - 1.0) < 1e-11 and out[1][0] == 2.0

    def test_single_zero(self):
        assert cluster([0.0]) == [(0, 1)]

    def test_well_separated_pair(self):
        out = cluster([1j, -1j])
        assert len(out) == 2 and all(m == 1 for _, m in out)


class TestIndex:
    def test_nilpotent_block(self):
        assert index_of(J3, 0) == 3

    def test_diagonalizable(self):
        assert index_of(np.eye(2), 1) == 1

    def test_mixed_blocks(self):
        # rank sequence of (A - 0)^j is 1, 0, 0
        A = block_diag([J2, np.zeros((1, 1))])
        assert [np.linalg.matrix_rank(np.linalg.matrix_power(A, j)) for j in (1, 2, 3)] == [1, 0, 0]
        assert index_of(A, 0) == 2

    def test_not_an_eigenvalue(self):
        with pytest.raises(NotAnEigenvalue):
            index_of(np.diag([1.0, 2.0]), 5.0)


class TestSpectralData:
    def test_diagonal_projections(self):
        sd = spectral_data(np.diag([1.0, 2.0]))
        E = dict(zip(np.round(sd.values, 8), sd.projections))
        np.testing.assert_allclose(E[1], np.diag([1, 0]), atol=1e-12)
        np.testing.assert_allclose(E[2], np.diag([0, 1]), atol=1e-12)

    def test_single_jordan_block(self):
        sd = spectral_data(J2)
        assert len(sd.eigs) == 1 and sd.indices == [2]
        np.testing.assert_allclose(sd.projections[0], np.eye(2), atol=1e-12)

    def test_upper_triangular_projections(self):
        # E(1) + E(2) = I and 1 E(1) + 2 E(2) = A solved by hand
        sd = spectral_data(np.array([[1.0, 1.0], [0.0, 2.0]]))
        E = dict(zip(np.round(np.real(sd.values), 8), sd.projections))
        np.testing.assert_allclose(E[1], [[1, -1], [0, 0]], atol=1e-10)
        np.testing.assert_allclose(E[2], [[0, 1], [0, 1]], atol=1e-10)

    def test_reconstruction_on_random_cases(self, rng):
        for _ in range(30):
            case = random_jordan_case(rng)
            sd = spectral_data(case.matrix)
            A = sum(lam * E + sd.nilpotent_part(i) for i, (lam, E) in enumerate(zip(sd.values, sd.projections)))
            np.testing.assert_allclose(A, case.matrix, atol=1e-8 * np.linalg.norm(case.matrix))
            assert sorted(sd.indices) == sorted(case.indices.values())


class TestMinimalPolynomial:
    def test_repeated_diagonal(self):
        p = minimal_polynomial(np.diag([0.3, 0.3, -0.5]))
        assert p.allclose(ComplexPoly.from_roots([0.3, -0.5]))

    def test_nilpotent(self):
        assert minimal_polynomial(J3).allclose(ComplexPoly([0, 0, 0, 1]))

    def test_lcm_of_blocks(self):
        A = block_diag([J2, np.ones((1, 1))])
        assert minimal_polynomial(A).allclose(ComplexPoly.from_roots([0, 0, 1]))

    def test_annihilates_random_cases(self, rng):
        for _ in range(30):
            case = random_jordan_case(rng)
            p = minimal_polynomial(case.matrix)
            assert p.allclose(ComplexPoly.from_roots(case.minimal_poly_roots()), atol=1e-6)


class TestOracle:
    def test_zero_matrix(self):
        assert minimal_polynomial_oracle(np.zeros((3, 3))).allclose(ComplexPoly([0, 1]))

    def test_nilpotent(self):
        assert minimal_polynomial_oracle(J2).allclose(ComplexPoly([0, 0, 1]))

    def test_vandermonde(self):
        assert minimal_polynomial_oracle(np.diag([1.0, 2.0, 3.0])).allclose(ComplexPoly.from_roots([1, 2, 3]), atol=1e-9)

    def test_agrees_with_structural_answer(self, rng):
        for _ in range(60):
            case = random_jordan_case(rng)
            orc = minimal_polynomial_oracle(case.matrix)
            assert orc.degree == len(case.minimal_poly_roots())

    def test_annihilates(self, rng):
        from nevpick.polynomials import eval_matrix

        for _ in range(20):
            case = random_jordan_case(rng, n_max=6, cond=3.0)
            orc = minimal_polynomial_oracle(case.matrix)
            assert np.linalg.norm(eval_matrix(orc, case.matrix)) < 1e-7


class TestChiAndCompanion:
    def test_cofactor_example(self):
        np.testing.assert_allclose(chi(np.array([[0, -2], [1, 3]])), [3, 2], atol=1e-12)

    def test_zero(self):
        np.testing.assert_allclose(chi(np.zeros((2, 2))), [0, 0])

    def test_diagonal(self, rng):
        lam = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        np.testing.assert_allclose(chi(np.diag(lam)), pi_n(lam), atol=1e-12)

    def test_companion_displayed_form(self):
        np.testing.assert_allclose(companion([3, 2]), [[0, -2], [1, 3]])

    def test_companion_of_zero_is_shift(self):
        np.testing.assert_allclose(companion([0, 0, 0]), np.diag([1, 1], -1))

    def test_companion_matches_numpy_poly(self, rng):
        X = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        # numpy's characteristic polynomial is independent of our chi
        np.testing.assert_allclose(np.poly(companion(X))[::-1], from_sym_point(X).coeffs, atol=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95)), min_size=1, max_size=6))
    def test_chi_companion_round_trip(self, pts):
        z = np.array([complex(a, b) for a, b in pts])
        X = pi_n(z)
        np.testing.assert_allclose(chi(companion(X)), X, atol=1e-10)

    def test_similarity_invariance(self, rng):
        A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        S = random_similarity(rng, 5, 10.0)
        np.testing.assert_allclose(chi(S @ A @ np.linalg.inv(S)), chi(A), atol=1e-9)


class TestSpectralRadius:
    def test_zero(self):
        assert spectral_radius(np.zeros((2, 2))) == 0

    def test_diagonal(self):
        assert spectral_radius(np.diag([0.5, -0.9])) == pytest.approx(0.9)

    def test_nilpotent_ignores_norm(self):
        assert spectral_radius(J2) < 1e-12
