import numpy as np
import pytest

from nevpick.discgeo import mobius_distance
from nevpick.errors import (
    AssertionReport,
    CoincidentPoints,
    DimensionMismatch,
    EmptyPreimage,
    InputError,
    OutOfDisc,
    SpectrumNotInDisc,
)
from nevpick.funcalc import BlaschkeFunction
from nevpick.nptest import (
    InterpolationData,
    check_three_point,
    check_two_point,
    q_exponent,
    random_feasible_dataset,
    schwarz_check,
)
from nevpick.spectra import spectral_radius
from nevpick.testing import block_diag, jordan_block, random_schwarz_disc


def scalar(*vals):
    return [np.array([[v]], dtype=complex) for v in vals]


class TestInterpolationData:
    def test_count_mismatch(self):
        with pytest.raises(DimensionMismatch):
            InterpolationData([0, 0.5], scalar(0))

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatch):
            InterpolationData([0, 0.5], [np.zeros((1, 1)), np.zeros((2, 2))])

    def test_coincident_nodes(self):
        with pytest.raises(CoincidentPoints):
            InterpolationData([0.1, 0.1], scalar(0, 0))

    def test_node_outside_disc(self):
        with pytest.raises(OutOfDisc):
            InterpolationData([0.1, 1.1], scalar(0, 0))

    def test_target_outside_spectral_ball(self):
        with pytest.raises(SpectrumNotInDisc) as info:
            InterpolationData([0, 0.5], scalar(0, 1.5))
        assert info.value.field == "targets[1]"

    def test_single_condition_rejected(self):
        with pytest.raises(InputError):
            InterpolationData([0], scalar(0))


class TestTwoPoint:
    def test_scalar_refutation(self):
        v = check_two_point(InterpolationData([0, 0.5], scalar(0, 0.9)))
        assert v.infeasible
        # classical Schwarz-Pick: M(0, 0.9) = 0.9 against M(0, 0.5) = 0.5
        assert v.witness["lhs"] == pytest.approx(mobius_distance(0, 0.9), abs=1e-12)
        assert v.witness["rhs"] == pytest.approx(mobius_distance(0, 0.5), abs=1e-12)

    def test_equal_targets(self, rng):
        W = 0.3 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        W *= 0.5 / spectral_radius(W)
        v = check_two_point(InterpolationData([0.1, 0.2], [W, W]))
        assert not v.infeasible and v.witness["lhs"] < 1e-7

    def test_nilpotent_targets(self):
        v = check_two_point(InterpolationData([0.3, -0.4j], [np.zeros((2, 2)), jordan_block(0, 2)]))
        assert not v.infeasible and v.witness["lhs"] < 1e-7

    def test_wrong_count(self):
        with pytest.raises(DimensionMismatch):
            check_two_point(InterpolationData([0, 0.1, 0.2], scalar(0, 0, 0)))

    def test_scalar_boundary_matches_classical(self, rng):
        for _ in range(200):
            z = 0.9 * np.sqrt(rng.uniform(size=2)) * np.exp(2j * np.pi * rng.uniform(size=2))
            w = 0.9 * np.sqrt(rng.uniform(size=2)) * np.exp(2j * np.pi * rng.uniform(size=2))
            lhs, rhs = mobius_distance(*w), mobius_distance(*z)
            if abs(lhs - rhs) <= 1e-7:
                continue
            v = check_two_point(InterpolationData(z, scalar(*w)))
            assert v.infeasible == (lhs > rhs)


class TestQExponent:
    def test_diagonalizable_distinct_images(self):
        data = InterpolationData([0, 0.5], [np.diag([0.1, 0.2]), np.diag([0.3, -0.3])])
        nu = data.blaschke[1](0.1)
        assert q_exponent(nu, 0, 1, data) == 1

    def test_index_three_double_zero(self):
        lam = 0.2
        Wj = jordan_block(lam, 3)
        Wk = block_diag([jordan_block(lam, 2), np.full((1, 1), 0.5)])
        data = InterpolationData([0, 0.5], [Wj, Wk])
        # B_k has a double zero at lam, so ord B_k' = 1 and floor(2/2)+1 = 2
        assert q_exponent(0.0, 0, 1, data) == 2

    def test_index_two_simple_point(self):
        lam = 0.2
        data = InterpolationData([0, 0.5], [jordan_block(lam, 2), np.diag([0.5, -0.1])])
        nu = data.blaschke[1](lam)
        assert abs(BlaschkeFunction(data.blaschke[1]).derivs(lam, 1)[1]) > 1e-3
        assert q_exponent(nu, 0, 1, data) == 2

    def test_empty_preimage(self):
        data = InterpolationData([0, 0.5], [np.diag([0.1, 0.2]), np.diag([0.3, -0.3])])
        with pytest.raises(EmptyPreimage):
            q_exponent(0.77, 0, 1, data)


class TestThreePoint:
    def test_hand_example(self):
        W3 = np.diag([0.99, 0.99])
        data = InterpolationData([0, 0.1, 0.2], [np.zeros((2, 2)), np.diag([0.01, -0.02]), W3])
        v = check_three_point(data)
        assert v.infeasible
        w = v.witness
        assert w["k"] == 1
        # B_1(t) = t so sigma(B_1(W_3)) = {0.99}; |psi_1(0.2)| = 0.2
        assert w["lhs"] == pytest.approx(0.99, abs=1e-9)
        assert w["rhs"] == pytest.approx(0.2, abs=1e-9)
        # rotations u = 0.99 e^{i theta} / 0.2 have modulus 4.95, so branch two has no candidate
        assert w["branch2"]["passed"] is False

    def test_values_of_identity_disc(self, rng):
        for _ in range(20):
            z = 0.9 * np.sqrt(rng.uniform(size=3)) * np.exp(2j * np.pi * rng.uniform(size=3))
            data = InterpolationData(z, [zz * np.eye(2) for zz in z])
            assert not check_three_point(data).infeasible

    def test_two_point_refutation_carries_over(self, rng):
        seen = 0
        for _ in range(300):
            z = 0.9 * np.sqrt(rng.uniform(size=3)) * np.exp(2j * np.pi * rng.uniform(size=3))
            W = [np.diag(0.95 * np.sqrt(rng.uniform(size=2)) * np.exp(2j * np.pi * rng.uniform(size=2))) for _ in z]
            pairs = [(0, 1), (0, 2), (1, 2)]
            if not any(check_two_point(InterpolationData([z[i], z[j]], [W[i], W[j]])).infeasible for i, j in pairs):
                continue
            seen += 1
            assert check_three_point(InterpolationData(z, W)).infeasible
        assert seen > 20

    def test_constant_data(self):
        W = np.diag([0.3, 0.1j])
        assert not check_three_point(InterpolationData([0, 0.3, -0.5j], [W, W, W])).infeasible


class TestSchwarz:
    def test_linear_disc(self, rng):
        G = np.diag([0.9, -0.5j]) + np.triu(np.ones((2, 2)), 1)
        zs = 0.99 * np.exp(2j * np.pi * rng.uniform(size=32)) * rng.uniform(size=32)
        assert schwarz_check(lambda z: z * G, zs).passed

    def test_quadratic_has_slack(self):
        rep = schwarz_check(lambda z: z**2 * np.eye(3), [0.5, 0.9j, -0.3])
        assert rep.passed and rep.max_excess < -0.05

    def test_blaschke_disc(self, rng):
        for _ in range(10):
            F = random_schwarz_disc(rng, 3)
            zs = 0.999 * np.exp(2j * np.pi * rng.uniform(size=32)) * np.sqrt(rng.uniform(size=32))
            assert schwarz_check(F, zs).passed

    def test_violation_reported(self):
        with pytest.raises(AssertionReport):
            schwarz_check(lambda z: np.sqrt(abs(z)) * np.eye(2), [0.25])

    def test_nonzero_origin_rejected(self):
        with pytest.raises(InputError):
            schwarz_check(lambda z: 0.5 * np.eye(2), [0.1])


class TestFeasibleGenerator:
    def test_constant_map_gives_equal_targets(self):
        data, _ = random_feasible_dataset(3, 3, 3, 0.2, degree=0)
        assert all(np.allclose(W, data.targets[0]) for W in data.targets)
        assert not check_three_point(data).infeasible

    def test_margin_respected(self):
        for seed in range(30):
            data, F = random_feasible_dataset(seed, 4, 3, 0.25)
            assert max(spectral_radius(W) for W in data.targets) < 1 - 0.25
            for z, W in zip(data.nodes, data.targets):
                np.testing.assert_allclose(F(z), W)

    def test_degree_one_is_inconclusive(self):
        for seed in range(100):
            data, _ = random_feasible_dataset(seed, 2 + seed % 3, 2 + seed % 2, 0.2, degree=1)
            v = check_two_point(data) if data.N == 2 else check_three_point(data)
            assert not v.infeasible

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            random_feasible_dataset(0, 2, 4)
