import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nevpick.discgeo import (
    BlaschkeProduct,
    blaschke_eval,
    blaschke_preimage,
    caratheodory_extremal_disc,
    disc_automorphism,
    minimal_blaschke,
    mobius_distance,
)
from nevpick.errors import CoincidentPoints, OutOfDisc, PoleHit, SpectrumNotInDisc
from nevpick.funcalc import apply
from nevpick.testing import random_jordan_case

in_disc = st.builds(
    lambda r, t: r * np.exp(1j * t), st.floats(0, 0.95), st.floats(0, 2 * np.pi)
)


class TestMobiusDistance:
    def test_from_origin(self):
        assert mobius_distance(0, 0.3 + 0.4j) == pytest.approx(0.5)

    def test_same_point(self):
        assert mobius_distance(0.2j, 0.2j) == 0

    def test_out_of_disc(self):
        with pytest.raises(OutOfDisc):
            mobius_distance(0, 1.0)

    @settings(max_examples=100, deadline=None)
    @given(in_disc, in_disc, in_disc)
    def test_automorphism_invariance(self, z1, z2, c):
        psi = disc_automorphism(c)
        assert mobius_distance(psi(z1), psi(z2)) == pytest.approx(mobius_distance(z1, z2), abs=1e-9)


class TestAutomorphism:
    def test_origin_is_identity(self):
        assert disc_automorphism(0)(0.3 + 0.1j) == 0.3 + 0.1j

    @settings(max_examples=50, deadline=None)
    @given(in_disc, in_disc)
    def test_centre_to_zero_and_inverse(self, c, z):
        psi = disc_automorphism(c)
        assert abs(psi(c)) < 1e-15
        assert abs(psi.inverse(psi(z)) - z) < 1e-12


class TestMinimalBlaschke:
    def test_nilpotent(self):
        b = minimal_blaschke(np.array([[0, 1], [0, 0]]))
        assert b.zeros == ((0, 2),)
        assert blaschke_eval(b, 0.5) == pytest.approx(0.25)

    def test_repeated_diagonal(self):
        b = minimal_blaschke(np.diag([0.4j, 0.4j]))
        assert len(b.zeros) == 1 and b.zeros[0][1] == 1

    def test_outside_disc(self):
        with pytest.raises(SpectrumNotInDisc):
            minimal_blaschke(np.diag([0.5, 1.2]))

    def test_annihilates(self, rng):
        for _ in range(30):
            case = random_jordan_case(rng)
            W = case.matrix
            assert np.linalg.norm(apply(minimal_blaschke(W), W)) <= 1e-7 * max(1, np.linalg.norm(W))


class TestExtremal:
    def test_at_origin(self):
        z = 0.3 - 0.4j
        g, v = caratheodory_extremal_disc(0, z)
        assert v == pytest.approx(0.5)
        assert g(1j) == pytest.approx(np.conj(z) / abs(z) * 1j)
        assert g(z) == pytest.approx(v)

    def test_vanishes_at_lambda_and_keeps_modulus(self, rng):
        lam, z = 0.2 + 0.1j, -0.5j
        g, _ = caratheodory_extremal_disc(lam, z)
        assert abs(g(lam)) < 1e-15
        for zeta in 0.9 * np.exp(2j * np.pi * rng.uniform(size=10)):
            assert abs(g(zeta)) == pytest.approx(mobius_distance(lam, zeta))

    def test_coincident(self):
        with pytest.raises(CoincidentPoints):
            caratheodory_extremal_disc(0.1, 0.1)


class TestBlaschkeEvalAndPreimage:
    def test_square(self):
        assert blaschke_eval(BlaschkeProduct(((0, 2),)), 0.5) == pytest.approx(0.25)

    def test_boundary_modulus(self, rng):
        b = BlaschkeProduct.from_zeros([0.3, -0.5j, 0.1 + 0.7j], np.exp(0.3j))
        t = np.exp(2j * np.pi * rng.uniform(size=50))
        np.testing.assert_allclose(np.abs(blaschke_eval(b, t)), 1, atol=1e-12)
        for a, _ in b.zeros:
            assert abs(b(a)) < 1e-15

    def test_pole_hit(self):
        b = BlaschkeProduct.from_zeros([0.5])
        with pytest.raises(PoleHit):
            blaschke_eval(b, 2.0)

    def test_preimage_square(self):
        r = np.sort_complex(blaschke_preimage(BlaschkeProduct(((0, 2),)), 0.25))
        np.testing.assert_allclose(r, [-0.5, 0.5], atol=1e-12)
        np.testing.assert_allclose(blaschke_preimage(BlaschkeProduct(((0, 2),)), 0), [0, 0], atol=1e-12)

    def test_preimage_single_factor(self):
        a, w = 0.3 + 0.2j, -0.1 + 0.4j
        r = blaschke_preimage(BlaschkeProduct(((a, 1),)), w)
        np.testing.assert_allclose(r, [(w + a) / (1 + np.conj(a) * w)], atol=1e-12)

    def test_preimage_maps_back(self, rng):
        b = BlaschkeProduct.from_zeros([0.3, -0.5j, 0.1 + 0.7j])
        w = 0.4 - 0.3j
        r = blaschke_preimage(b, w)
        assert r.size == b.degree
        np.testing.assert_allclose(blaschke_eval(b, r), w, atol=1e-10)
