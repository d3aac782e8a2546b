import math

import numpy as np
import pytest

from fockweyl.massgauss import (
    GaussianIntegralSpec,
    b_det_closed,
    b_inverse_closed,
    b_matrix,
    gaussian_integral_closed,
    gaussian_integral_quadrature,
    make_partition,
)


class TestMakePartition:
    def test_equal_pair(self):
        p = make_partition([1, 1])
        np.testing.assert_allclose(p.mu, [0.5, 0.5])
        assert p.lam == pytest.approx(0.5)

    def test_equal_triple(self):
        p = make_partition([1, 1, 1])
        np.testing.assert_allclose(p.mu, [1 / 3, 1 / 3, 1 / 3])
        assert p.lam == pytest.approx(1 / 3)

    def test_one_two_three(self):
        p = make_partition([1, 2, 3])
        np.testing.assert_allclose(p.mu, [1 / 6, 1 / 3, 1 / 2])
        assert p.lam == pytest.approx(7 / 18)
        assert p.total_mass == pytest.approx(6.0)

    def test_invariants_random(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = rng.integers(2, 9)
            masses = np.exp(rng.uniform(np.log(0.1), np.log(10), size=n))
            p = make_partition(masses)
            assert abs(p.mu.sum() - 1.0) <= 1e-12
            assert 1 / n - 1e-12 <= p.lam < 1

    def test_rejects_bad_masses(self):
        with pytest.raises(ValueError):
            make_partition([1.0, 0.0])
        with pytest.raises(ValueError):
            make_partition([1.0, -2.0])
        with pytest.raises(ValueError):
            make_partition([])


class TestBMatrix:
    def test_equal_masses_n3(self):
        B = b_matrix(make_partition([1, 1, 1]))
        np.testing.assert_allclose(B, [[2, 1], [1, 2]], atol=1e-15)

    def test_n2(self):
        B = b_matrix(make_partition([1, 1]))
        np.testing.assert_allclose(B, [[2.0]], atol=1e-15)

    def test_one_two_three(self):
        B = b_matrix(make_partition([1, 2, 3]))
        np.testing.assert_allclose(
            B, [[10 / 9, 2 / 9], [2 / 9, 13 / 9]], atol=1e-14
        )

    def test_needs_two_masses(self):
        with pytest.raises(ValueError):
            b_matrix(make_partition([1.0]))


class TestBClosedForms:
    def test_equal_masses_det(self):
        p = make_partition([1, 1, 1])
        assert b_det_closed(p) == pytest.approx(3.0)
        assert b_det_closed(p) == pytest.approx(p.lam / p.mu[-1] ** 2)

    def test_one_two_three_det(self):
        p = make_partition([1, 2, 3])
        assert b_det_closed(p) == pytest.approx(14 / 9, rel=1e-12)
        assert b_det_closed(p) == pytest.approx(np.linalg.det(b_matrix(p)), rel=1e-12)

    def test_inverse_is_inverse(self):
        p = make_partition([2, 5, 1, 3])
        prod = b_matrix(p) @ b_inverse_closed(p)
        assert np.abs(prod - np.eye(3)).max() <= 1e-12

    def test_closed_vs_lu_random(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            n = rng.integers(2, 9)
            masses = np.exp(rng.uniform(np.log(0.1), np.log(10), size=n))
            p = make_partition(masses)
            B = b_matrix(p)
            assert b_det_closed(p) == pytest.approx(np.linalg.det(B), rel=1e-10)
            assert np.abs(b_inverse_closed(p) - np.linalg.inv(B)).max() <= 1e-10
            assert np.abs(B @ b_inverse_closed(p) - np.eye(n - 1)).max() <= 1e-12


class TestGaussianIntegralSpec:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            GaussianIntegralSpec(np.array([[1.0, 0.2], [0.1, 1.0]]), np.zeros(2))

    def test_rejects_non_pd(self):
        with pytest.raises(ValueError, match="positive definite"):
            GaussianIntegralSpec(np.array([[1.0, 2.0], [2.0, 1.0]]), np.zeros(2))
        with pytest.raises(ValueError, match="positive definite"):
            GaussianIntegralSpec(-np.eye(2), np.zeros(2))


class TestGaussianClosed:
    def test_standard_gaussian(self):
        spec = GaussianIntegralSpec(np.array([[1.0]]), np.zeros(1))
        assert gaussian_integral_closed(spec) == pytest.approx(math.sqrt(math.pi), abs=1e-12)

    def test_identity_with_shift(self):
        spec = GaussianIntegralSpec(np.eye(2), np.array([2.0, 0.0]))
        assert gaussian_integral_closed(spec) == pytest.approx(math.pi * math.e, rel=1e-12)

    def test_coupled_with_shift(self):
        spec = GaussianIntegralSpec(np.array([[2.0, 1.0], [1.0, 2.0]]), np.array([1.0, 0.0]))
        # det = 3, B^-1[0,0] = 2/3, value sqrt(pi^2/3) e^{1/6}
        expected = math.sqrt(math.pi**2 / 3) * math.exp(1 / 6)
        assert gaussian_integral_closed(spec) == pytest.approx(expected, rel=1e-12)
        assert np.linalg.inv(spec.B)[0, 0] == pytest.approx(2 / 3)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(9)
        for n in (2, 3):
            eigs = rng.uniform(0.5, 3.0, size=n)
            theta = rng.uniform(0, 2 * math.pi)
            if n == 2:
                R = np.array(
                    [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
                )
            else:
                A = rng.normal(size=(3, 3))
                R, _ = np.linalg.qr(A)
            B = R @ np.diag(eigs) @ R.T
            B = (B + B.T) / 2
            v = rng.normal(size=n)
            base = gaussian_integral_closed(GaussianIntegralSpec(np.diag(eigs), R.T @ v))
            rotated = gaussian_integral_closed(GaussianIntegralSpec(B, v))
            assert rotated == pytest.approx(base, rel=1e-10)


class TestGaussianQuadrature:
    def test_standard_gaussian_fine(self):
        spec = GaussianIntegralSpec(np.array([[1.0]]), np.zeros(1))
        val = gaussian_integral_quadrature(spec, radius=8.0, points=4001)
        assert abs(val - math.sqrt(math.pi)) <= 1e-8

    def test_truncated_radius_undershoots(self):
        spec = GaussianIntegralSpec(np.array([[1.0]]), np.zeros(1))
        val = gaussian_integral_quadrature(spec, radius=1.0, points=801)
        assert val < math.sqrt(math.pi) - 0.2

    def test_matches_closed_random_2x2(self):
        rng = np.random.default_rng(12)
        for _ in range(8):
            eigs = rng.uniform(0.5, 3.0, size=2)
            theta = rng.uniform(0, 2 * math.pi)
            R = np.array(
                [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
            )
            B = R @ np.diag(eigs) @ R.T
            B = (B + B.T) / 2
            v = rng.normal(size=2)
            v *= min(1.0, 2.0 / np.linalg.norm(v))
            spec = GaussianIntegralSpec(B, v)
            closed = gaussian_integral_closed(spec)
            quad = gaussian_integral_quadrature(spec, radius=8.0, points=801)
            assert abs(quad - closed) / closed <= 1e-6

    def test_dimension_guard(self):
        spec = GaussianIntegralSpec(np.eye(4), np.zeros(4))
        with pytest.raises(ValueError, match="n <= 3"):
            gaussian_integral_quadrature(spec, radius=5.0, points=21)
