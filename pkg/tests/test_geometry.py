import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stategeom.core import DEFAULT_CONSTANTS, PhysicalConstants, evolve
from stategeom.geometry import (
    ParamFamily,
    bloch_family,
    evolution_speed,
    fubini_study_distance,
    metric_tensor,
    ray_deviation_sq,
    validate_family,
    wootters_distance,
)
from stategeom.oracles import random_hermitian, random_state

SQRT2 = math.sqrt(2.0)


def nearby_pair(rng, dim, delta):
    """Pair with |<a|b>|^2 = 1 - delta^2, built from an exact orthogonal split."""
    a = random_state(rng, dim)
    w = random_state(rng, dim)
    w = w - a * np.vdot(a, w)
    w /= np.linalg.norm(w)
    b = math.sqrt(1.0 - delta**2) * a + delta * w
    return a, b


class TestDistances:
    def test_identical_rays(self):
        psi = random_state(np.random.default_rng(0), 4)
        assert fubini_study_distance(psi, psi) == 0.0
        assert wootters_distance(psi, psi) == 0.0

    def test_orthogonal_rays(self):
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([0.0, 1.0], dtype=complex)
        assert fubini_study_distance(a, b) == pytest.approx(2.0)
        assert wootters_distance(a, b) == pytest.approx(math.pi)

    def test_half_overlap_wootters(self):
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([0.5, math.sqrt(3.0) / 2.0], dtype=complex)
        assert wootters_distance(a, b) == pytest.approx(2.0 * math.pi / 3.0)

    def test_sqrt_half_overlap_fubini_study(self):
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([1.0, 1.0], dtype=complex) / SQRT2
        assert fubini_study_distance(a, b) == pytest.approx(SQRT2)

    def test_gamma_scaling(self):
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([0.0, 1.0], dtype=complex)
        constants = PhysicalConstants(gamma=5.0)
        assert fubini_study_distance(a, b, constants) == pytest.approx(5.0)
        assert wootters_distance(a, b, constants) == pytest.approx(5.0 * math.pi / 2.0)

    @given(st.integers(0, 2**31 - 1), st.integers(2, 6),
           st.floats(0.0, 2.0 * math.pi), st.floats(0.0, 2.0 * math.pi))
    def test_phase_invariance(self, seed, dim, alpha, beta):
        rng = np.random.default_rng(seed)
        a = random_state(rng, dim)
        b = random_state(rng, dim)
        rotated_a = np.exp(1j * alpha) * a
        rotated_b = np.exp(1j * beta) * b
        assert abs(fubini_study_distance(a, b) - fubini_study_distance(rotated_a, rotated_b)) <= 1e-14
        assert abs(wootters_distance(a, b) - wootters_distance(rotated_a, rotated_b)) <= 1e-14

    @given(st.integers(0, 2**31 - 1), st.integers(2, 6),
           st.floats(1e-6, 1e-3))
    def test_small_separation_equivalence(self, seed, dim, delta):
        rng = np.random.default_rng(seed)
        a, b = nearby_pair(rng, dim, delta)
        d_fs = fubini_study_distance(a, b)
        d_w = wootters_distance(a, b)
        assert abs(d_fs - d_w) / d_w <= delta**2

    @given(st.integers(0, 2**31 - 1), st.integers(2, 6))
    def test_ray_deviation_matches_direct_formula(self, seed, dim):
        rng = np.random.default_rng(seed)
        a = random_state(rng, dim)
        b = random_state(rng, dim)
        direct = 1.0 - abs(np.vdot(a, b)) ** 2
        assert ray_deviation_sq(a, b) == pytest.approx(direct, abs=1e-12)

    def test_ray_deviation_resolves_tiny_separations(self):
        rng = np.random.default_rng(7)
        delta = 1e-8
        a, b = nearby_pair(rng, 5, delta)
        assert ray_deviation_sq(a, b) == pytest.approx(delta**2, rel=1e-6)


class TestMetricTensor:
    def test_bloch_sphere_metric(self):
        family = bloch_family()
        point = (math.pi / 3.0, 0.2)
        g = metric_tensor(family, point)
        expected = np.diag([1.0, math.sin(math.pi / 3.0) ** 2])
        assert np.abs(g - expected).max() <= 1e-6

    def test_pure_phase_family_has_zero_metric(self):
        psi0 = np.array([1.0, 1.0j], dtype=complex) / SQRT2

        family = ParamFamily(lambda p: np.exp(1j * float(p[0])) * psi0, 1, ((-1.0, 1.0),))
        g = metric_tensor(family, (0.1,))
        assert abs(g[0, 0]) <= 1e-8

    def test_real_rotation_family(self):
        family = ParamFamily(
            lambda p: np.array([math.cos(float(p[0])), math.sin(float(p[0]))], dtype=complex),
            1,
            ((-10.0, 10.0),),
        )
        for xi in (-1.3, 0.0, 2.4):
            g = metric_tensor(family, (xi,))
            assert g[0, 0] == pytest.approx(4.0, abs=1e-8)

    def test_boundary_margin_enforced(self):
        family = bloch_family()
        with pytest.raises(ValueError, match="one step"):
            metric_tensor(family, (0.0, 1.0))

    def test_non_finite_derivative_detected(self):
        def broken(point):
            if float(point[0]) > 0.9:
                return np.array([math.nan, 0.0], dtype=complex)
            return np.array([1.0, 0.0], dtype=complex)

        family = ParamFamily(broken, 1, ((0.0, 1.0),))
        with pytest.raises(ValueError, match="non-finite"):
            metric_tensor(family, (0.899999,))

    def test_convergence_order_on_bloch(self):
        family = bloch_family()
        point = (1.1, 2.3)
        exact = np.diag([1.0, math.sin(1.1) ** 2])
        errors = [
            np.abs(metric_tensor(family, point, step=step) - exact).max()
            for step in (1e-3, 5e-4)
        ]
        reduction = errors[0] / errors[1]
        assert 2.0 <= reduction <= 16.0

    @given(st.floats(0.2, math.pi - 0.2), st.floats(0.2, 2.0 * math.pi - 0.2))
    def test_symmetric_and_positive_semidefinite(self, theta, phi):
        g = metric_tensor(bloch_family(), (theta, phi))
        assert abs(g[0, 1] - g[1, 0]) <= 1e-9
        assert np.linalg.eigvalsh(g).min() >= -1e-9

    def test_validate_family_accepts_bloch(self, rng):
        validate_family(bloch_family(), rng)

    def test_validate_family_rejects_unnormalized(self, rng):
        family = ParamFamily(lambda p: np.array([2.0, 0.0], dtype=complex), 1, ((0.0, 1.0),))
        with pytest.raises(ValueError, match="norm"):
            validate_family(family, rng)


class TestEvolutionSpeed:
    def test_eigenstate_is_stationary(self):
        h = np.diag([1.0, 2.0]).astype(complex)
        assert evolution_speed(h, [1.0, 0.0]) == pytest.approx(0.0, abs=1e-9)

    def test_pauli_z_superposition(self):
        h = np.diag([1.0, -1.0]).astype(complex)
        psi = np.array([1.0, 1.0], dtype=complex) / SQRT2
        assert evolution_speed(h, psi) == pytest.approx(2.0)

    def test_three_level(self, three_level):
        h, psi = three_level
        assert evolution_speed(h, psi) == pytest.approx(2.0 * math.sqrt(14.0) / 3.0)

    @settings(max_examples=20)
    @given(st.integers(0, 2**31 - 1), st.integers(2, 6))
    def test_chord_rate_converges_to_speed(self, seed, dim):
        rng = np.random.default_rng(seed)
        h = random_hermitian(rng, dim)
        psi = random_state(rng, dim)
        v = evolution_speed(h, psi)
        if v < 1e-6:
            return
        gamma = DEFAULT_CONSTANTS.gamma
        dts = [0.05 * gamma / v * 10.0**-k for k in range(4)]
        rates = [fubini_study_distance(psi, evolve(h, psi, dt)) / dt for dt in dts]
        # second-order Richardson from the two smallest dt values
        extrapolated = (100.0 * rates[3] - rates[2]) / 99.0
        assert abs(rates[3] / v - 1.0) <= 1e-3
        assert abs(extrapolated / v - 1.0) <= 1e-3
