import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqgames.quantum_core import (
    OUTCOMES,
    BlochVector,
    Strength,
    ZeroProbabilityOutcome,
    completeness_defect,
    kraus,
    max_norm_diff,
    measurement_op,
    post_measurement_state,
    projector,
    weight,
)
from bqgames.states import bell_state, custom_state

ANGLES = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
FINITE_Y = st.floats(min_value=0.0, max_value=20.0, allow_nan=False)


def pauli_matrices():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return sx, sy, sz


class TestBlochVector:
    def test_canonical_ranges(self):
        d = BlochVector(-0.5, -1.0)
        assert 0.0 <= d.theta <= math.pi
        assert 0.0 <= d.phi < 2.0 * math.pi

    @given(theta=ANGLES, phi=ANGLES)
    def test_canonicalization_preserves_direction(self, theta, phi):
        raw = (
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        )
        canon = BlochVector(theta, phi).unit_vector()
        assert max(abs(a - b) for a, b in zip(raw, canon)) < 5e-15

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            BlochVector(math.nan)
        with pytest.raises(ValueError):
            BlochVector(0.0, math.inf)

    def test_equal_directions_compare_equal(self):
        assert BlochVector(0.5 + 2 * math.pi, 0.25) == BlochVector(0.5, 0.25)


class TestStrength:
    def test_tanh_values(self):
        assert Strength.finite(0.0).tanh_value == 0.0
        assert Strength.projective().tanh_value == 1.0
        assert Strength.finite(1.0).tanh_value == pytest.approx(math.tanh(1.0), abs=0)

    def test_rejects_negative_and_infinite(self):
        with pytest.raises(ValueError):
            Strength.finite(-0.1)
        with pytest.raises(ValueError):
            Strength.finite(math.inf)

    @given(y=FINITE_Y)
    def test_weight_normalization(self, y):
        s = Strength.finite(y)
        assert abs(weight(+1, s) ** 2 + weight(-1, s) ** 2 - 1.0) <= 1e-15

    def test_weight_normalization_many_draws(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            s = Strength.projective() if rng.random() < 0.1 else Strength.finite(rng.uniform(0, 8))
            assert abs(weight(+1, s) ** 2 + weight(-1, s) ** 2 - 1.0) <= 1e-15


class TestWeight:
    def test_zero_strength_is_equal_split(self):
        # no measurement: both outcome amplitudes are 1/sqrt(2)
        assert weight(+1, Strength.finite(0.0)) == math.sqrt(0.5)
        assert weight(-1, Strength.finite(0.0)) == math.sqrt(0.5)
        assert weight(+1, Strength.finite(0.0)) == pytest.approx(0.70710678, abs=1e-8)

    def test_projective_limit(self):
        assert weight(+1, Strength.projective()) == 1.0
        assert weight(-1, Strength.projective()) == 0.0

    def test_value_against_scalar_oracle(self):
        # oracle: direct scalar evaluation sqrt((1 + tanh(1/2)) / 2)
        expected = math.sqrt((1.0 + math.tanh(0.5)) / 2.0)
        assert expected == pytest.approx(0.8550196364002437, abs=1e-15)
        assert weight(+1, Strength.finite(0.5)) == pytest.approx(expected, abs=0)

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            weight(0, Strength.finite(1.0))


class TestProjector:
    def test_z_axis(self):
        np.testing.assert_allclose(projector(+1, BlochVector(0.0)), np.diag([1.0, 0.0]), atol=0)
        np.testing.assert_allclose(projector(-1, BlochVector(0.0)), np.diag([0.0, 1.0]), atol=0)

    def test_x_axis(self):
        expected = np.full((2, 2), 0.5)
        np.testing.assert_allclose(projector(+1, BlochVector(math.pi / 2)), expected, atol=1e-16)

    @given(theta=ANGLES, phi=ANGLES)
    @settings(max_examples=200)
    def test_idempotent_hermitian(self, theta, phi):
        for sigma in OUTCOMES:
            p = projector(sigma, BlochVector(theta, phi))
            assert max_norm_diff(p @ p, p) <= 1e-14
            assert max_norm_diff(p, p.conj().T) <= 1e-14

    @given(theta=ANGLES, phi=ANGLES)
    @settings(max_examples=200)
    def test_outcomes_resolve_identity_exactly(self, theta, phi):
        d = BlochVector(theta, phi)
        total = projector(+1, d) + projector(-1, d)
        assert np.array_equal(total, np.eye(2))

    def test_matches_pauli_expansion(self):
        sx, sy, sz = pauli_matrices()
        d = BlochVector(1.1, 2.3)
        nx, ny, nz = d.unit_vector()
        expected = 0.5 * (np.eye(2) + (-1) * (nx * sx + ny * sy + nz * sz))
        np.testing.assert_allclose(projector(-1, d), expected, atol=1e-16)


class TestMeasurementOp:
    def test_zero_strength_is_scaled_identity(self):
        d = BlochVector(0.93, 4.2)
        expected = np.eye(2) / math.sqrt(2)
        for sigma in OUTCOMES:
            np.testing.assert_allclose(measurement_op(sigma, d, Strength.finite(0.0)), expected, atol=1e-16)

    def test_projective_limit_is_projector(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            d = BlochVector(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
            for sigma in OUTCOMES:
                defect = max_norm_diff(
                    measurement_op(sigma, d, Strength.projective()), projector(sigma, d)
                )
                assert defect <= 1e-15

    def test_x_axis_assembly_oracle(self):
        # oracle: assemble from projectors and weights independently
        t = math.tanh(1.0)
        a_plus = math.sqrt((1 + t) / 2)
        a_minus = math.sqrt((1 - t) / 2)
        p_plus = np.full((2, 2), 0.5)
        p_minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
        expected = a_plus * p_plus + a_minus * p_minus
        got = measurement_op(+1, BlochVector(math.pi / 2), Strength.finite(1.0))
        np.testing.assert_allclose(got, expected, atol=1e-15)

    @given(theta=ANGLES, phi=ANGLES, y=FINITE_Y)
    @settings(max_examples=200)
    def test_completeness_single_qubit(self, theta, phi, y):
        d = BlochVector(theta, phi)
        s = Strength.finite(y)
        acc = sum(measurement_op(o, d, s).conj().T @ measurement_op(o, d, s) for o in OUTCOMES)
        assert max_norm_diff(acc, np.eye(2)) <= 1e-13

    def test_hermitian(self):
        m = measurement_op(-1, BlochVector(0.7, 1.9), Strength.finite(0.8))
        assert max_norm_diff(m, m.conj().T) <= 1e-15


class TestKraus:
    def test_zero_strengths_scaled_identity(self):
        k = kraus(
            BlochVector(1.0), BlochVector(2.0), +1, -1,
            Strength.finite(0.0), Strength.finite(0.0), 1.0,
        )
        np.testing.assert_allclose(k, np.eye(4) / 2.0, atol=1e-16)

    def test_zero_prior(self):
        k = kraus(
            BlochVector(1.0), BlochVector(2.0), +1, +1,
            Strength.finite(1.0), Strength.finite(1.0), 0.0,
        )
        assert np.all(k == 0)

    def test_projective_z_tensor_oracle(self):
        # oracle: tensor product of the two z projectors, scaled by sqrt(1/4)
        expected = 0.5 * np.kron(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))
        got = kraus(
            BlochVector(0.0), BlochVector(0.0), +1, +1,
            Strength.projective(), Strength.projective(), 0.25,
        )
        np.testing.assert_allclose(got, expected, atol=0)
        np.testing.assert_allclose(got, 0.5 * np.diag([1.0, 0.0, 0.0, 0.0]), atol=0)

    def test_matches_tensor_product_oracle(self):
        da, db = BlochVector(0.4, 0.0), BlochVector(2.8, 0.0)
        y, z = Strength.finite(0.6), Strength.finite(1.7)
        expected = math.sqrt(0.3) * np.kron(measurement_op(-1, da, y), measurement_op(+1, db, z))
        np.testing.assert_allclose(kraus(da, db, -1, +1, y, z, 0.3), expected, atol=1e-16)

    def test_rejects_bad_prior(self):
        with pytest.raises(ValueError):
            kraus(BlochVector(0.0), BlochVector(0.0), +1, +1,
                  Strength.finite(0.0), Strength.finite(0.0), 1.5)
        with pytest.raises(ValueError):
            kraus(BlochVector(0.0), BlochVector(0.0), +1, +1,
                  Strength.finite(0.0), Strength.finite(0.0), -0.1)


class TestCompleteness:
    def random_inputs(self, rng):
        dirs_a = (BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)),
                  BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)))
        dirs_b = (BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)),
                  BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)))
        y = Strength.projective() if rng.random() < 0.2 else Strength.finite(rng.uniform(0, 5))
        z = Strength.projective() if rng.random() < 0.2 else Strength.finite(rng.uniform(0, 5))
        return dirs_a, dirs_b, y, z

    def test_uniform_prior_many_draws(self):
        rng = np.random.default_rng(11)
        prior = np.full((2, 2), 0.25)
        for _ in range(1000):
            dirs_a, dirs_b, y, z = self.random_inputs(rng)
            assert completeness_defect(dirs_a, dirs_b, y, z, prior) <= 1e-12

    def test_random_priors(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            dirs_a, dirs_b, y, z = self.random_inputs(rng)
            prior = rng.dirichlet(np.ones(4)).reshape(2, 2)
            assert completeness_defect(dirs_a, dirs_b, y, z, prior) <= 1e-12

    def test_zero_strengths(self):
        dirs = (BlochVector(0.3), BlochVector(1.8))
        defect = completeness_defect(
            dirs, dirs, Strength.finite(0.0), Strength.finite(0.0), np.full((2, 2), 0.25)
        )
        assert defect <= 1e-15

    def test_degenerate_prior(self):
        # all prior mass on one direction pair still resolves the identity
        dirs_a = (BlochVector(0.9, 0.2), BlochVector(2.2, 5.0))
        dirs_b = (BlochVector(1.4, 3.3), BlochVector(0.1, 0.0))
        prior = np.array([[1.0, 0.0], [0.0, 0.0]])
        defect = completeness_defect(dirs_a, dirs_b, Strength.finite(0.7), Strength.finite(2.0), prior)
        assert defect <= 1e-12

    def test_rejects_unnormalized_prior(self):
        dirs = (BlochVector(0.0), BlochVector(1.0))
        with pytest.raises(ValueError):
            completeness_defect(
                dirs, dirs, Strength.finite(0.0), Strength.finite(0.0),
                np.array([[0.3, 0.2], [0.2, 0.2]]),
            )


class TestPostMeasurementState:
    def test_eigenstate_fixed_point(self):
        rho00 = np.zeros((4, 4), dtype=complex)
        rho00[0, 0] = 1.0
        state = custom_state(rho00, label="ground")
        k = np.kron(projector(+1, BlochVector(0.0)), projector(+1, BlochVector(0.0)))
        post = post_measurement_state(state, k)
        np.testing.assert_allclose(post.rho, rho00, atol=1e-16)

    def test_impossible_outcome_raises(self):
        rho00 = np.zeros((4, 4), dtype=complex)
        rho00[0, 0] = 1.0
        state = custom_state(rho00)
        k = np.kron(projector(-1, BlochVector(0.0)), np.eye(2))
        with pytest.raises(ZeroProbabilityOutcome):
            post_measurement_state(state, k)

    def test_partial_measurement_on_bell_matrix_oracle(self):
        # oracle: explicit 4x4 products on the Bell density matrix
        y = Strength.finite(0.3)
        m = measurement_op(+1, BlochVector(0.0), y)
        k = np.kron(m, np.eye(2))
        rho = bell_state().rho
        expected = k @ rho @ k.conj().T
        expected /= np.trace(expected).real
        post = post_measurement_state(bell_state(), k)
        np.testing.assert_allclose(post.rho, expected, atol=1e-15)
        assert post.rho[0, 0].real == pytest.approx((1 + math.tanh(0.3)) / 2, abs=1e-15)

    def test_output_is_valid_state(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            k = kraus(
                BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)),
                BlochVector(rng.uniform(0, 7), rng.uniform(0, 7)),
                (+1, -1)[rng.integers(0, 2)],
                (+1, -1)[rng.integers(0, 2)],
                Strength.finite(rng.uniform(0, 4)),
                Strength.finite(rng.uniform(0, 4)),
                1.0,
            )
            try:
                post = post_measurement_state(bell_state(), k)
            except ZeroProbabilityOutcome:
                continue
            assert abs(np.trace(post.rho).real - 1.0) <= 1e-12
            assert post.min_eigenvalue() >= -1e-10
