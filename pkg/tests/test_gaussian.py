"""Core state engine: constructors, gates, and structural invariants."""

import numpy as np
import pytest
from conftest import apply_all, random_ops

from ecloner import (
    GaussianState,
    SymplecticOp,
    UncertaintyViolation,
    append_vacuum,
    apply,
    beamsplitter,
    discard_modes,
    displace,
    epr_source,
    phase_rotation,
    squeeze_gate,
    squeezed_vacuum,
    symplectic_eigenvalues,
    symplectic_form,
    vacuum,
)


def test_vacuum_is_pure_with_unit_variance():
    state = vacuum(1)
    assert np.array_equal(state.mean, np.zeros(2))
    assert np.array_equal(state.cov, np.eye(2))
    assert state.is_pure()


def test_vacuum_two_modes_identity_cov():
    assert np.array_equal(vacuum(2).cov, np.eye(4))


def test_vacuum_symplectic_spectrum_is_unity():
    assert np.allclose(vacuum(3).symplectic_eigenvalues(), [1.0, 1.0, 1.0], atol=1e-12)


def test_vacuum_rejects_zero_modes():
    with pytest.raises(ValueError):
        vacuum(0)


def test_squeezed_vacuum_is_pure_when_product_is_one():
    state = squeezed_vacuum(0.5, 2.0)
    assert np.array_equal(state.cov, np.diag([0.5, 2.0]))
    assert state.is_pure()


def test_squeezed_vacuum_without_squeezing_is_vacuum():
    assert np.array_equal(squeezed_vacuum(1, 1).cov, vacuum(1).cov)


def test_squeezed_vacuum_rejects_uncertainty_violation():
    with pytest.raises(UncertaintyViolation):
        squeezed_vacuum(0.5, 1.0)


@pytest.mark.parametrize("v_plus, v_minus", [(0.0, 1.0), (-1.0, 2.0), (1.0, -0.5)])
def test_squeezed_vacuum_rejects_nonpositive_variance(v_plus, v_minus):
    with pytest.raises(ValueError):
        squeezed_vacuum(v_plus, v_minus)


def test_balanced_beamsplitter_forms_sum_and_difference():
    # Read the action off the means of displaced vacua.
    state = displace(vacuum(2), (3.0, 0.0, 1.0, 0.0))
    out = apply(beamsplitter(0.5, (0, 1)), state)
    root2 = np.sqrt(2.0)
    assert np.allclose(out.mean, [4.0 / root2, 0.0, 2.0 / root2, 0.0], atol=1e-12)


def test_fully_transmissive_beamsplitter_flips_second_mode():
    op = beamsplitter(1.0, (0, 1))
    assert np.allclose(op.matrix, np.diag([1.0, 1.0, -1.0, -1.0]), atol=1e-15)
    out = apply(op, vacuum(2))
    assert np.allclose(out.cov, np.eye(4), atol=1e-15)


def test_beamsplitter_is_symplectic():
    op = beamsplitter(0.3, (0, 1))
    omega = symplectic_form(2)
    assert np.max(np.abs(op.matrix.T @ omega @ op.matrix - omega)) < 1e-12


@pytest.mark.parametrize("t", [-0.1, 1.1])
def test_beamsplitter_rejects_bad_transmittance(t):
    with pytest.raises(ValueError):
        beamsplitter(t, (0, 1))


def test_beamsplitter_rejects_duplicate_modes():
    with pytest.raises(ValueError):
        beamsplitter(0.5, (1, 1))


def test_squeeze_gate_unsqueezes_to_vacuum():
    v_s = 0.4
    state = squeezed_vacuum(v_s, 1.0 / v_s)
    out = apply(squeeze_gate(1.0 / np.sqrt(v_s), 0), state)
    assert np.allclose(out.cov, np.eye(2), atol=1e-12)


def test_squeeze_gate_identity_and_inverse_pair():
    assert np.array_equal(squeeze_gate(1.0, 0).matrix, np.eye(2))
    state = squeezed_vacuum(0.7, 1.0 / 0.7)
    round_trip = apply(squeeze_gate(0.5, 0), apply(squeeze_gate(2.0, 0), state))
    assert np.allclose(round_trip.cov, state.cov, atol=1e-12)


def test_squeeze_gate_rejects_nonpositive_factor():
    with pytest.raises(ValueError):
        squeeze_gate(0.0, 0)


def test_phase_rotation_by_half_pi_swaps_quadratures():
    out = apply(phase_rotation(np.pi / 2, 0), squeezed_vacuum(0.25, 4.0))
    assert np.allclose(out.cov, np.diag([4.0, 0.25]), atol=1e-12)


def test_apply_identity_leaves_state_unchanged():
    state = epr_source(0.5)
    out = apply(SymplecticOp(np.eye(4), (0, 1)), state)
    assert np.array_equal(out.cov, state.cov)
    assert np.array_equal(out.mean, state.mean)


def test_apply_builds_epr_arm_variance():
    # Balanced beamsplitter on orthogonally squeezed inputs.
    v_s = 0.3
    state = vacuum(2)
    state = apply(squeeze_gate(np.sqrt(v_s), 0), state)
    state = apply(squeeze_gate(1.0 / np.sqrt(v_s), 1), state)
    out = apply(beamsplitter(0.5, (0, 1)), state)
    arm = 0.5 * (v_s + 1.0 / v_s)
    assert out.cov[0, 0] == pytest.approx(arm, abs=1e-12)
    assert out.cov[1, 1] == pytest.approx(arm, abs=1e-12)
    assert np.allclose(out.cov, epr_source(v_s).cov, atol=1e-12)


def test_random_symplectic_preserves_purity_of_vacuum():
    rng = np.random.default_rng(11)
    for _ in range(50):
        state = apply_all(random_ops(rng, 3), vacuum(3))
        # numerical check through the |i Omega cov| spectrum
        eigs = np.abs(np.linalg.eigvals(1j * symplectic_form(3) @ state.cov))
        assert np.allclose(np.sort(eigs)[::2], 1.0, atol=1e-9)
        assert state.is_pure()


def test_apply_rejects_out_of_range_mode():
    with pytest.raises(ValueError):
        apply(beamsplitter(0.5, (0, 2)), vacuum(2))


def test_displace_shifts_mean_only():
    out = displace(vacuum(1), (2.0, -3.0))
    assert np.array_equal(out.mean, [2.0, -3.0])
    assert np.array_equal(out.cov, np.eye(2))


def test_displace_never_touches_second_moments():
    rng = np.random.default_rng(5)
    state = epr_source(0.25)
    for _ in range(20):
        shifted = displace(state, rng.normal(size=4))
        assert np.array_equal(shifted.cov, state.cov)


def test_displace_rejects_wrong_length():
    with pytest.raises(ValueError):
        displace(vacuum(2), (1.0, 2.0))


def test_append_vacuum_matches_larger_vacuum():
    out = append_vacuum(vacuum(1), 1)
    assert np.array_equal(out.cov, vacuum(2).cov)
    assert np.array_equal(out.mean, vacuum(2).mean)


def test_append_vacuum_edge_counts():
    state = epr_source(0.5)
    assert append_vacuum(state, 0) is state
    with pytest.raises(ValueError):
        append_vacuum(state, -1)


def test_discard_one_epr_arm_leaves_thermal_mode():
    out = discard_modes(epr_source(0.5), [1])
    assert np.allclose(out.cov, np.diag([1.25, 1.25]), atol=1e-12)
    assert out.num_modes == 1


def test_discard_then_append_commutes_on_disjoint_indices():
    state = displace(epr_source(0.6), (0.3, -0.1, 0.7, 0.2))
    a = append_vacuum(discard_modes(state, [1]), 1)
    b = discard_modes(append_vacuum(state, 1), [1])
    assert np.allclose(a.cov, b.cov, atol=1e-14)
    assert np.allclose(a.mean, b.mean, atol=1e-14)


def test_discard_rejects_bad_indices():
    state = vacuum(2)
    with pytest.raises(ValueError):
        discard_modes(state, [2])
    with pytest.raises(ValueError):
        discard_modes(state, [0, 0])
    with pytest.raises(ValueError):
        discard_modes(state, [0, 1])


def test_state_validation_rejects_asymmetric_cov():
    cov = np.eye(2)
    cov[0, 1] = 1e-6
    with pytest.raises(ValueError):
        GaussianState(np.zeros(2), cov)


def test_state_validation_rejects_uncertainty_violation():
    with pytest.raises(UncertaintyViolation):
        GaussianState(np.zeros(2), 0.5 * np.eye(2))


def test_symplectic_op_rejects_non_symplectic_matrix():
    with pytest.raises(ValueError):
        SymplecticOp(2.0 * np.eye(2), (0,))


def test_symplecticity_of_builtin_ops_over_randomized_draws():
    rng = np.random.default_rng(42)
    omega2 = symplectic_form(2)
    omega1 = symplectic_form(1)
    for _ in range(1000):
        bs = beamsplitter(rng.uniform(), (0, 1)).matrix
        assert np.max(np.abs(bs.T @ omega2 @ bs - omega2)) < 1e-12
        sq = squeeze_gate(float(np.exp(rng.uniform(-2, 2))), 0).matrix
        assert np.max(np.abs(sq.T @ omega1 @ sq - omega1)) < 1e-12
        rot = phase_rotation(float(rng.uniform(0, 2 * np.pi)), 0).matrix
        assert np.max(np.abs(rot.T @ omega1 @ rot - omega1)) < 1e-12


def test_uncertainty_preserved_under_long_op_chains():
    rng = np.random.default_rng(99)
    for _ in range(30):
        v_plus = float(rng.uniform(0.2, 1.0))
        thermal_factor = float(rng.uniform(1.0, 3.0))
        state = squeezed_vacuum(v_plus, thermal_factor / v_plus)
        state = append_vacuum(state, 2)
        state = apply_all(random_ops(rng, 3, depth=10), state)
        state = discard_modes(state, [int(rng.integers(3))])
        assert symplectic_eigenvalues(state.cov).min() >= 1.0 - 1e-9


def test_purity_conserved_under_symplectics():
    rng = np.random.default_rng(7)
    for _ in range(30):
        state = apply_all(random_ops(rng, 2, depth=8), epr_source(0.4))
        assert state.is_pure()
        assert np.linalg.det(state.cov) == pytest.approx(1.0, rel=1e-9)


def test_states_are_immutable():
    state = vacuum(1)
    with pytest.raises(ValueError):
        state.cov[0, 0] = 5.0
