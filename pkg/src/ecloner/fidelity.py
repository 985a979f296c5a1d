"""Overlap fidelity between a pure Gaussian reference and a mixed state.

For covariance matrices A (pure reference) and B (candidate) in the
vacuum-variance-1 convention, with mean difference d over n modes,

    F = 2^n * det(A + B)^(-1/2) * exp(-1/2 * d^T (A + B)^(-1) d)

reproduces <psi| rho |psi>.  The normalization is pinned by two independent
checks in the test suite: the coherent-state overlap exp(-|alpha - beta|^2)
and a brute-force number-basis overlap for single-mode states.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateInputError

VALUE_TOL = 1e-12


@dataclass(frozen=True)
class FidelityResult:
    """Fidelity value in [0, 1] plus determinant diagnostics."""

    value: float
    reference_cov_det: float
    joint_det: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0 + VALUE_TOL:
            raise RuntimeError(f"fidelity {self.value} escaped [0, 1]")


def pure_mixed_fidelity(reference, candidate, mode_map=None):
    """Overlap of a pure reference state with an arbitrary Gaussian state.

    Parameters
    ----------
    reference : GaussianState
        Must be pure (all symplectic eigenvalues 1).
    candidate : GaussianState
        Same number of modes as the reference.
    mode_map : sequence of int, optional
        ``mode_map[i]`` is the candidate mode compared against reference
        mode i; defaults to the identity pairing.

    Returns
    -------
    FidelityResult
    """
    if not reference.is_pure():
        raise ValueError("reference state must be pure")
    n = reference.num_modes
    if candidate.num_modes != n:
        raise ValueError(
            f"mode counts differ: reference {n}, candidate {candidate.num_modes}"
        )
    if mode_map is None:
        mode_map = range(n)
    order = [int(m) for m in mode_map]
    if sorted(order) != list(range(n)):
        raise ValueError(f"mode_map must be a permutation of 0..{n - 1}, got {order}")
    q = np.concatenate([(2 * m, 2 * m + 1) for m in order])

    a = reference.cov
    b = candidate.cov[np.ix_(q, q)]
    delta = candidate.mean[q] - reference.mean
    joint = a + b
    det_joint = np.linalg.det(joint)
    if det_joint <= 0 or not np.isfinite(det_joint):
        raise DegenerateInputError(f"A + B is singular (det {det_joint})")
    value = 2.0**n / math.sqrt(det_joint) * math.exp(-0.5 * delta @ np.linalg.solve(joint, delta))
    return FidelityResult(
        value=float(value),
        reference_cov_det=float(np.linalg.det(a)),
        joint_det=float(det_joint),
    )


def local_fidelity(v_s):
    """Closed-form clone fidelity of the arm-by-arm machine: 4v/((v+2)(2v+1)).

    Increases from 0 (infinite squeezing) to 4/9 at v_s = 1, where the
    machine coincides with the global one.
    """
    v_s = float(v_s)
    if not 0.0 < v_s <= 1.0:
        raise ValueError(f"squeezing variance must lie in (0, 1], got {v_s}")
    return 4.0 * v_s / ((v_s + 2.0) * (2.0 * v_s + 1.0))


def global_fidelity(v_s):
    """Clone fidelity of the whole-state machine: 4/9 for every v_s."""
    v_s = float(v_s)
    if not 0.0 < v_s <= 1.0:
        raise ValueError(f"squeezing variance must lie in (0, 1], got {v_s}")
    return 4.0 / 9.0
