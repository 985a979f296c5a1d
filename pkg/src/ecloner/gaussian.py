"""First- and second-moment representation of n-mode Gaussian states.

Quadratures are ordered (x1, p1, ..., xn, pn) and normalized so that the
vacuum has unit variance in both quadratures ([x, p] = 2i).  A state is a
mean vector plus a covariance matrix; lossless linear optics (beamsplitters,
squeezers, phase rotations) act as symplectic matrices S via

    mean -> S @ mean,    cov -> S @ cov @ S.T

Everything here is an immutable value; all operations are pure functions.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import UncertaintyViolation

# Tolerances: algebraic identities get double-precision headroom, spectral
# checks (eigenvalue-based) a little more slack for matrix chains.
SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-12
SPECTRAL_TOL = 1e-9


def symplectic_form(num_modes):
    """The commutation matrix: block diagonal with 2x2 blocks [[0, 1], [-1, 0]]."""
    omega = np.zeros((2 * num_modes, 2 * num_modes))
    for k in range(num_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def symplectic_eigenvalues(cov):
    """Symplectic spectrum of a covariance matrix, sorted ascending.

    The values are the moduli of the eigenvalues of i*Omega@cov, which come
    in degenerate pairs; one representative per mode is returned.  A matrix
    describes a physical state iff every value is >= 1; it is pure iff every
    value equals 1.

    For positive-definite input with Cholesky factor L the same spectrum is
    obtained from the Hermitian matrix i L^T Omega L, which the symmetric
    eigensolver handles backward-stably even for strong squeezing, where the
    non-normal i*Omega@cov eigenproblem loses many digits.
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    omega = symplectic_form(n)
    try:
        chol = np.linalg.cholesky(cov)
        eigs = np.linalg.eigvalsh(1j * chol.T @ omega @ chol)
    except np.linalg.LinAlgError:
        # not positive definite; accuracy does not matter for rejects
        eigs = np.linalg.eigvals(1j * omega @ cov)
    return np.sort(np.abs(eigs))[::2]


@dataclass(frozen=True)
class GaussianState:
    """An n-mode Gaussian state: mean vector (2n,) and covariance (2n, 2n).

    Construction validates symmetry of the covariance and the uncertainty
    bound (all symplectic eigenvalues >= 1 within SPECTRAL_TOL).  The arrays
    are copied and frozen, so states are safe to share between threads.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size == 0 or mean.size % 2 != 0:
            raise ValueError(f"mean must be a flat vector of even length, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"cov shape {cov.shape} does not match mean length {mean.size}")
        asym = np.max(np.abs(cov - cov.T))
        if asym > SYMMETRY_TOL:
            raise ValueError(f"covariance matrix is not symmetric (max asymmetry {asym:.3e})")
        nu_min = symplectic_eigenvalues(cov).min()
        if nu_min < 1.0 - SPECTRAL_TOL:
            raise UncertaintyViolation(
                f"covariance violates the uncertainty bound: min symplectic eigenvalue {nu_min}"
            )
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def num_modes(self):
        return self.mean.size // 2

    def symplectic_eigenvalues(self):
        return symplectic_eigenvalues(self.cov)

    def is_pure(self, tol=SPECTRAL_TOL):
        """True when every symplectic eigenvalue equals 1 within tol."""
        return bool(np.max(np.abs(self.symplectic_eigenvalues() - 1.0)) <= tol)

    def mode_block(self, mode):
        """The 2x2 (x, p) covariance block of a single mode."""
        i = 2 * mode
        return self.cov[i : i + 2, i : i + 2]


@dataclass(frozen=True)
class SymplecticOp:
    """A linear phase-space map acting on an ordered subset of modes.

    ``matrix`` is 2m x 2m in the local (x1, p1, ..., xm, pm) ordering of the
    targeted modes; ``mode_indices`` lists which modes of a larger state the
    rows/columns refer to.  Symplecticity S.T @ Omega @ S = Omega is enforced
    at construction.
    """

    matrix: np.ndarray
    mode_indices: tuple

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        modes = tuple(int(m) for m in np.atleast_1d(self.mode_indices))
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2 != 0:
            raise ValueError(f"matrix must be square with even size, got {matrix.shape}")
        if len(modes) != matrix.shape[0] // 2:
            raise ValueError("mode_indices length does not match matrix size")
        if len(set(modes)) != len(modes):
            raise ValueError(f"mode indices must be distinct, got {modes}")
        if any(m < 0 for m in modes):
            raise ValueError(f"mode indices must be nonnegative, got {modes}")
        omega = symplectic_form(len(modes))
        defect = np.max(np.abs(matrix.T @ omega @ matrix - omega))
        if defect > SYMPLECTIC_TOL:
            raise ValueError(f"matrix is not symplectic (defect {defect:.3e})")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "mode_indices", modes)

    def expand(self, num_modes):
        """Embed into the full 2n x 2n space, identity on untouched modes."""
        if max(self.mode_indices) >= num_modes:
            raise ValueError(
                f"op targets mode {max(self.mode_indices)} but state has {num_modes} modes"
            )
        idx = np.concatenate([(2 * m, 2 * m + 1) for m in self.mode_indices])
        full = np.eye(2 * num_modes)
        full[np.ix_(idx, idx)] = self.matrix
        return full

    def apply(self, state):
        """Convenience wrapper for :func:`apply`."""
        return apply(self, state)


def vacuum(n):
    """The n-mode vacuum: zero mean, identity covariance (a pure state)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"need at least one mode, got {n}")
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def squeezed_vacuum(v_plus, v_minus):
    """Single-mode state with cov diag(v_plus, v_minus) and zero mean.

    Pure when v_plus * v_minus == 1 (e.g. squeezed vacuum with v_plus < 1),
    mixed when the product exceeds 1.  A product below 1 is unphysical.
    """
    if v_plus <= 0 or v_minus <= 0:
        raise ValueError(f"variances must be positive, got ({v_plus}, {v_minus})")
    if v_plus * v_minus < 1.0 - SPECTRAL_TOL:
        raise UncertaintyViolation(
            f"variance product {v_plus * v_minus} below the uncertainty bound 1"
        )
    return GaussianState(np.zeros(2), np.diag([float(v_plus), float(v_minus)]))


def beamsplitter(transmittance, modes):
    """Lossless beamsplitter of given intensity transmittance on a mode pair.

    Sign convention (identical for x and p):

        out1 = sqrt(t) * in1 + sqrt(1-t) * in2
        out2 = sqrt(1-t) * in1 - sqrt(t) * in2

    so the balanced case t = 1/2 sends the sum to output 1 and the
    difference to output 2, and the gate is its own inverse.
    """
    t = float(transmittance)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {t}")
    a, b = np.sqrt(t), np.sqrt(1.0 - t)
    eye = np.eye(2)
    matrix = np.block([[a * eye, b * eye], [b * eye, -a * eye]])
    return SymplecticOp(matrix, tuple(modes))


def squeeze_gate(s_plus, mode):
    """In-line squeezer diag(s_plus, 1/s_plus) on one mode's (x, p) block.

    Scales x by s_plus and p by 1/s_plus; squeeze_gate(1/s) undoes
    squeeze_gate(s).
    """
    s = float(s_plus)
    if s <= 0:
        raise ValueError(f"squeeze factor must be positive, got {s}")
    return SymplecticOp(np.diag([s, 1.0 / s]), (mode,))


def phase_rotation(theta, mode):
    """Phase-space rotation by theta on one mode; pi/2 swaps x and p."""
    c, s = np.cos(theta), np.sin(theta)
    return SymplecticOp(np.array([[c, s], [-s, c]]), (mode,))


def apply(op, state):
    """Apply a symplectic op to a state, returning the transformed state."""
    n = state.num_modes
    full = op.expand(n)
    mean = full @ state.mean
    cov = full @ state.cov @ full.T
    return GaussianState(mean, 0.5 * (cov + cov.T))


def displace(state, delta):
    """Shift the mean by delta (length 2n); second moments are untouched."""
    delta = np.asarray(delta, dtype=float)
    if delta.shape != state.mean.shape:
        raise ValueError(f"displacement length {delta.size} != {state.mean.size}")
    return GaussianState(state.mean + delta, state.cov)


def append_vacuum(state, k):
    """Tensor k fresh vacuum modes onto the end of the mode list."""
    k = int(k)
    if k < 0:
        raise ValueError(f"cannot append {k} modes")
    if k == 0:
        return state
    n_old, n_new = 2 * state.num_modes, 2 * (state.num_modes + k)
    mean = np.zeros(n_new)
    mean[:n_old] = state.mean
    cov = np.eye(n_new)
    cov[:n_old, :n_old] = state.cov
    return GaussianState(mean, cov)


def discard_modes(state, indices):
    """Drop the listed modes (Gaussian partial trace over them)."""
    indices = [int(i) for i in np.atleast_1d(indices)]
    n = state.num_modes
    if len(set(indices)) != len(indices):
        raise ValueError(f"duplicate mode indices: {indices}")
    if any(i < 0 or i >= n for i in indices):
        raise ValueError(f"mode indices {indices} out of range for {n} modes")
    if len(indices) == n:
        raise ValueError("cannot discard every mode")
    rows = np.concatenate([(2 * i, 2 * i + 1) for i in indices])
    return GaussianState(
        np.delete(state.mean, rows),
        np.delete(np.delete(state.cov, rows, axis=0), rows, axis=1),
    )
