"""Correlation matrix of a mode pair and two-mode entanglement criteria.

Both criteria consume the 4x4 second-moment matrix of the pair, never the
state itself, so analytically propagated and sampled matrices run through
identical code.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateInputError

_QUAD = {"+": 0, "-": 1}
_MODE = {"x": 0, "y": 1}


@dataclass(frozen=True)
class CorrelationMatrix:
    """Mean-subtracted symmetrized second moments of a mode pair.

    ``matrix`` is 4x4 in the ordering (x mode x-quad, x mode p-quad,
    y mode x-quad, y mode p-quad); entry lookup by quadrature labels
    {+, -} and mode labels {x, y} goes through :meth:`entry`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.shape != (4, 4):
            raise ValueError(f"correlation matrix must be 4x4, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.T)) > 1e-10:
            raise ValueError("correlation matrix must be symmetric")
        if np.any(np.diag(matrix) < 0):
            raise ValueError("diagonal entries are variances and cannot be negative")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    def entry(self, k, l, m, n):
        """C^{kl}_{mn} with k, l in {+, -} and m, n in {x, y}."""
        return self.matrix[2 * _MODE[m] + _QUAD[k], 2 * _MODE[n] + _QUAD[l]]


def correlation_matrix_from_cov(cov, pair):
    """Build the pair's correlation matrix from a full covariance matrix."""
    cov = np.asarray(cov, dtype=float)
    i, j = (int(m) for m in pair)
    n = cov.shape[0] // 2
    if i == j:
        raise ValueError(f"mode pair must be distinct, got ({i}, {j})")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"pair ({i}, {j}) out of range for {n} modes")
    rows = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
    block = cov[np.ix_(rows, rows)]
    return CorrelationMatrix(0.5 * (block + block.T))


def correlation_matrix(state, pair):
    """Correlation matrix of two modes of a Gaussian state.

    The covariance matrix already holds the symmetrized second moments with
    mean products subtracted, so the entries are direct reads; the result is
    invariant under displacements by construction.
    """
    return correlation_matrix_from_cov(state.cov, pair)


def inseparability(cm):
    """Product-form inseparability test; values below 1 certify entanglement.

    Returns (1/2) * sqrt(C+ * C-) with
    C(+/-) = C_xx + C_yy - 2|C_xy| per quadrature.  A pure two-mode squeezed
    state built from squeezing variance v gives exactly v; a two-mode vacuum
    gives 1.
    """
    c = []
    for k in ("+", "-"):
        value = (
            cm.entry(k, k, "x", "x")
            + cm.entry(k, k, "y", "y")
            - 2.0 * abs(cm.entry(k, k, "x", "y"))
        )
        if value < 0:
            # Impossible for a positive-semidefinite second-moment matrix.
            raise RuntimeError(f"negative correlation combination {value} for quadrature {k}")
        c.append(value)
    return 0.5 * math.sqrt(c[0] * c[1])


def _conditional_variance_product(cm, target, conditioner):
    product = 1.0
    for k in ("+", "-"):
        v_cond = cm.entry(k, k, conditioner, conditioner)
        if v_cond <= 0:
            raise DegenerateInputError(
                f"conditioning variance C^{k}{k}_{conditioner}{conditioner} is not positive"
            )
        cross = cm.entry(k, k, target, conditioner)
        product *= cm.entry(k, k, target, target) - abs(cross) ** 2 / v_cond
    return product


def epr_paradox(cm, symmetrized=False):
    """Product of conditional variances; values below 1 certify EPR steering.

    The directed form conditions mode x on mode y:

        eps = (C++_xx - |C++_xy|^2 / C++_yy) * (C--_xx - |C--_xy|^2 / C--_yy)

    With ``symmetrized=True`` the minimum over both conditioning directions
    is returned instead; for the symmetric states produced here the two
    directions coincide.
    """
    eps = _conditional_variance_product(cm, "x", "y")
    if symmetrized:
        eps = min(eps, _conditional_variance_product(cm, "y", "x"))
    return eps


def squeezing_db(v_s):
    """Squeezing strength in dB: -10*log10(v_s); 3 dB is v_s = 1/2."""
    if v_s <= 0:
        raise ValueError(f"squeezing variance must be positive, got {v_s}")
    return -10.0 * math.log10(v_s) + 0.0  # +0.0 turns -0.0 into 0.0
