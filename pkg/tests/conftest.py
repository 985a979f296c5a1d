"""Shared helpers for building randomized circuits in the tests."""

import numpy as np

from ecloner import apply, beamsplitter, phase_rotation, squeeze_gate


def random_ops(rng, num_modes, depth=6):
    """A random sequence of beamsplitter / squeezer / rotation gates."""
    ops = []
    for _ in range(depth):
        kind = rng.integers(3)
        if kind == 0 and num_modes >= 2:
            i, j = rng.choice(num_modes, size=2, replace=False)
            ops.append(beamsplitter(rng.uniform(), (int(i), int(j))))
        elif kind == 1:
            ops.append(squeeze_gate(float(np.exp(rng.uniform(-0.8, 0.8))), int(rng.integers(num_modes))))
        else:
            ops.append(phase_rotation(float(rng.uniform(0, 2 * np.pi)), int(rng.integers(num_modes))))
    return ops


def apply_all(ops, state):
    for op in ops:
        state = apply(op, state)
    return state
