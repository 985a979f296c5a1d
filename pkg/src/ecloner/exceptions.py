"""Exception types shared across the package."""


class UncertaintyViolation(ValueError):
    """A covariance matrix breaks the Heisenberg uncertainty bound."""


class DegenerateInputError(ValueError):
    """An input is singular where the requested quantity needs it invertible."""
