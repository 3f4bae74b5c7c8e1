"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid simulation or algorithm parameters."""


class ConsistencyError(RuntimeError):
    """Inputs that disagree with each other, e.g. a beacon from an unknown device."""


class InvariantViolation(RuntimeError):
    """A structural invariant failed during a simulation run."""
