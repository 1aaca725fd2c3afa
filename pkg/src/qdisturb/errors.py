"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or mismatched input (dimensions, indices, parameters)."""


class PreconditionError(ValueError):
    """A numerical precondition (Hermiticity, positivity, ...) does not hold."""
