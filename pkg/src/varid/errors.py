"""Exception types shared across the package."""


class DataError(ValueError):
    """Invalid input: malformed files, unknown labels, degenerate corpora."""


class ModelFormatError(DataError):
    """A model file failed to parse or violates a format invariant."""


class InternalError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""
