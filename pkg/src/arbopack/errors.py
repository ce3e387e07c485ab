"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class ResourceError(RuntimeError):
    """An enumeration or search cap was exceeded (CLI exit code 3)."""


class InconsistencyError(AssertionError):
    """Two independent routes disagreed; indicates a bug, never expected."""
