"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so keep the split:
bad input vs. "too big, refused" vs. "the library itself is inconsistent".
"""


class GraphMahlerError(Exception):
    """Base class for all package errors."""


class InputError(GraphMahlerError):
    """Malformed or invalid user input (parse errors, bad dimensions, ...)."""


class SizeRefusalError(GraphMahlerError):
    """An exhaustive computation was refused because its input is too large."""


class InternalInconsistencyError(GraphMahlerError):
    """An internal cross-check failed; indicates a bug, not a user error."""
