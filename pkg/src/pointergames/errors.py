"""Exception types shared across the package.

The CLI maps these onto exit codes: validation failures exit 2, cap
violations exit 3.
"""


class PointergamesError(Exception):
    """Base class for all package errors."""


class ValidationError(PointergamesError):
    """An input violates a documented invariant.

    Messages name the violated invariant and, for data loaded from JSON,
    the path of the offending element (e.g. ``sets[1][0].matrix``).
    """


class DimensionCapError(PointergamesError):
    """A requested Hilbert-space dimension exceeds the configured cap."""


class EnumerationCapError(PointergamesError):
    """A requested enumeration exceeds the configured cap."""
