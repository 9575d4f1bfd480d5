"""Exception types raised by the toolkit.

Every error derives from :class:`ToolkitError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one class.
"""


class ToolkitError(ValueError):
    pass


class NonHyperbolicError(ToolkitError):
    """Trace with |t| <= 2: parabolic or elliptic, no geodesic length."""


class BoundInapplicableError(ToolkitError):
    pass


class DegenerateGenusError(ToolkitError):
    pass


class OracleCapError(ToolkitError):
    pass


class SearchCapError(ToolkitError):
    pass


class InconsistentIndexError(ToolkitError):
    """A division that must be exact was not; indicates an oracle bug."""
