"""Closed-form hyperbolic trigonometry.

Traces are exact Python integers; lengths are floats. The cusp model used
throughout is the cylinder ``C = H^2 / (z -> z + 1)``: the horocycle at
height ``h`` has length ``1/h``, so the neighborhood of boundary length
``ell`` is ``{Im z >= 1/ell}`` and has area ``ell``.
"""

from __future__ import annotations

import math

from .errors import NonHyperbolicError, ToolkitError

# relative tolerance for real-valued identities
REL_TOL = 1e-9

# above this, |t|/2 is not safely representable as a float
_BIG_TRACE = 1 << 1000


def trace_to_length(t: int) -> float:
    """Length ``2 arccosh(|t|/2)`` of the closed geodesic of a hyperbolic element.

    >>> round(trace_to_length(3), 6)
    1.924847
    """
    t = abs(int(t))
    if t <= 2:
        raise NonHyperbolicError(f"non-hyperbolic trace {t}: |t| must be >= 3")
    if t < _BIG_TRACE:
        return 2.0 * math.acosh(t / 2)
    # arccosh(t/2) = ln t + ln((1 + sqrt(1 - 4/t^2))/2) and the second term is
    # below float resolution here
    return 2.0 * math.log(t)


def length_to_trace_bound(length: float) -> float:
    """Inverse of :func:`trace_to_length`: ``2 cosh(L/2)``."""
    if not length > 0:
        raise ToolkitError(f"length must be positive, got {length}")
    return 2.0 * math.cosh(length / 2)


def collar_lower_bound() -> float:
    """``2 arcsinh(1) = 2 ln(1 + sqrt 2)``, a floor for the maximal systole."""
    return 2.0 * math.asinh(1.0)


def loop_to_horoball_distance(length: float, ell: float) -> float:
    """Signed distance from the base point of a cusp-encircling loop to a horoball.

    A loop of length ``L`` based at ``x + iy`` in ``C`` goes once around the
    cusp, so ``sinh(L/2) = 1/(2y)``. The horoball of boundary length ``ell``
    sits at height ``1/ell``, hence ``d = ln(2 sinh(L/2) / ell)``. The value
    is negative when the base point lies inside the horoball.
    """
    if not (length > 0 and ell > 0):
        raise ToolkitError("loop length and horocycle length must be positive")
    return math.log(2.0 * math.sinh(length / 2) / ell)


def horoball_area(ell: float) -> float:
    """Area of ``{Im z >= 1/ell}`` in ``C``; equals ``ell``."""
    if not ell > 0:
        raise ToolkitError(f"horocycle length must be positive, got {ell}")
    return float(ell)


def leq(lhs: float, rhs: float, rel_tol: float = REL_TOL) -> bool:
    """``lhs <= rhs`` up to a relative slack (absolute near zero)."""
    return lhs <= rhs + rel_tol * max(1.0, abs(lhs), abs(rhs))
