"""Signatures (g, n) of the congruence surfaces H^2 / Gamma(k).

Two independent routes:

* closed forms for odd primes, ``n = (p^2-1)/2`` and
  ``g = 1 + (p^2-1)(p-6)/24``;
* a brute-force count of ``|SL(2, Z/kZ)|`` over all ``k^4`` residue
  matrices, from which the index, cusp count and genus follow.

All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateGenusError, InconsistentIndexError, OracleCapError, ToolkitError

ORACLE_CAP = 64


@dataclass(frozen=True)
class Signature:
    genus: int
    cusps: int

    def __post_init__(self):
        if self.genus < 0 or self.cusps < 0 or 2 * self.genus - 2 + self.cusps <= 0:
            raise ToolkitError(f"not a hyperbolic signature: {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int]:
        return (self.genus, self.cusps)

    @property
    def euler_magnitude(self) -> int:
        """``2g - 2 + n``; the area is ``2 pi`` times this."""
        return 2 * self.genus - 2 + self.cusps


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_level(k: int) -> int:
    if int(k) != k or k < 2:
        raise ToolkitError(f"level must be an integer >= 2, got {k}")
    return int(k)


def signature_prime(p: int) -> Signature:
    """Closed-form signature of ``Gamma(p)`` for an odd prime ``p``.

    ``p = 3`` is accepted; the formula gives (0, 4), which the oracle agrees with.
    """
    p = _check_level(p)
    if p == 2 or not is_prime(p):
        raise ToolkitError(f"signature_prime needs an odd prime, got {p}; use signature_general")
    m = p * p - 1
    return Signature(1 + m * (p - 6) // 24, m // 2)


def group_order_oracle(k: int) -> int:
    """``|SL(2, Z/kZ)|`` by counting every ``(a, b, c, d)`` mod ``k`` with ``ad - bc = 1``.

    No closed formula is used. The enumeration is vectorized over the
    ``(b, c, d)`` cube, one slice per value of ``a``.
    """
    k = _check_level(k)
    if k > ORACLE_CAP:
        raise OracleCapError(f"oracle cap exceeded: level {k} > {ORACLE_CAP}")
    r = np.arange(k, dtype=np.int64)
    bc = np.multiply.outer(r, r) % k  # bc[b, c]
    count = 0
    for a in range(k):
        ad = (a * r) % k  # ad[d]
        det = (ad[:, None, None] - bc[None, :, :]) % k
        count += int(np.count_nonzero(det == 1 % k))
    return count


def congruence_index(k: int) -> int:
    """Index of the projective group ``Gamma(k)`` in ``PSL(2, Z)`` via the oracle."""
    k = _check_level(k)
    if k == 2:
        # -I = I mod 2, so the projective image is all of SL(2, Z/2)
        return 6
    order = group_order_oracle(k)
    if order % 2:
        raise InconsistentIndexError(f"odd group order {order} at level {k}")
    return order // 2


def signature_from_index(k: int, index: int) -> Signature:
    # every cusp of Gamma(k) has width k, and the area is index * (pi/3)
    if index % k or index % 6:
        raise InconsistentIndexError(f"inconsistent index {index} at level {k}")
    n = index // k
    twice_g = index // 6 + 2 - n
    if twice_g % 2 or twice_g < 0:
        raise InconsistentIndexError(f"inconsistent index {index} at level {k}")
    return Signature(twice_g // 2, n)


def signature_general(k: int) -> Signature:
    """Signature of ``Gamma(k)`` for any ``2 <= k <= 64`` from the brute-force index."""
    k = _check_level(k)
    return signature_from_index(k, congruence_index(k))


def signature_of_level(k: int) -> Signature:
    """Closed form for odd primes, oracle path otherwise."""
    k = _check_level(k)
    if k != 2 and is_prime(k):
        return signature_prime(k)
    return signature_general(k)


def asymptotic_ratio(p: int) -> float:
    """``72 g_p^2 / n_p^3``, computed exactly and converted once."""
    sig = signature_prime(p)
    if sig.genus == 0:
        raise DegenerateGenusError(f"degenerate genus at p = {p}")
    return float(Fraction(72 * sig.genus**2, sig.cusps**3))
