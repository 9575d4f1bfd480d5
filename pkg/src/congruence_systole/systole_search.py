"""Certified minimal hyperbolic trace in Gamma(p), p prime.

An element ``[[a, b], [c, d]]`` of ``SL(2, Z)`` lies in ``Gamma(p)`` (up to
sign ``eps``) iff ``a = d = eps`` and ``b = c = 0`` mod ``p``. For such an
element ``p^2`` divides ``bc = ad - 1``. Conversely if ``a = eps (mod p)``,
``d = t - a`` and ``p^2 | a d - 1``, then ``b = p, c = (ad - 1)/p`` completes
a matrix of trace ``t`` in ``Gamma(p)``. So trace ``t`` occurs iff some
``a = eps + p x`` with ``0 <= x < p`` satisfies ``a (t - a) = 1 (mod p^2)``,
which requires ``t = 2 eps (mod p)``.

:func:`min_trace_exact` scans ``t`` upwards over that residue class, testing
every ``(eps, x)``, and stops at the first hit. The scan is bounded by an
explicit element of known trace, so it always terminates with a certificate.
:func:`bfs_oracle` is an independent, incomplete cross-check that walks the
Cayley graph of ``PSL(2, Z)`` in the generators ``T`` and ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .congruence_signature import is_prime
from .errors import SearchCapError, ToolkitError
from .hyp_trig import trace_to_length

DEFAULT_LEVEL_CAP = 10_007
MAX_WORD_LEN = 40
SIGNS = (1, -1)

# a, d are reduced mod p^2 before multiplying, so int64 is exact while p^4 < 2^63
_NUMPY_SAFE_LEVEL = 55_000


@dataclass(frozen=True)
class TraceWitness:
    a: int
    b: int
    c: int
    d: int
    level: int
    sign: int

    @property
    def trace(self) -> int:
        return self.a + self.d

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class SearchCertificate:
    """What the scan exhausted before stopping."""

    trace_cap: int
    # every t in [3, exhausted_below) was refuted
    exhausted_below: int
    candidate_traces: int
    residue_tests: int
    signs: tuple[int, ...]

    def summary(self) -> str:
        return (
            f"traces 3..{self.exhausted_below - 1} refuted "
            f"({self.candidate_traces} candidates with t = 2*eps mod p, "
            f"{self.residue_tests} residue tests, signs {list(self.signs)}), cap {self.trace_cap}"
        )


@dataclass(frozen=True)
class SystoleResult:
    level: int
    min_trace: int
    length: float
    witness: TraceWitness
    certificate: SearchCertificate = field(repr=False)


def witness_verify(w: TraceWitness) -> bool:
    """True iff ``w`` is a hyperbolic element of ``Gamma(p)`` with sign ``w.sign``. Never raises."""
    try:
        p = int(w.level)
        if p < 2 or w.sign not in SIGNS:
            return False
        a, b, c, d = (int(v) for v in w.as_tuple())
        return (
            a * d - b * c == 1
            and (a - w.sign) % p == 0
            and (d - w.sign) % p == 0
            and b % p == 0
            and c % p == 0
            and a + d >= 3
        )
    except (TypeError, ValueError, AttributeError):
        return False


def _make_witness(p: int, t: int, eps: int, a: int) -> TraceWitness:
    d = t - a
    c, rem = divmod(a * d - 1, p)
    assert rem == 0
    return TraceWitness(a, p, c, d, p, eps)


def cap_witness(p: int, signs: tuple[int, ...] = SIGNS) -> TraceWitness:
    """An explicit element of ``Gamma(p)`` bounding the search from above.

    ``[[-1, p], [-p, p^2 - 1]]`` (trace ``p^2 - 2``) for sign -1 when ``p >= 3``;
    ``[[1, p], [p, p^2 + 1]]`` (trace ``p^2 + 2``) otherwise.
    """
    if -1 in signs and p >= 3:
        return TraceWitness(-1, p, -p, p * p - 1, p, -1)
    # at p = 2 both signs are the same residue class
    sign = 1 if 1 in signs else -1
    return TraceWitness(1, p, p, p * p + 1, p, sign)


def _check_prime_level(p: int, level_cap: int) -> int:
    if int(p) != p or not is_prime(int(p)):
        raise ToolkitError(f"level must be prime, got {p}")
    p = int(p)
    if p > level_cap:
        raise SearchCapError(f"cap exceeded: level {p} > {level_cap}")
    return p


def _candidates(p: int, cap: int, signs: tuple[int, ...]) -> list[tuple[int, int]]:
    """All (t, eps) with 3 <= t <= cap and t = 2 eps mod p, in scan order."""
    out = []
    for order, eps in enumerate(signs):
        first = 3 + (2 * eps - 3) % p
        out.extend((t, order, eps) for t in range(first, cap + 1, p))
    out.sort()
    return [(t, eps) for t, _, eps in out]


def _first_hit_python(p, cands):
    mod = p * p
    for row, (t, eps) in enumerate(cands):
        for x in range(p):
            a = eps + p * x
            if (a * (t - a)) % mod == 1 % mod:
                return row, x
    return None


def _first_hit_numpy(p, cands, chunk_cells=1 << 22):
    mod = p * p
    xs = np.arange(p, dtype=np.int64)
    rows = max(1, chunk_cells // p)
    for lo in range(0, len(cands), rows):
        block = np.array(cands[lo : lo + rows], dtype=np.int64).reshape(-1, 2)
        t, eps = block[:, :1], block[:, 1:]
        a = (eps + p * xs[None, :]) % mod
        d = (t - a) % mod
        hits = (a * d) % mod == 1 % mod
        found = np.flatnonzero(hits.any(axis=1))
        if found.size:
            row = int(found[0])
            return lo + row, int(np.argmax(hits[row]))
    return None


def min_trace_exact(
    p: int,
    trace_cap: int | None = None,
    level_cap: int = DEFAULT_LEVEL_CAP,
    signs: tuple[int, ...] = SIGNS,
) -> SystoleResult:
    """Least trace ``t >= 3`` of an element of ``Gamma(p)``, with witness and certificate.

    Ties at the minimal trace go to the first ``(eps, x)`` in scan order:
    ``eps = +1`` before ``-1``, then ascending ``x``.
    ``trace_cap`` may lower the constructive cap; if the scan reaches it
    without a hit, :class:`SearchCapError` is raised.
    """
    p = _check_prime_level(p, level_cap)
    signs = tuple(s for s in SIGNS if s in signs)
    if not signs:
        raise ToolkitError("at least one sign is required")
    cap = cap_witness(p, signs).trace
    if trace_cap is not None:
        cap = min(cap, int(trace_cap))
    cands = _candidates(p, cap, signs)
    found = _first_hit_numpy(p, cands) if p < _NUMPY_SAFE_LEVEL else _first_hit_python(p, cands)
    if found is None:
        raise SearchCapError(f"cap exceeded: no element of Gamma({p}) with trace in [3, {cap}]")
    row, x = found
    t, eps = cands[row]
    w = _make_witness(p, t, eps, eps + p * x)
    cert = SearchCertificate(cap, t, row + 1, row * p + x + 1, signs)
    return SystoleResult(p, t, trace_to_length(t), w, cert)


def systole_of_level(p: int, **kwargs) -> float:
    """Systole of ``H^2 / Gamma(p)``: length of the minimal-trace element."""
    return trace_to_length(min_trace_exact(p, **kwargs).min_trace)


# generators of PSL(2, Z) as (a, b, c, d)
_T = (1, 1, 0, 1)
_T_INV = (1, -1, 0, 1)
_S = (0, -1, 1, 0)


def _mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _projective_key(m):
    # canonical representative of {m, -m}
    for v in m:
        if v:
            return m if v > 0 else tuple(-x for x in m)
    return m


def bfs_oracle(p: int, max_word_len: int) -> int | None:
    """Minimal ``|trace| >= 3`` over ``Gamma(p)`` elements of word length ``<= max_word_len``.

    Breadth-first over ``PSL(2, Z)`` in ``T, T^-1, S``; each group element is
    expanded once. Not complete: ``None`` only means nothing was found within
    the horizon, and any value found is an upper bound on the true minimum.
    """
    if int(p) != p or p < 2:
        raise ToolkitError(f"level must be an integer >= 2, got {p}")
    if max_word_len < 0 or max_word_len > MAX_WORD_LEN:
        raise SearchCapError(f"depth cap exceeded: max_word_len {max_word_len} not in [0, {MAX_WORD_LEN}]")
    identity = (1, 0, 0, 1)
    seen = {identity}
    frontier = [identity]
    best = None
    for _ in range(max_word_len):
        nxt = []
        for m in frontier:
            for g in (_T, _T_INV, _S):
                key = _projective_key(_mul(m, g))
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(key)
                a, b, c, d = key
                tr = abs(a + d)
                if (
                    tr >= 3
                    and b % p == 0
                    and c % p == 0
                    and (a - d) % p == 0
                    and ((a - 1) % p == 0 or (a + 1) % p == 0)
                    and (best is None or tr < best)
                ):
                    best = tr
        frontier = nxt
    return best
