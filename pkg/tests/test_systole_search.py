import pytest
from hypothesis import given, settings, strategies as st

from congruence_systole import systole_search as ss
from congruence_systole.congruence_signature import is_prime
from congruence_systole.errors import SearchCapError, ToolkitError
from congruence_systole.hyp_trig import collar_lower_bound
from congruence_systole.systole_search import (
    TraceWitness,
    bfs_oracle,
    cap_witness,
    min_trace_exact,
    systole_of_level,
    witness_verify,
)

PRIMES_TO_200 = [p for p in range(2, 200) if is_prime(p)]


def box_min_trace(p, bound):
    """Smallest |trace| >= 3 of a Gamma(p) element with |a|, |b|, |c| <= bound.

    Naive: solve ad - bc = 1 for d and test every congruence directly.
    """
    best = None
    r = range(-bound, bound + 1)
    for a in r:
        if a == 0 or ((a - 1) % p and (a + 1) % p):
            continue
        eps = 1 if (a - 1) % p == 0 else -1
        for b in range(-bound, bound + 1, 1):
            if b % p:
                continue
            for c in r:
                if c % p:
                    continue
                d, rem = divmod(1 + b * c, a)
                if rem:
                    continue
                t = abs(a + d)
                ok = (d - eps) % p == 0 or (p == 2 and (d + eps) % p == 0)
                if ok and t >= 3 and (best is None or t < best):
                    best = t
    return best


@pytest.mark.parametrize(
    "p, trace, witness",
    [(2, 6, (1, 2, 2, 5)), (3, 7, (-1, 3, -3, 8)), (5, 23, (-1, 5, -5, 24))],
)
def test_min_trace_examples(p, trace, witness):
    res = min_trace_exact(p)
    assert res.min_trace == trace
    assert res.witness.as_tuple() == witness
    assert witness_verify(res.witness)
    assert res.length == systole_of_level(p)


def test_alternative_p3_witness_also_verifies():
    assert witness_verify(TraceWitness(2, 3, 3, 5, 3, -1))


@pytest.mark.parametrize("p, bound", [(2, 8), (3, 10), (5, 26), (7, 50)])
def test_min_trace_matches_box_enumeration(p, bound):
    assert box_min_trace(p, bound) == min_trace_exact(p).min_trace


@pytest.mark.parametrize(
    "w, expected",
    [
        (TraceWitness(-1, 5, -5, 24, 5, -1), True),
        (TraceWitness(1, 0, 0, 1, 5, 1), False),
        (TraceWitness(1, 0, 0, 1, 7, 1), False),
        (TraceWitness(2, 3, 3, 5, 5, -1), False),
        (TraceWitness(2, 3, 3, 5, 5, 1), False),
        (TraceWitness(-1, 5, -5, 24, 5, 1), False),  # wrong recorded sign
        (TraceWitness(-1, 5, -5, 25, 5, -1), False),  # det != 1
        (TraceWitness("x", 5, -5, 24, 5, -1), False),
    ],
)
def test_witness_verify(w, expected):
    assert witness_verify(w) is expected


@pytest.mark.parametrize(
    "p, depth, expected", [(2, 12, 6), (3, 14, 7), (5, 6, None), (2, 16, 6), (3, 16, 7), (5, 16, 23), (7, 16, 47)]
)
def test_bfs_oracle(p, depth, expected):
    assert bfs_oracle(p, depth) == expected


@pytest.mark.parametrize("p", [11, 13])
def test_bfs_oracle_never_below_certified(p):
    found = bfs_oracle(p, 18)
    assert found is None or found >= min_trace_exact(p).min_trace


def test_bfs_oracle_depth_cap():
    with pytest.raises(SearchCapError):
        bfs_oracle(5, 41)
    with pytest.raises(ToolkitError):
        bfs_oracle(1, 4)


@pytest.mark.parametrize("p, expected", [(2, 3.5254943480781721), (3, 3.8496946004768276), (5, 6.2671969478896443)])
def test_systole_of_level(p, expected):
    assert systole_of_level(p) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("p", PRIMES_TO_200)
def test_result_invariants(p):
    res = min_trace_exact(p)
    assert witness_verify(res.witness)
    assert res.witness.trace == res.min_trace
    assert res.certificate.exhausted_below == res.min_trace
    assert res.min_trace <= res.certificate.trace_cap
    assert systole_of_level(p) >= collar_lower_bound()
    cap = cap_witness(p)
    assert witness_verify(cap)
    if p >= 3:
        assert res.min_trace <= p * p - 2
        assert cap.trace == p * p - 2


@pytest.mark.parametrize("p", [p for p in PRIMES_TO_200 if p <= 31])
def test_single_sign_never_beats_both(p):
    both = min_trace_exact(p).min_trace
    for sign in (1, -1):
        res = min_trace_exact(p, signs=(sign,))
        assert res.min_trace >= both
        assert res.witness.sign == sign
        assert witness_verify(res.witness)


@pytest.mark.parametrize("p", [2, 3, 5, 13, 101])
def test_python_and_numpy_scans_agree(p):
    cands = ss._candidates(p, cap_witness(p).trace, ss.SIGNS)
    assert ss._first_hit_python(p, cands) == ss._first_hit_numpy(p, cands)
    # chunking must not change which hit comes first
    assert ss._first_hit_numpy(p, cands, chunk_cells=1) == ss._first_hit_numpy(p, cands)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([p for p in PRIMES_TO_200 if p > 2]), st.integers(min_value=3, max_value=400))
def test_candidates_are_exactly_the_residue_class(p, cap):
    cands = ss._candidates(p, cap, ss.SIGNS)
    expected = [(t, e) for t in range(3, cap + 1) for e in ss.SIGNS if (t - 2 * e) % p == 0]
    assert cands == expected


def test_trace_cap_too_small():
    with pytest.raises(SearchCapError, match="cap exceeded"):
        min_trace_exact(5, trace_cap=22)
    assert min_trace_exact(5, trace_cap=23).min_trace == 23
    # a larger cap is clamped to the constructive one
    assert min_trace_exact(5, trace_cap=10**6).certificate.trace_cap == 23


def test_level_checks():
    with pytest.raises(ToolkitError, match="prime"):
        min_trace_exact(9)
    with pytest.raises(SearchCapError):
        min_trace_exact(10_009)
    with pytest.raises(SearchCapError):
        min_trace_exact(13, level_cap=11)


def test_deterministic():
    assert min_trace_exact(31) == min_trace_exact(31)
