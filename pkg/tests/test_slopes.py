import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weightlab import slopes as sl
from weightlab.slopes import EPSequence, PreconditionError, ProfileError, RankProfile, SlopeObject, Tail

seeds = st.integers(0, 2**32)
half = Fraction(1, 2)


def naive_slope(M, direction="+", start=120, span=240):
    """Slope read off the raw partial sums far out: (a^{j+L} - a^j) / L with L a multiple of every period."""
    return Fraction(sl.partial_sums(M, start + span, direction) - sl.partial_sums(M, start, direction), span)


def even_ones():
    return SlopeObject(EPSequence({}, Tail(0, [1, 0])))


# --- sequences ------------------------------------------------------------------

def test_tail_period_must_be_even():
    with pytest.raises(ProfileError):
        Tail(0, [1, 0, 1])
    with pytest.raises(ProfileError):
        Tail(0, [-1, 0])


def test_sequence_evaluation_and_json():
    d = EPSequence({-1: 2, 0: 5}, Tail(2, [1, 3]), Tail(-3, [0, 4]))
    assert [d(i) for i in range(-6, 6)] == [4, 0, 4, 0, 0, 2, 5, 0, 1, 3, 1, 3]
    back = EPSequence.from_json(json.loads(json.dumps(d.to_json())))
    assert back == d


def test_json_rejects_odd_period():
    with pytest.raises(ProfileError):
        EPSequence.from_json({"core": {}, "right": {"start": 0, "period": 3, "vals": [1, 0, 0]}})


def test_core_conflicting_with_tail_is_rejected():
    with pytest.raises(ProfileError):
        EPSequence({5: 7}, Tail(0, [1, 0]))


@given(seeds, st.integers(-5, 5))
@settings(max_examples=50)
def test_shift_reindexes(seed, k):
    M = sl.random_slope_object(random.Random(seed))
    d = M.dims.shifted(k)
    assert all(d(i) == M(i + k) for i in range(-20, 20))


# --- partial sums and slopes --------------------------------------------------------

def test_partial_sum_examples():
    assert [sl.partial_sums(SlopeObject.zero(), j) for j in range(5)] == [0] * 5
    ones = SlopeObject(EPSequence({}, Tail(0, [1, 1])))
    assert [sl.partial_sums(ones, j) for j in range(6)] == [1, 0, 1, 0, 1, 0]
    e = even_ones()
    assert all(sl.partial_sums(e, j) == j // 2 + 1 for j in range(0, 30, 2))


def test_slope_examples():
    assert sl.slopes(SlopeObject.zero()) == sl.SlopePair(0, 0)
    assert sl.slopes(SlopeObject.finite({-2: 3, 0: 1, 5: 2})) == sl.SlopePair(0, 0)
    s = sl.slopes(even_ones())
    assert s.alpha == half and s.beta == 0
    assert naive_slope(even_ones()) == half


@given(seeds)
@settings(max_examples=100)
def test_closed_form_matches_naive_fit(seed):
    M = sl.random_slope_object(random.Random(seed))
    s = sl.slopes(M)
    assert s.alpha == naive_slope(M, "+")
    assert s.beta == naive_slope(M, "-")


@pytest.mark.parametrize("alpha,beta", [(half, half), (Fraction(1, 3), Fraction(4, 3)), (Fraction(-2, 5), 1), (0, 0), (3, -1)])
def test_with_slopes_realizes_slopes(alpha, beta):
    M = SlopeObject.with_slopes(alpha, beta)
    assert sl.slopes(M) == sl.SlopePair(alpha, beta)
    assert naive_slope(M, "+") == alpha and naive_slope(M, "-") == beta


def test_shift_negates_slopes():
    M = SlopeObject.with_slopes(half, Fraction(1, 3))
    assert sl.slopes(sl.shift_slope(M, 0)) == sl.slopes(M)
    assert sl.slopes(sl.shift_slope(M, 1)).alpha == -half
    assert sl.slopes(sl.shift_slope(sl.shift_slope(M, 1), 1)) == sl.slopes(M)


@given(seeds, seeds)
@settings(max_examples=50)
def test_slopes_additive_on_sums(s1, s2):
    a, b = sl.random_slope_object(random.Random(s1)), sl.random_slope_object(random.Random(s2))
    assert sl.slopes(sl.direct_sum_slope(a, b)) == sl.slopes(a) + sl.slopes(b)


# --- cones ---------------------------------------------------------------------------------

def test_cone_examples():
    rng = random.Random(0)
    M = sl.random_slope_object(rng)
    assert sl.cone_profile(RankProfile.identity(M)) == SlopeObject.zero()
    N = sl.random_slope_object(rng)
    c = sl.cone_profile(RankProfile.zero(M, N))
    assert all(c(i) == N(i) + M(i + 1) for i in range(-20, 20))


def test_rank_bound_is_enforced():
    M = SlopeObject.finite({0: 1})
    with pytest.raises(ProfileError):
        RankProfile(M, M, EPSequence({0: 2}))


@given(seeds)
@settings(max_examples=200)
def test_slopes_additive_on_cones(seed):
    rng = random.Random(seed)
    a, b = sl.random_slope_object(rng), sl.random_slope_object(rng)
    c = sl.cone_profile(RankProfile(a, b, sl.random_ranks(rng, a, b)))
    assert sl.slopes(c) == sl.slopes(b) - sl.slopes(a)
    assert naive_slope(c) == sl.slopes(b).alpha - sl.slopes(a).alpha


# --- membership and truncation -----------------------------------------------------------

def test_membership_examples():
    assert sl.in_C(SlopeObject.finite({0: 4, 3: 1}))
    M = SlopeObject.with_slopes(half, half)
    assert sl.in_Cprime(M) and not sl.in_C(M)
    N = SlopeObject.with_slopes(half, 0)
    assert not sl.in_C(N) and not sl.in_Cprime(N)


def test_truncation_examples():
    M = SlopeObject.with_slopes(half, half)
    X, Y = sl.truncate(M, 0)
    sx, sy = sl.slopes(X), sl.slopes(Y)
    assert sx.beta == 0 and sy.alpha == 0 and sx + sy == sl.slopes(M)
    assert sl.in_le(X, 0) and sl.in_ge(Y, 1)
    F = SlopeObject.finite({1: 2, 3: 1})
    assert sl.truncate(F, 0) == (F, SlopeObject.zero())
    assert sl.truncate(SlopeObject.zero(), 0) == (SlopeObject.zero(), SlopeObject.zero())


@given(seeds, st.integers(-4, 4))
@settings(max_examples=50)
def test_truncation_recombines(seed, m):
    M = sl.random_slope_object(random.Random(seed))
    X, Y = sl.truncate(M, m)
    assert sl.direct_sum_slope(X, Y) == M
    assert sl.in_le(X, m) and sl.in_ge(Y, m + 1)


# --- padding ---------------------------------------------------------------------------------

def test_pad_examples():
    F = SlopeObject.finite({0: 1})
    assert sl.pad_to_C(F)[0] == F
    assert sl.pad_to_C(SlopeObject.zero())[0] == SlopeObject.zero()
    M = SlopeObject.with_slopes(half, 0)
    N, ev = sl.pad_to_C(M)
    assert sl.slopes(N) == sl.SlopePair(1, 0)
    assert sl.dominates(N, M) and ev.verify()
    # strict on half of the degrees of the tail
    assert [N(i) > M(i) for i in range(0, 8)] == [True, False] * 4


@given(seeds)
@settings(max_examples=100)
def test_padding_lands_in_C(seed):
    M = sl.random_slope_object(random.Random(seed))
    N, ev = sl.pad_to_C(M)
    assert sl.in_C(N) and sl.dominates(N, M) and ev.verify()
    assert N.dims.is_bounded_above() == M.dims.is_bounded_above()
    assert N.dims.is_bounded_below() == M.dims.is_bounded_below()


# --- the obstruction -----------------------------------------------------------------------

@pytest.mark.parametrize("alpha,beta", [(half, half), (Fraction(1, 3), Fraction(4, 3))])
def test_obstruction_certificate(alpha, beta):
    M = SlopeObject.with_slopes(alpha, beta)
    cert = sl.no_decomposition_witness(M)
    assert cert.slopes.alpha == alpha and cert.verify() == []
    found, tried = sl.exhaustive_decomposition_search(M)
    assert tried > 0 and found == []


def test_obstruction_precondition():
    with pytest.raises(PreconditionError):
        sl.no_decomposition_witness(SlopeObject.finite({0: 1}))
    with pytest.raises(PreconditionError):
        sl.no_decomposition_witness(SlopeObject.with_slopes(half, 0))


def test_exhaustive_search_finds_decompositions_in_C():
    # sanity of the oracle: for an object of C it does find decompositions inside C' (indeed C)
    found, tried = sl.exhaustive_decomposition_search(SlopeObject.with_slopes(1, 1))
    assert found


def test_certificate_detects_a_forged_record():
    cert = sl.no_decomposition_witness(SlopeObject.with_slopes(half, half))
    cert.slopes = sl.SlopePair(1, 1)
    assert cert.verify()
