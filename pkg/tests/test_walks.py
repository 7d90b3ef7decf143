import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SIMPLE, brute_force_counts
from quadwalks.series import TruncatedSeries, coeff, section, swap_xy
from quadwalks.walks import StepParseError, StepSet, all_step_sets, count, enumerate_walks

step_sets = st.integers(1, 255).map(StepSet)


def test_tokens_roundtrip():
    S = StepSet.parse("sw, ne ,N")
    assert S.tokens == ("N", "NE", "SW")
    assert str(S) == "N,NE,SW"
    assert StepSet.from_vectors(S.steps) == S
    assert (0, 0) not in S


def test_unknown_token():
    with pytest.raises(StepParseError, match="'Q'"):
        StepSet.parse("N,Q")


def test_bitmask_matches_vectors():
    for S in all_step_sets():
        assert StepSet.from_vectors(S.steps).mask == S.mask
    assert len(all_step_sets()) == 255


def test_single_forced_path():
    Q = enumerate_walks(StepSet.parse("NE"), 2)
    assert Q == TruncatedSeries.from_terms(2, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1})
    assert coeff(enumerate_walks(StepSet.parse("NE"), 3), 2, 2, 2) == 1


def test_sw_only_is_trivial():
    assert enumerate_walks(StepSet.parse("SW"), 5) == TruncatedSeries.one(5)
    assert section(enumerate_walks(StepSet.parse("SW"), 5), "x=y=0") == TruncatedSeries.one(5)


def test_figure1_model1_length2():
    S = StepSet.parse("E,N,NE,SW")
    Q = enumerate_walks(S, 2)
    bf = brute_force_counts(S, 2)
    assert coeff(Q, 0, 0, 2) == bf[(0, 0)] == 1
    assert sum(Q.slices[2].values()) == sum(bf.values()) == 10


def test_simple_walk_total_counts():
    # 1 + 2t + 6t^2 from enumerating all sequences
    tot = section(enumerate_walks(SIMPLE, 2), "x=y=1")
    assert [tot.coeff(0, 0, n) for n in range(3)] == [1, 2, 6]
    assert [sum(brute_force_counts(SIMPLE, n).values()) for n in range(3)] == [1, 2, 6]


def test_count_examples():
    assert count(StepSet.parse("NE"), 3, 3, 3) == 1
    assert count(StepSet.parse("SW"), 0, 0, 1) == 0
    assert count(StepSet.parse("W,S,NE,SW"), 0, 0, 2) == 1


@given(step_sets, st.integers(0, 6))
@settings(max_examples=80, deadline=None)
def test_enumeration_matches_brute_force(S, n):
    Q = enumerate_walks(S, n)
    assert dict(Q.slices[n]) == brute_force_counts(S, n)


@given(step_sets, st.integers(0, 7))
@settings(max_examples=60, deadline=None)
def test_count_agrees_with_enumerate(S, n):
    Q = enumerate_walks(S, n)
    for i in range(n + 2):
        for j in range(n + 2):
            assert count(S, i, j, n) == Q.coeff(i, j, n)


@given(step_sets, st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_support_and_mass_bounds(S, N):
    Q = enumerate_walks(S, N)
    for n, sl in enumerate(Q.slices):
        assert all(i <= n and j <= n for i, j in sl)
        assert all(isinstance(c, int) and c > 0 for c in sl.values())
        assert sum(sl.values()) <= len(S) ** n


def test_mass_equality_iff_unconstrained():
    # {N, NE, E}: nothing ever leaves the quadrant
    S = StepSet.parse("N,NE,E")
    Q = enumerate_walks(S, 6)
    assert all(sum(Q.slices[n].values()) == 3**n for n in range(7))
    S = StepSet.parse("N,S")
    assert sum(enumerate_walks(S, 1).slices[1].values()) < 2


@given(step_sets, st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_diagonal_symmetry(S, N):
    Q = enumerate_walks(S, N)
    if S.reflect() == S:
        assert swap_xy(Q) == Q
    assert swap_xy(Q) == enumerate_walks(S.reflect(), N)


@given(step_sets, st.sampled_from(StepSet(255).steps), st.integers(0, 7))
@settings(max_examples=60, deadline=None)
def test_adding_a_step_is_monotone(S, step, N):
    small, big = enumerate_walks(S, N), enumerate_walks(S.with_step(step), N)
    for i, j, n, c in small.terms():
        assert big.coeff(i, j, n) >= c
