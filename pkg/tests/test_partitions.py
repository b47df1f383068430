import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partineq.fps import invert, poch_finite, poch_infinite
from partineq.partitions import (
    DISTINCT,
    POSITIVE,
    UNRESTRICTED,
    ConstraintSet,
    Partition,
    Weight,
    bounded_difference,
    count,
    count_series,
    enumerate_partitions,
    genfun_of_set,
    norm,
    set_A,
    set_B,
    set_C,
    set_Cstar,
    stats,
    t_stat,
    weight_of,
    weighted_genfun,
)


def P(text):
    return Partition.parse(text)


def test_norm_examples():
    assert norm(P("1^4 3^2 10^1")) == 20
    assert norm(Partition()) == 0
    assert norm(P("2^6")) == 12


def test_stats_examples():
    st_ = stats(P("1^4 3^2 10^1"))
    assert (st_.smallest, st_.largest, st_.count, st_.rank) == (1, 10, 7, 3)
    st_ = stats(P("6"))
    assert (st_.smallest, st_.largest, st_.count, st_.rank) == (6, 6, 1, 5)
    assert stats(P("1 2 3")).rank == 0
    with pytest.raises(ValueError):
        stats(Partition())


def test_t_stat_examples():
    assert t_stat(P("1^3 3")) == 1
    assert t_stat(P("1 2 3")) == 3
    assert t_stat(P("2^3")) == 0
    assert t_stat(Partition()) == 0


def test_partition_normalizes_and_serializes():
    p = Partition({3: 2, 1: 4, 7: 0, 10: 1})
    assert str(p) == "1^4 3^2 10^1"
    assert p.to_json() == [[1, 4], [3, 2], [10, 1]]
    assert Partition.from_json(p.to_json()) == p
    assert Partition.parse(str(p)) == p
    assert Partition.parse("()") == Partition()
    assert P("1^10 2").tuple_str() == "(1^10, 2)"
    assert Partition.from_parts([3, 1, 3, 1]) == P("1^2 3^2")


def test_enumerate_examples():
    a31 = enumerate_partitions(12, set_A(3, 1))
    assert len(a31) == 12
    assert {P("1^12"), P("1^10 2"), P("1^2 2^5")} <= set(a31)
    assert len(enumerate_partitions(12, set_A(3, 2))) == 7
    assert enumerate_partitions(0, POSITIVE) == []
    assert enumerate_partitions(0, UNRESTRICTED) == [Partition()]


def test_canonical_order_is_ascending_lex():
    got = [str(p) for p in enumerate_partitions(6, POSITIVE)]
    assert got == [
        "1^6", "1^4 2^1", "1^3 3^1", "1^2 2^2", "1^2 4^1", "1^1 2^1 3^1",
        "1^1 5^1", "2^3", "2^1 4^1", "3^2", "6^1",
    ]


def test_inconsistent_constraints_give_empty():
    c = ConstraintSet(min_part=5, max_part=3, nonempty=True)
    assert not c.is_consistent()
    assert enumerate_partitions(8, c) == []
    assert count_series(c, 10) == [0] * 10


def test_genfun_examples():
    for L in range(1, 6):
        want = invert(poch_finite(1, L - 1, 40)).shift(1).div_binomial(L + 1)
        assert genfun_of_set(set_A(L, 1), 40) == want
        assert genfun_of_set(set_B(L, 2), 40) == invert(poch_finite(3, L, 40)) - 1
    assert genfun_of_set(UNRESTRICTED, 30) == invert(poch_infinite(1, 30))


def test_weighted_examples():
    assert weighted_genfun(POSITIVE, Weight.ALTERNATING_SMALLEST, 10)[6] == 5
    assert weighted_genfun(POSITIVE, Weight.T_STATISTIC, 10)[6] == 5
    assert weighted_genfun(DISTINCT, Weight.ALTERNATING_RANK_DISTINCT, 10)[3] == 2


def test_rank_weight_needs_distinct_parts():
    with pytest.raises(ValueError):
        weight_of(Weight.ALTERNATING_RANK_DISTINCT, P("1^2"))


def test_set_factories_validate():
    with pytest.raises(ValueError):
        set_A(0, 1)
    with pytest.raises(ValueError):
        set_B(2, 3)
    with pytest.raises(ValueError):
        set_Cstar(2, 2)
    assert set_C(3, 2, 1) == set_B(3, 1)
    assert set_C(3, 2, 2) == set_B(3, 2)
    assert set_C(3, 1, 1) == set_A(3, 1)


def test_A_L1_kronecker_case():
    # f_1 must be exactly 1 when L = 1
    got = enumerate_partitions(7, set_A(1, 1))
    assert got == [P("1 2^3")]


SETS = [
    UNRESTRICTED, POSITIVE, DISTINCT,
    set_A(1, 1), set_A(3, 1), set_A(4, 2), set_B(1, 1), set_B(4, 1), set_B(5, 2),
    set_C(4, 3, 1), set_C(4, 3, 2), set_Cstar(5, 2),
    bounded_difference(2), bounded_difference(3, smallest_part_at_least=2, smallest_part_parity=1),
    bounded_difference(2, smallest_part_equals=2),
    ConstraintSet(forbidden_parts=frozenset({2, 5}), max_part=7, nonempty=True),
]


@pytest.mark.parametrize("c", SETS, ids=lambda c: c.name or repr(c)[:40])
def test_enumeration_is_sound_and_matches_counting(c):
    counts = count_series(c, 22)
    for N in range(22):
        got = enumerate_partitions(N, c)
        assert len(got) == len(set(got)) == counts[N]
        assert got == sorted(got)
        for p in got:
            assert p.norm == N and c.contains(p)


def test_unrestricted_enumeration_matches_euler_product():
    want = invert(poch_infinite(1, 25)).coeffs
    assert [len(enumerate_partitions(N)) for N in range(25)] == list(want)


@pytest.mark.parametrize("w,c", [
    (Weight.ALTERNATING_SMALLEST, POSITIVE),
    (Weight.T_STATISTIC, POSITIVE),
    (Weight.ALTERNATING_RANK_DISTINCT, DISTINCT),
    (Weight.ALTERNATING_SMALLEST, bounded_difference(3)),
])
def test_weighted_counting_matches_enumeration(w, c):
    assert weighted_genfun(c, w, 20) == weighted_genfun(c, w, 20, method="enumerate")


def test_alternating_equals_t_statistic():
    a = weighted_genfun(POSITIVE, Weight.ALTERNATING_SMALLEST, 120)
    assert a == weighted_genfun(POSITIVE, Weight.T_STATISTIC, 120)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.integers(1, 8), st.integers(0, 5), max_size=6))
def test_t_stat_zero_when_f1_even(freq):
    p = Partition(freq)
    if p.f(1) % 2 == 0:
        assert t_stat(p) == 0
    else:
        assert t_stat(p) >= 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 18), st.integers(1, 4), st.integers(1, 6))
def test_count_matches_enumeration_on_random_windows(N, lo, width):
    c = ConstraintSet(min_part=lo, max_part=lo + width, nonempty=True)
    assert count(N, c) == len(enumerate_partitions(N, c))
