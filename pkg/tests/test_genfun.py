import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partineq import genfun as gf
from partineq.fps import PowerSeries, invert, poch_finite
from partineq.partitions import (
    Weight,
    bounded_difference,
    genfun_of_set,
    set_A,
    set_B,
    weighted_genfun,
)


def test_build_examples():
    assert gf.build("H_L1:1", 8).coeffs == (0, 1, -1, 1, -1, 1, -1, 1)
    assert gf.build("H_L1:3", 20)[12] == 5
    assert gf.build("H_L2:1", 8).coeffs == (0, 0, 1, 0, 0, 1, -1, 0)
    assert gf.build("H_L2:2", 9).coeffs == (0, 0, 1, 0, 0, 0, 1, -1, 1)
    assert gf.build("G_L1:1", 9).coeffs == (0, 1, 0, 1, 0, 1, 0, 1, 0)
    assert gf.build("mod4_series", 10)[4] == -1


def test_series_id_grammar():
    sid = gf.SeriesId.parse("H_Lsk:5:2:6")
    assert sid == gf.SeriesId("H_Lsk", (5, 2, 6))
    assert str(sid) == "H_Lsk:5:2:6"
    assert str(gf.SeriesId.parse("mod4_series")) == "mod4_series"


@pytest.mark.parametrize("text,needle", [
    ("H_L1:0", "L >= 1"),
    ("H_L2_long:7:1", "takes parameters"),
    ("H_L2_long:6", "odd L >= 5"),
    ("nope:1", "unknown series"),
    ("H_L1:x", "integers"),
])
def test_series_id_errors(text, needle):
    with pytest.raises(gf.ParameterError, match=needle):
        gf.SeriesId.parse(text)


@pytest.mark.parametrize("L", range(1, 9))
def test_H_L1_three_ways(L):
    want = genfun_of_set(set_A(L, 1), 90) - genfun_of_set(set_A(L, 2), 90)
    assert gf.H_L1(L, 90) == want
    assert gf.H_L1_secondary(L, 90) == want
    if L >= 3:
        assert gf.H_L1_fourterm(L, 90) == want
    if L == 2:
        assert gf.H_21_secondary(90) == want


@pytest.mark.parametrize("L", range(1, 9))
def test_H_L2_against_sets(L):
    want = genfun_of_set(set_B(L, 1), 90) - genfun_of_set(set_B(L, 2), 90)
    corr = PowerSeries.from_terms({3: 1, 9: int(L == 4)}, 90)
    assert gf.H_L2(L, 90) == want + corr
    assert gf.H_Lsk(L, 2, L + 1, 90) + corr == gf.H_L2(L, 90)


def test_H_L2_secondary_forms():
    assert gf.H_32_secondary(120) == gf.H_L2(3, 120)
    for L in (5, 7, 9):
        terms = gf.H_L2_long_terms(L, 120)
        assert len(terms) == 11
        assert all(t.is_nonnegative() for t in terms)
        assert gf.H_L2_long(L, 120) == gf.H_L2(L, 120)


def test_H_Lsk_specializes():
    for L in range(2, 8):
        assert gf.H_Lsk(L, 1, L, 60) == gf.H_L1(L, 60)
        assert gf.Hstar_L2(L, 60) == gf.H_Lsk(L, 2, L, 60)


@pytest.mark.parametrize("L", [0, 1, 2, 5, 9])
def test_weighted_forms_against_enumeration(L):
    want = weighted_genfun(bounded_difference(L), Weight.ALTERNATING_SMALLEST, 100)
    for f in (gf.weighted_ls, gf.weighted_ls_binom, gf.weighted_ls_phi, gf.jackson_phi, gf.jackson_rhs, gf.intermediate):
        assert f(L, 100) == want, f.__name__


def test_intermediate_matches_at_negative_exponent_L():
    # factors (1 + q^(1-L+i)) have negative exponents for L >= 2; the rewrite keeps it exact
    for L in range(2, 12):
        assert gf.intermediate(L, 150) == gf.weighted_ls(L, 150)


def test_G_definitions():
    for L in range(1, 8):
        g1 = genfun_of_set(bounded_difference(L, smallest_part_equals=1), 80) - genfun_of_set(
            bounded_difference(L, smallest_part_at_least=2), 80)
        assert gf.G_L1(L, 80) == g1
        g2 = genfun_of_set(bounded_difference(L, smallest_part_equals=2), 80) - genfun_of_set(
            bounded_difference(L, smallest_part_at_least=3), 80)
        assert gf.G_L2(L, 80) == g2


def test_functional_relations():
    for L in range(1, 10):
        assert gf.G_L1(L, 150).mul_binomial(L) == gf.H_L1(L, 150)
        assert gf.G_L1(L, 150).is_nonnegative()
        assert gf.weighted_ls(L, 150) == gf.G_L1(L, 150) + gf.odds_min_gt1(L, 150) * 2
        assert gf.weighted_ls_pieces(L, 150) == gf.weighted_ls(L, 150)
    for L in range(3, 10):
        assert gf.G_L2(L, 150).mul_binomial(L) == gf.Hstar_L2(L, 150)


def test_odds_min_gt1_against_sets():
    for L in range(0, 6):
        c = bounded_difference(L, smallest_part_at_least=2, smallest_part_parity=1)
        assert gf.odds_min_gt1(L, 80) == genfun_of_set(c, 80)


def test_summation_formulas():
    for L in range(1, 15):
        assert gf.summation_lhs(L, 150) == gf.summation_rhs(L, 150)
    assert gf.infinite_summation_lhs(150) == gf.infinite_summation_rhs(150)
    assert gf.summation_lhs(150, 150) == gf.infinite_summation_lhs(150)


def test_unrestricted_identities():
    prec = 120
    a = gf.weighted_inf_lhs(prec)
    assert a == gf.t_sum_rhs(prec) == gf.alt_smallest_inf(prec)
    assert gf.rank_distinct_mid(prec) == gf.rank_distinct_rhs(prec)
    euler = invert(poch_finite(1, prec, prec))
    assert gf.rank_distinct_rhs(prec) * euler == gf.t_sum_rhs(prec)
    assert gf.rank_distinct_mid(prec) * euler == gf.alt_smallest_inf(prec)


def test_mod4_series_sign_pattern():
    c = gf.mod4_series(201).coeffs
    assert all(c[n] >= 0 for n in range(1, 201) if n % 4)
    assert c[4] == -1
    assert gf.mod4_series(201) == gf.weighted_ls(0, 201)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30))
def test_shift_identity(n, L):
    assert gf.shift_lhs(n, L, 80) == gf.shift_rhs(n, L, 80)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(gf.BUILDERS)), st.integers(1, 60))
def test_truncation_is_consistent(name, prec):
    # building at a lower order gives the prefix of a higher-order build
    b = gf.BUILDERS[name]
    params = {
        (): (), ("L",): (5,), ("L", "s", "k"): (5, 2, 6), ("n", "L"): (3, 4),
    }[b.params]
    hi = gf.build(gf.SeriesId(name, params), prec + 20)
    lo = gf.build(gf.SeriesId(name, params), prec)
    assert hi.truncate(prec) == lo
