import pytest

from partineq import genfun as gf
from partineq.maps import (
    DOCUMENTED_COLLISIONS,
    ExcludedInputError,
    InjectionId,
    MapDomainError,
    apply,
    apply_with_case,
    complement_counts,
    complement_genfun,
    image_complement,
    preimage_table,
    verify_injection,
)
from partineq.partitions import Partition, enumerate_partitions, genfun_of_set


def P(text):
    return Partition.parse(text)


def test_gamma_examples():
    g = InjectionId("gamma", 3)
    assert apply(g, P("3^4")) == P("1^10 2")
    assert apply(g, P("2^6")) == P("1^2 2^5")
    assert apply(g, P("4^3")) == P("1^4 4^2")


def test_gamma1_example():
    assert apply(InjectionId("gamma1", 5), P("6^2")) == P("2^6")


def test_gamma2star_collision():
    g = InjectionId("gamma2star", 4)
    img = apply(g, P("4 5"))
    assert img == apply(g, P("3^3")) == P("2 3 4")
    (pre, img2), = DOCUMENTED_COLLISIONS["gamma2star"].items()
    assert pre == 9


def test_domain_and_excluded_errors():
    g = InjectionId("gamma", 3)
    with pytest.raises(MapDomainError):
        apply(g, P("1 3"))
    with pytest.raises(ExcludedInputError) as exc:
        apply(InjectionId("gamma1", 5), P("3"))
    assert exc.value.norm == 3


@pytest.mark.parametrize("variant,L", [("gamma", 2), ("gammastar", 3), ("gamma1", 6), ("gamma2", 7), ("nope", 3)])
def test_bad_injection_ids(variant, L):
    with pytest.raises(ValueError):
        InjectionId(variant, L)


def test_for_L_picks_the_right_map():
    assert InjectionId.for_L("A", 2).variant == "gammastar"
    assert InjectionId.for_L("A", 5).variant == "gamma"
    assert [InjectionId.for_L("B", L).variant for L in (3, 4, 5, 6)] == ["gamma1star", "gamma2star", "gamma1", "gamma2"]


def test_table_counts():
    r = verify_injection(InjectionId("gamma", 3), 12)
    assert r.ok and r.domain_counts[12] == 7
    assert len(enumerate_partitions(12, InjectionId("gamma", 3).codomain())) == 12
    r = verify_injection(InjectionId("gamma1", 5), 12)
    assert r.ok and r.domain_counts[12] == 6


def test_gamma2star_report_has_one_documented_collision():
    r = verify_injection(InjectionId("gamma2star", 4), 20)
    assert not r.injectivity_ok
    assert [(str(a), str(b), str(c)) for a, b, c in r.collisions] == [("3^3", "4^1 5^1", "2^1 3^1 4^1")]
    assert r.documented_collisions_only and r.norm_preserved_ok and r.codomain_ok
    assert r.ok
    assert {n for n, _ in r.excluded_inputs} <= {1, 2, 3}


@pytest.mark.parametrize("variant,L", [
    ("gammastar", 2), ("gamma", 3), ("gamma", 4), ("gamma", 7), ("gamma1star", 3), ("gamma1", 5), ("gamma1", 7),
])
def test_injective_maps_to_30(variant, L):
    r = verify_injection(InjectionId(variant, L), 30)
    assert r.injectivity_ok and r.norm_preserved_ok and r.codomain_ok
    assert sum(r.case_counts.values()) == sum(r.domain_counts.values()) - len(r.excluded_inputs)


@pytest.mark.parametrize("L", [6, 8])
def test_gamma2_preserves_norm_and_codomain(L):
    # injectivity of the even-L map fails at a few norms; the rest of the audit holds
    r = verify_injection(InjectionId("gamma2", L), 30)
    assert r.norm_preserved_ok and r.codomain_ok
    assert r.collisions and all(a.norm == L + 5 or a.norm > L + 5 for a, _, _ in r.collisions)


def test_map_report_json():
    js = verify_injection(InjectionId("gamma2star", 4), 10).to_json()
    assert js["collisions"] == [["3^3", "4^1 5^1", "2^1 3^1 4^1"]]
    assert js["injectivity_ok"] is False


def test_image_complement_examples():
    got = image_complement(InjectionId("gamma", 3), 12)
    assert [str(p) for p in got] == ["1^12", "1^6 2^3", "1^6 2^1 4^1", "1^4 2^4", "1^4 2^2 4^1"]
    assert image_complement(InjectionId("gammastar", 2), 11) == [P("1^11"), P("1^5 3^2")]


def test_gammastar_complement_shapes():
    # (1, 3^f) and (1^(2j+5), 3^f), with 1 written as the part
    for N in range(1, 30):
        for p in image_complement(InjectionId("gammastar", 2), N):
            assert set(p.freq) <= {1, 3}
            f1 = p.f(1)
            assert f1 == 1 or (f1 >= 5 and f1 % 2 == 1)


def test_preimage_table_round_trip():
    g = InjectionId("gamma", 3)
    for pre, img in preimage_table(g, 12):
        if pre is not None:
            assert apply(g, pre) == img


def test_complement_consistency():
    g = InjectionId("gamma", 4)
    comp = complement_genfun(g, 40)
    images = [len(enumerate_partitions(N, g.domain())) for N in range(40)]
    assert comp == genfun_of_set(g.codomain(), 40) - type(comp)(images, 40)


def test_complement_counting_tail_matches_brute_force():
    for mid in (InjectionId("gamma", 5), InjectionId("gamma1star", 3), InjectionId("gamma2star", 4)):
        assert complement_counts(mid, 36, exhaustive_to=12) == complement_counts(mid, 36, exhaustive_to=36)


def test_complement_gamma_equals_H():
    for L in (3, 4, 5):
        assert complement_genfun(InjectionId("gamma", L), 50) == gf.H_L1(L, 50)
    assert complement_genfun(InjectionId("gammastar", 2), 50) == gf.H_21_secondary(50)
    assert complement_genfun(InjectionId("gamma1star", 3), 50) == gf.H_32_secondary(50)
    assert complement_genfun(InjectionId("gamma1", 5), 50) == gf.H_L2_long(5, 50)


def test_apply_with_case_labels():
    img, case = apply_with_case(InjectionId("gamma", 3), P("2^6"))
    assert img == P("1^2 2^5") and case.startswith("iii")
