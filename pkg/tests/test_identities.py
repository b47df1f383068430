import json

import pytest

from partineq import identities as ids
from partineq.identities import IdentityRecord, registry, verify, verify_all


def test_registry_shape():
    recs = registry()
    names = [r.id for r in recs]
    assert len(recs) >= 20
    assert len(names) == len(set(names))
    assert all(r.kind in ids.KINDS for r in recs)
    assert any(r.is_fixture for r in recs)


def test_record_validation():
    side = ("a", lambda pt, prec: None)
    with pytest.raises(ValueError, match="unknown record kind"):
        IdentityRecord("x", "bogus", "", (side, side))
    with pytest.raises(ValueError, match="at least two"):
        IdentityRecord("x", "equality", "", (side,))
    with pytest.raises(ValueError, match="takes 1"):
        IdentityRecord("x", "nonneg", "", (side, side))


def test_finite_summation_at_L5():
    r = verify("finite-summation", {"L": 5}, 200)
    assert r.status == "pass" and r.ok and r.first_discrepancy is None


def test_alternating_smallest_part_equals_t_statistic():
    r = verify("alt-smallest-equals-t-stat", prec=40)
    assert r.ok and r.status == "pass"


@pytest.mark.parametrize("rid,point,witness", [
    ("ineq-A-sets-at-L1", {}, 2),
    ("ineq-B-sets-at-L1", {}, 6),
    ("ineq-B-sets-at-L2", {}, 7),
    ("H1-at-L1-negative", {}, 2),
    ("H2-at-L1-negative", {}, 6),
    ("H2-at-L2-negative", {}, 7),
    ("divisor-series-negative-at-4", {}, 4),
])
def test_fixtures_fail_where_expected(rid, point, witness):
    rec = ids.get(rid)
    pt = point or (rec.points()[0] if rec.grid else {})
    r = verify(rid, pt, 60)
    assert r.expected_fail and r.status == "fail"
    assert r.first_discrepancy == witness
    assert r.ok


def test_dropping_norm9_correction_fails_only_at_9():
    r = verify("ineq-B-sets-without-norm9-correction", {"L": 4}, 101)
    assert r.status == "fail" and r.negative_indices == [9] and r.ok


def test_fixture_below_witness_is_a_clean_pass():
    rec = ids.get("H2-at-L1-negative")
    r = verify(rec.id, rec.points()[0], 5)
    assert r.status == "pass" and r.ok


def test_restricted_grid_is_a_subset():
    full = verify_all(prec=60, ids=["H1-nonneg"])
    part = verify_all(prec=60, ids=["H1-nonneg"], restrict={"L": range(3, 5)})
    assert [r.point for r in part] == [{"L": 3}, {"L": 4}]
    assert [r.to_json() for r in part] == [r.to_json() for r in full if r.point["L"] in (3, 4)]


def test_order_one_is_vacuous():
    reports = verify_all(prec=1)
    assert reports and all(r.ok for r in reports)
    assert ids.exit_status(reports) == 0


def test_per_id_precision_map():
    reports = verify_all(prec={"G1-nonneg": 50}, ids=["G1-nonneg", "H1-forms-agree"])
    precs = {r.id: r.prec for r in reports}
    assert precs["G1-nonneg"] == 50
    assert precs["H1-forms-agree"] == ids.get("H1-forms-agree").default_prec


def test_unknown_id_and_bad_point():
    with pytest.raises(KeyError):
        verify("no-such-identity")
    with pytest.raises(ValueError, match="outside the grid"):
        verify("finite-summation", {"L": 999})
    with pytest.raises(ValueError, match="takes parameters"):
        verify("finite-summation", {})


def test_output_formats():
    reports = verify_all(prec=40, ids=["finite-summation"], restrict={"L": [1, 2]})
    lines = ids.to_json_lines(reports).splitlines()
    assert len(lines) == 2
    row = json.loads(lines[0])
    assert row["id"] == "finite-summation" and row["point"] == {"L": 1} and row["status"] == "pass"
    text = ids.summary(reports)
    assert text.splitlines()[0].split()[:4] == ["id", "point", "prec", "status"]
    assert text.rstrip().endswith("2 checks, 2 as expected, 0 unexpected")


def test_reports_are_deterministic():
    a = ids.to_json_lines(verify_all(prec=50, ids=["transform-heine1"]))
    b = ids.to_json_lines(verify_all(prec=50, ids=["transform-heine1"]))
    assert a == b


@pytest.mark.parametrize("rec", [r for r in registry() if not r.is_fixture], ids=lambda r: r.id)
def test_every_record_holds_at_low_order(rec):
    pts = rec.points()[:3]
    for pt in pts:
        r = ids._check(rec, pt, 60)
        assert r.ok, r.to_json()
