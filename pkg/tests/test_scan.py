import json

import pytest

from partineq import scan
from partineq.identities import verify
from partineq.scan import ScanReport, m_evidence, scan_G2, scan_H, scan_set_conjecture, scan_sets


def test_k_equals_L_with_s1_is_clean():
    for r in scan_H(range(2, 8), 1, range(2, 8), prec=150):
        if r.point["k"] == r.point["L"]:
            assert r.verdict == "no-negatives"
            assert verify("H1-nonneg", {"L": r.point["L"]}, 150).status == "pass"


def test_known_negatives():
    (r,) = scan_H(4, 2, 5, prec=120)
    assert r.negative_indices == [3, 9] and r.last_negative == 9
    assert r.verdict == "negatives-then-clean"
    for L in range(5, 11):
        (r,) = scan_H(L, 2, L + 1, prec=120)
        assert r.negative_indices == [3]


def test_grid_is_restricted_and_sorted():
    reps = scan_H(range(1, 5), range(1, 4), range(1, 6), prec=60, clean_tail=20)
    pts = [(r.point["L"], r.point["s"], r.point["k"]) for r in reps]
    assert pts == sorted(pts)
    assert all(k >= s + 1 and L >= s + 1 for L, s, k in pts)


def test_set_scan_evidence():
    c = scan_sets("C", range(2, 11), [1, 2], prec=150)
    assert m_evidence(c) == {1: 1, 2: 10}
    (r,) = [r for r in c if r.point == {"L": 4, "s": 2}]
    assert r.negative_indices == [3, 9]


def test_cstar_needs_L_above_s():
    with pytest.raises(ValueError, match="L >= s\\+1"):
        scan_set_conjecture("Cstar", 2, 2)
    with pytest.raises(ValueError, match="unknown set variant"):
        scan.count_difference("D", 3, 1, 10)


def test_g2_scan():
    (r,) = scan_G2(5, prec=200)
    assert r.verdict == "no-negatives"
    (r,) = scan_G2(4, prec=100, corrections={3: 1})
    assert r.negative_indices == [9]
    assert r.point["corrections"] == "q^3"


def test_g2_default_corrections():
    assert scan.g2_corrections(3) == {3: 1, 9: 1} == scan.g2_corrections(4)
    assert scan.g2_corrections(7) == {3: 1}


def test_verdicts():
    def rep(neg, prec=100, tail=20):
        return ScanReport("H", {}, prec, tail, negative_indices=neg)

    assert rep([]).verdict == "no-negatives"
    assert rep([3, 79]).verdict == "negatives-then-clean"
    assert rep([3, 80]).verdict == "negatives-at-frontier"


def test_frontier_verdict_triggers_one_retry():
    calls = []

    def coeffs(p):
        calls.append(p)
        return [-1 if n == 45 else 1 for n in range(p)]

    r = scan._scan_one("X", {}, coeffs, 50, 10)
    assert calls == [50, 100] and r.retried and r.prec == 100
    assert r.verdict == "negatives-then-clean"


def test_tail_zero_indices():
    r = scan._scan_one("X", {}, lambda p: [0 if n % 7 == 0 else 1 for n in range(p)], 30, 10)
    assert r.tail_zero_indices == [21, 28]


@pytest.mark.parametrize("call", [
    lambda: scan_H(3, 1, 3, prec=50, clean_tail=50),
    lambda: scan_H(3, 1, 3, prec=50, clean_tail=0),
    lambda: scan_H(2, 2, 2, prec=50),
    lambda: scan_G2(2, prec=50, clean_tail=10),
])
def test_bad_arguments(call):
    with pytest.raises(ValueError):
        call()


def test_json_and_summary():
    reps = scan_H(4, 2, 5, prec=60, clean_tail=20)
    row = json.loads(scan.to_json_lines(reps))
    assert row["negative_indices"] == [3, 9] and row["verdict"] == "negatives-then-clean"
    assert "negatives-then-clean" in scan.summary(reps)
