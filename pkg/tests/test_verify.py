from __future__ import annotations

import pytest

from xlaqc import verify


@pytest.mark.parametrize("name", ["lemma2", "prop1", "prop3", "prop4", "appendixA", "nesting"])
def test_fast_suites_pass_on_small_fields(name):
    cases = verify.run_suite(name, [3, 4, 5])
    assert all(c.passed for c in cases), [c.to_json() for c in cases if not c.passed]


def test_prop3_values():
    cases = verify.run_suite("prop3", [4, 5])
    got = {(c.q, c.t): c.observed for c in cases}
    assert got[(4, 0)] == 4
    assert all(v == 3 for k, v in got.items() if k != (4, 0))


def test_prop4_special_case():
    cases = {(c.q, c.t): c for c in verify.run_suite("prop4", [4])}
    assert cases[(4, 0)].observed == 6
    assert cases[(4, 1)].observed == 4


def test_suites_skip_small_fields():
    assert verify.run_suite("prop3", [3]) == []
    assert verify.run_suite("prop5", [3, 4]) == []
    assert verify.run_suite("appendixB", [4]) == []


def test_prop5_q5_reports_findings_without_failing():
    cases = verify.run_suite("prop5", [5])
    assert len(cases) == 6
    assert all(c.passed for c in cases)
    assert all(c.observed >= 5 for c in cases)
    flagged = {c.t for c in cases if c.finding}
    # the computed value is 6 for every t, against a reported 5 for t = 4, 5
    assert flagged == {4, 5}
    assert all(c.observed == 6 for c in cases)


def test_reported_f_dual_distance_table():
    assert verify.remark_f_dual_distance(5, 3) == 6
    assert verify.remark_f_dual_distance(5, 4) == 5
    assert verify.remark_f_dual_distance(7, 1) == 6
    assert verify.remark_f_dual_distance(7, 2) == 5
    assert verify.remark_f_dual_distance(8, 0) == 6
    assert verify.remark_f_dual_distance(9, 0) == 5


def test_unknown_suite():
    with pytest.raises(KeyError, match="unknown suite"):
        verify.run_suite("prop9")


def test_case_json_roundtrip_keys():
    (case,) = verify.run_suite("lemma2", [3])
    assert set(case.to_json()) == {"suite", "q", "t", "passed", "observed", "expected", "finding", "witness"}
