import json

import pytest

from kasami.verify import SUITES, verify_suite


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 2)])
def test_full_suite_passes(args):
    rep = verify_suite(*args)
    assert rep.status == "pass"
    obj = json.loads(rep.to_json())
    assert obj["status"] == "pass" and obj["checks"]
    assert {c["status"] for c in obj["checks"]} <= {"pass", "skipped"}


def test_readings_reported():
    rep = verify_suite(3, 2, 1, 1, suite="sequences")
    check = next(c for c in rep.checks if c.name.startswith("which reading"))
    assert check.status == "pass"
    assert check.actual["corrected"] is True and check.actual["printed"] is False


def test_single_suites_exist():
    assert set(SUITES) == {"fields", "ranks", "sums", "curves", "codes", "sequences"}
    assert verify_suite(3, 2, 1, 1, suite="fields").status == "pass"


def test_json_report_independent_of_workers():
    one = verify_suite(3, 2, 1, 1, suite="sums", workers=1).to_json()
    two = verify_suite(3, 2, 1, 1, suite="sums", workers=2).to_json()
    assert one == two
