"""Acceptance gate: the ten numbered verification criteria, one test each.

Each test prints the criterion's one-line summary (value vs bound for every
part) so `pytest -v -s tests/test_acceptance.py` doubles as the sign-off
report.  The battery itself lives in shellres.checks and is what the
`shellres verify` subcommand runs.
"""
import pytest

from shellres.checks import ALL_CRITERIA, run_criteria

_IDS = {i: name.replace(" ", "_").replace("-", "_") for i, (name, _) in ALL_CRITERIA.items()}


@pytest.fixture(scope="module")
def battery():
    results = run_criteria()
    return {res.index: res for res in results}


@pytest.mark.parametrize("index", sorted(ALL_CRITERIA), ids=[_IDS[i] for i in sorted(ALL_CRITERIA)])
def test_criterion(battery, index):
    res = battery[index]
    print(res.line())
    assert res.passed, res.line()
