"""Acceptance criteria 1-11.

Each test prints one [PASS]/[FAIL] line; the lines are also collected and
echoed in the terminal summary so they survive output capture.
"""
import pytest

from semigroup_forge import verify

LINES = {}

CRITERIA = [
    (1, verify.census, {}),
    (2, verify.outliers, {}),
    (3, verify.dyck, {}),
    (4, verify.unibranch_bound, {}),
    (5, verify.hyperelliptic, {}),
    (6, verify.gap_conditions, {}),
    (7, verify.multibranch, {"chains": 100}),
    (8, verify.classification, {}),
    (9, verify.generators, {}),
    (10, verify.ledgers, {}),
    (11, verify.linear_algebra, {"samples": 200}),
]


@pytest.mark.parametrize("criterion,check,kw", CRITERIA, ids=[f"criterion_{c}" for c, _, _ in CRITERIA])
def test_criterion(criterion, check, kw):
    result = check(**kw)
    assert result.criterion == criterion
    line = result.line()
    for f in result.failures():
        line += f"\n      failed: {f}"
    LINES[criterion] = line
    print(line)
    assert result.ok, line
