"""The eight acceptance criteria, one test each, at full depth.

Run with `pytest tests/test_acceptance.py -v` to get a pass/fail line per
criterion; the same checks back `peakqsym selftest`.
"""

import pytest

from peakqsym.selftest import CRITERIA, FULL


@pytest.mark.parametrize(
    "name, check", CRITERIA, ids=[name for name, _ in CRITERIA]
)
def test_criterion(name, check):
    detail = check(FULL)
    print(f"PASS {name}: {detail}")
