"""The ten acceptance criteria; each prints one PASS/FAIL line."""

import time

import pytest

from weightlab.acceptance import CRITERIA

TIMINGS = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, capsys):
    start = time.perf_counter()
    result = criterion()
    TIMINGS[result.number] = time.perf_counter() - start
    with capsys.disabled():
        print("\n" + result.line(), f"[{TIMINGS[result.number]:.1f}s]")
    assert result.ok, result.detail


def test_suite_runs_within_budget(capsys):
    if len(TIMINGS) < len(CRITERIA):
        pytest.skip("run together with the criteria")
    total = sum(TIMINGS.values())
    with capsys.disabled():
        print(f"\nacceptance suite: {total:.1f}s")
    assert total < 60
