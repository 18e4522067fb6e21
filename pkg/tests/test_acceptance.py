"""Acceptance corpus: one test per criterion, each printing a pass/fail line."""

import pytest

from qpmut import acceptance

SEED = 0
_first = {}


def _report(result):
    print(result.line())
    return result


@pytest.mark.parametrize("number", range(1, 14))
def test_criterion(number):
    r = _report(acceptance.CRITERIA[number - 1](SEED))
    _first[number] = r
    assert r.number == number
    assert r.ok, r.detail


def test_criterion_14_determinism():
    first = [_first.get(n) or acceptance.CRITERIA[n - 1](SEED) for n in range(1, 14)]
    r = _report(acceptance.criterion_14(SEED, first))
    assert r.ok, r.detail


def test_summary_table(capsys):
    results = acceptance.run_all(SEED)
    with capsys.disabled():
        print()
        print(acceptance.render(results), end="")
        print(f"{sum(r.ok for r in results)}/{len(results)} criteria passed")
    assert len(results) == 14
