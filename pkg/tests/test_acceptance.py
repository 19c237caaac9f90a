"""Runs each acceptance criterion once and prints a PASS/FAIL line for it."""

import pytest

from stabaut import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys):
    result = acceptance.run(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.within_budget, f"{result.seconds:.1f}s exceeds {result.budget}s"
