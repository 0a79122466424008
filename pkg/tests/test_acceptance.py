"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import pytest

from mrrsph import acceptance


@pytest.mark.parametrize("number", range(1, len(acceptance.CRITERIA) + 1), ids=lambda n: f"criterion_{n}")
def test_criterion(number, capsys):
    verdict = acceptance.run(number)
    with capsys.disabled():
        print()
        print(verdict.line())
        for d in verdict.details[1:]:
            print(f"    {d}")
    assert verdict.passed, "; ".join(verdict.details)
