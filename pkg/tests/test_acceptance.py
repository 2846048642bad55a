"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from g2micro.acceptance import CRITERIA, Outcome


@pytest.mark.parametrize("number,name,check", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, name, check, capsys):
    passed, detail = check()
    line = Outcome(number, name, bool(passed), detail).line()
    with capsys.disabled():
        print(f"\n{line}", end="")
    assert passed, detail
