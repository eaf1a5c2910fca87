"""Acceptance suite: one PASS/FAIL line per criterion, printed outside capture."""
import pytest

from biasmat.acceptance import CRITERIA, run_one

# seconds; criteria without a stated limit get a generous ceiling
TIME_LIMITS = {"1": 120, "2": 300, "9": 300}
DEFAULT_LIMIT = 300


@pytest.mark.parametrize("key", list(CRITERIA), ids=[f"{k}-{label}" for k, (label, _) in CRITERIA.items()])
def test_criterion(key, capsys):
    r = run_one(key, seed=0)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.detail
    assert r.elapsed < TIME_LIMITS.get(key, DEFAULT_LIMIT), f"took {r.elapsed:.1f}s"
