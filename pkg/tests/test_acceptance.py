"""Acceptance criteria 1-9, one line each, all at exact equality.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import sys
import time

import pytest

from sl2weight import chords as ch
from sl2weight import verify

# filled as criteria run; conftest prints it after the session
RESULTS: list[str] = []

ENUMERATION_COUNTS = [1, 1, 2, 5, 18, 105]


def _cfg():
    return verify.RunConfig(max_order=6, time_budget_seconds=1800, seed=0, progress=False)


def _criterion_1():
    return [verify.check_closed_forms(_cfg(), max_total=9)]


def _criterion_2():
    counts = [len(ch.enumerate_diagrams(n)) for n in range(6)]
    enum = verify.CheckResult("class counts 1, 2, 5, 18, 105 by enumeration",
                              counts == ENUMERATION_COUNTS, len(counts), f"{counts}")
    return [enum] + verify.check_oracle(_cfg())


def _criterion_3():
    return verify.check_recurrences(_cfg())


def _criterion_4():
    cfg = _cfg()
    return verify.check_four_term(cfg) + [verify.check_isograph(cfg)]


def _criterion_5():
    return verify.check_hopf(_cfg(), max_vertices=6, max_total=9)


def _criterion_6():
    return verify.check_projection_values(_cfg())


def _criterion_7():
    return verify.check_generating_functions(_cfg(), order=11)


def _criterion_8():
    return verify.check_circumference(_cfg())


def _criterion_9():
    return verify.check_combinatorics(_cfg())


CRITERIA = {
    1: ("closed-form reproduction", _criterion_1),
    2: ("oracle equivalence", _criterion_2),
    3: ("recurrence and closed-form agreement", _criterion_3),
    4: ("four-term vanishing and graph invariance", _criterion_4),
    5: ("Hopf suite", _criterion_5),
    6: ("projection values and degrees", _criterion_6),
    7: ("generating functions", _criterion_7),
    8: ("circumference link", _criterion_8),
    9: ("combinatorics", _criterion_9),
}


def run_criterion(k):
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in checks)
    line = f"criterion {k} {'PASS' if ok else 'FAIL'}: {title} ({len(checks)} checks, {elapsed:.1f}s)"
    return ok, line, checks


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line, checks = run_criterion(k)
    RESULTS.append(line)
    print(line)
    failed = [c.line() for c in checks if not c.passed]
    assert ok, "\n".join(failed)


if __name__ == "__main__":
    all_ok = True
    for k in sorted(CRITERIA):
        ok, line, checks = run_criterion(k)
        all_ok &= ok
        print(line)
        for c in checks:
            print("    " + c.line())
    sys.exit(0 if all_ok else 1)
