"""Acceptance run: one PASS/FAIL line per criterion, exact equality throughout.

Run directly (``python tests/test_acceptance.py``) or under pytest, where the
lines are also printed in the terminal summary.
"""

import pytest

from podles.suite import CHECKS, run_suite

LINES: list = []


@pytest.fixture(scope="module")
def results():
    out = {}

    def record(r):
        LINES.append(r.line())
        print(r.line(), flush=True)

    for r in run_suite("paper", on_result=record):
        out[r.key] = r
    return out


def _explain(r):
    if r.error:
        return f"{r.key} raised {r.error}"
    bad = r.failures()
    head = "; ".join(f"{i['name']}: expected {i['expected']}, got {i['observed']}" for i in bad[:6])
    more = f" (+{len(bad) - 6} more)" if len(bad) > 6 else ""
    return f"{len(bad)} item(s) failed: {head}{more}"


@pytest.mark.parametrize("key", [k for k, _, _ in CHECKS])
def test_criterion(results, key):
    r = results[key]
    assert r.ok, _explain(r)


if __name__ == "__main__":
    import sys

    rs = run_suite("paper", on_result=lambda r: print(r.line(), flush=True))
    sys.exit(0 if all(r.ok for r in rs) else 1)
