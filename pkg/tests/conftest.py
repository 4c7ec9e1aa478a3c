import itertools
from math import prod

import pytest

_acceptance = []


def factor_multisets(n, smallest=2):
    """All multisets of factors >= 2 with product n, as non-decreasing tuples."""
    if n == 1:
        yield ()
        return
    for f in range(smallest, n + 1):
        if n % f == 0:
            for rest in factor_multisets(n // f, f):
                yield (f,) + rest


def factor_sequences(n):
    """All ordered factor sequences (factors >= 2) with product n."""
    seen = set()
    for ms in factor_multisets(n):
        for seq in itertools.permutations(ms):
            if seq not in seen:
                seen.add(seq)
                yield seq


@pytest.fixture(scope="session")
def all_specs_upto():
    def gen(limit):
        return [ms for n in range(2, limit + 1) for ms in factor_multisets(n)]
    return gen


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, dur in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}  ({dur:.2f}s)")
