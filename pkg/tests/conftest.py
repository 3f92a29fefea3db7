import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from celcs.seqcore import Seq

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("quick", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def seqs(min_n=0, max_n=6):
    """Strategy for sequences with a random period exponent."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, (1 << (1 << n)) - 1).map(lambda v: Seq(n, v))
    )


def seqs_of(n):
    return st.integers(0, (1 << (1 << n)) - 1).map(lambda v: Seq(n, v))


@pytest.fixture
def running_seq():
    from celcs.seqcore import parse_sequence
    return parse_sequence("1101 1001 1000 0000")


# ---------------------------------------------------------------- acceptance summary

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "setup" and rep.skipped:
        _criteria.append((mark.args[0], mark.args[1], "SKIP", 0.0))
    elif rep.when == "call":
        status = "PASS" if rep.passed else "FAIL"
        _criteria.append((mark.args[0], mark.args[1], status, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, duration in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({duration:.1f}s)")
