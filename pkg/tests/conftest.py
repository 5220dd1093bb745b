import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from spherahall.category import IndecLabel, make_object

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=15,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def objects(draw, d, max_dim=4, shifts=(-3, 3), max_summands=None):
    """Random isoclasses over the given d with bounded total homology dimension."""
    budget = draw(st.integers(0, max_dim))
    labels = []
    while budget > 0 and (max_summands is None or len(labels) < max_summands):
        n = 1 if d == 0 else draw(st.integers(1, budget))
        branch = draw(st.sampled_from([1, 2])) if d == 0 else 1
        labels.append(IndecLabel(draw(st.integers(*shifts)), n, branch))
        budget -= n
    return make_object(d, labels)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {label}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
