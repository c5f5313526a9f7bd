"""Shared fixtures and the acceptance-criteria summary hook."""

import math

import pytest

from ccsfa1d import AtomicSystem, HalfCyclePulse

ACCEPTANCE_LINES = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number:2d}  {status}  {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def system(kappa=1.0, charge=1.0, f=0.02, gamma=0.1):
    """(atom, pulse) from the reduced field and Keldysh parameter."""
    e0 = f * kappa**3
    return AtomicSystem(kappa, charge), HalfCyclePulse(e0, gamma * e0 / kappa)


@pytest.fixture
def tunneling_system():
    return system()


@pytest.fixture
def short_range_system():
    return system(charge=0.0)
