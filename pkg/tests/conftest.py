from fractions import Fraction

import pytest

from nctrap.algebra import NCParams, TrapConfig

# TrapUnits example: mu = hbar = omega_rho = 1, omega_c = 1/2
OMEGA_C = Fraction(1, 2)
THETA = Fraction(1, 10)
ETA = Fraction(1, 25)


@pytest.fixture
def trap_exact():
    return TrapConfig.trap_units(OMEGA_C)


@pytest.fixture
def nc_exact():
    return NCParams(THETA, ETA)


@pytest.fixture
def trap_float():
    return TrapConfig.trap_units(0.5)


@pytest.fixture
def nc_float():
    return NCParams(0.1, 0.04)


@pytest.fixture
def nc_zero():
    return NCParams(0.0, 0.0)


# acceptance verdicts, one line per criterion in the terminal summary

_VERDICTS = pytest.StashKey()


def pytest_configure(config):
    config.stash[_VERDICTS] = {}


@pytest.fixture
def verdict(request):
    """Record ``verdict(key, ok, detail)`` for the summary and return ``ok``."""
    store = request.config.stash[_VERDICTS]

    def record(key, ok, detail):
        store[key] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_VERDICTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(store, key=lambda k: (int(k.rstrip("abcdefg")), k)):
        ok, detail = store[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
