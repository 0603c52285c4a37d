import mpmath as mp
import pytest

from gammalab.context import _reference_gamma_at, make_context
from gammalab.zeros import bundled_zeros_path, load_zeros


def mpf_from(s: str, dps: int = 60) -> mp.mpf:
    with mp.workdps(dps):
        return +mp.mpf(s)


def assert_close(value, expected: str, tol: str, dps: int = 80):
    """|value - expected| <= tol, evaluated well above both magnitudes."""
    with mp.workdps(dps):
        delta = abs(mp.mpf(value) - mp.mpf(expected))
        assert delta <= mp.mpf(tol), (
            f"|{mp.nstr(mp.mpf(value), 25)} - {expected}| = "
            f"{mp.nstr(delta, 4)} > {tol}"
        )


def printed_tol(printed: str, ulps: float = 0.5) -> str:
    """Tolerance of `ulps` units in the last printed decimal place."""
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return mp.nstr(mp.mpf(ulps) * mp.mpf(10) ** (-decimals), 3)


def gamma_at(dps: int) -> mp.mpf:
    return _reference_gamma_at(dps)


@pytest.fixture(scope="session")
def ctx25():
    return make_context(25)


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)


@pytest.fixture(scope="session")
def bundled_zeros():
    return load_zeros(bundled_zeros_path(), 10**5)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion test, printed at the end
# ---------------------------------------------------------------------------

_acceptance_results = []


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for name, outcome in sorted(_acceptance_results):
        tw.write_line(f"{outcome.upper():6s} {name}")
