from fractions import Fraction

import pytest

from hpmkit.hpm import ProblemSpec, StateSpec, compute_series

ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title}" + (f" -- {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ground20():
    """(n_r=0, l=0, K=2) through order 20, with its Q table."""
    return compute_series(StateSpec(0, 0), ProblemSpec(2, 20))


@pytest.fixture(scope="session")
def published_coeffs():
    from hpmkit.reference import COEFFS_N1_L0

    return (Fraction(-2),) + COEFFS_N1_L0
