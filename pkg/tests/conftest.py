import numpy as np
import pytest

from motifsieve.graph import CostSpec, make_instance


def path_rbr(motif, k=3, costs=None):
    """Path 1-2-3 colored r, b, r."""
    return make_instance(3, [(1, 2), (2, 3)], ["r", "b", "r"], motif, k, costs=costs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def path_yes():
    return path_rbr({"r": 2, "b": 1})


@pytest.fixture
def path_no():
    return path_rbr({"r": 1, "b": 1})


@pytest.fixture
def one_substitution():
    return path_rbr({"r": 3}, costs=CostSpec(1, 5, 5, tau=1))


CRITERIA: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    """Remember one pass/fail line for the end-of-run summary."""
    CRITERIA[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[number])
