import pytest

from gravent.config import paper_defaults
from gravent.params import GravityModel, derive

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ref_config():
    return paper_defaults()


@pytest.fixture(scope="session")
def ref_quantum(ref_config):
    return derive(ref_config, GravityModel.quantum())


@pytest.fixture(scope="session")
def ref_classical(ref_config):
    return derive(ref_config, GravityModel.classical_optimal())


@pytest.fixture
def acceptance_line():
    """Print and remember one PASS/FAIL line per acceptance criterion."""

    def emit(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
