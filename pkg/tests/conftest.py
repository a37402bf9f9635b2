import pytest

from heisenberg_sc.fock import FockElement, basis_of_degree

ACCEPTANCE_LINES: list[str] = []


def mono(d, *pairs, coeff=1):
    return FockElement.monomial(d, pairs, coeff)


@pytest.fixture
def vac1():
    return FockElement.vacuum(1)


def basis_elements(d, max_weight):
    for n in range(max_weight + 1):
        b = basis_of_degree(d, n)
        for k in range(len(b)):
            yield b.element(k)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
