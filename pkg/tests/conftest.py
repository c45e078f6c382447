import pytest
from hypothesis import settings

from qracah import QQ, PrimeField, build_triple, validate_params

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

F7 = PrimeField(7)
FP = PrimeField(1000003)


def rational_params(q, a, b, c, d):
    return validate_params(QQ(q), QQ(a), QQ(b), QQ(c), d)


@pytest.fixture(scope="session")
def generic2():
    """The (q, a, b, c, d) = (2, 3, 5, 7, 2) realization in the first basis."""
    return build_triple(rational_params(2, 3, 5, 7, 2))


@pytest.fixture(scope="session")
def modular2():
    return build_triple(rational_params(2, 3, 3, 3, 2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
