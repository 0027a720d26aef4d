import pytest

from decstruct import Gamble, Pair, SubstitutionScheme
from decstruct.phenomena import ALLAIS_SCHEME, ELLSBERG_SCHEME


@pytest.fixture
def scheme():
    """Default probability cutoffs with an arbitrary value binning."""
    return SubstitutionScheme(value_cutoffs=(100.0, 1000.0))


@pytest.fixture
def allais_scheme():
    return ALLAIS_SCHEME


@pytest.fixture
def ellsberg_scheme():
    return ELLSBERG_SCHEME


@pytest.fixture
def crossing_pair():
    # X small probability / large reward, Y intermediate probability / small reward
    return Pair(Gamble.of((0.1, 500.0)), Gamble.of((0.5, 50.0)), "cross")



def pytest_terminal_summary(terminalreporter):
    import sys

    results = []
    for name, mod in list(sys.modules.items()):
        if name.split(".")[-1] == "test_acceptance":
            results = getattr(mod, "RESULTS", results)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
