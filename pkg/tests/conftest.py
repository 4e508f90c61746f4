import pytest

from socketlab import bundled, catalog, gait, ppt

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_log():
    # Hand out the very list the terminal-summary hook reads; importing
    # tests.conftest from a test would create a second module instance.
    return ACCEPTANCE_RESULTS


@pytest.fixture(scope="session")
def default_catalog():
    return catalog.load_default_catalog()


@pytest.fixture(scope="session")
def measured_matrix():
    return ppt.PPTMatrix.load(bundled.ppt_matrix_path())


@pytest.fixture(scope="session")
def custom_trial():
    return gait.load_trial(bundled.data_path("gait_custom.csv"), bundled.data_path("gait_custom_events.csv"))


@pytest.fixture(scope="session")
def own_trial():
    return gait.load_trial(bundled.data_path("gait_own.csv"), bundled.data_path("gait_own_events.csv"))
