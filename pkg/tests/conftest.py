import pytest

from cseqgraph.ordinals import parse_ordinal


def O(text):
    return parse_ordinal(str(text))


@pytest.fixture
def o():
    return O


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, _desc, _limit in CRITERIA:
        terminalreporter.write_line(RESULTS.get(key, f"{key}: NOT RUN"))
