import pytest

from nonconformist import build_graph, make_config, minority_rule
from nonconformist.kernels import compiled_available

BACKENDS = ["python"] + (["cython"] if compiled_available() else [])


@pytest.fixture
def single_edge():
    """Minority at v1, majority at v2, one edge."""
    g = build_graph(2, [(1, 2)])
    return make_config(g, minority_rule(1))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
