import sys

import pytest

from schottky_scale.multigraph import build_multigraph


@pytest.fixture
def rose2():
    return build_multigraph(1, [(0, 0), (0, 0)])


@pytest.fixture
def theta():
    return build_multigraph(2, [(0, 1), (0, 1), (0, 1)])


@pytest.fixture
def dumbbell():
    return build_multigraph(2, [(0, 0), (0, 1), (1, 1)])


@pytest.fixture
def bs33():
    # two loops + bridge at v0, one loop at v1
    return build_multigraph(2, [(0, 0), (0, 0), (0, 1), (1, 1)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
