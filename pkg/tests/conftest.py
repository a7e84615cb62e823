import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lpam import Graph, datasets, gen_lattice  # noqa: E402


@pytest.fixture(scope="session")
def karate():
    return datasets.karate()


@pytest.fixture(scope="session")
def lattice8():
    return gen_lattice(8, 8)


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def k2():
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """``criterion(n, title, check)``: run ``check() -> (ok, detail)`` and log one line.

    Prints ``PASS``/``FAIL criterion n: ...`` and fails the test on ``FAIL``.
    """

    def run(number, title, check):
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failure of the criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]"
        request.config.stash[_ACCEPTANCE].append(line)
        print(line)
        assert ok, line

    return run


@pytest.fixture
def skip_criterion(request):
    def run(number, title, reason):
        line = f"SKIP criterion {number}: {title} [{reason}]"
        request.config.stash[_ACCEPTANCE].append(line)
        pytest.skip(line)

    return run
