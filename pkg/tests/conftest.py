import os
from pathlib import Path

import pytest

from treeproj.formats import load_hypergraph
from treeproj.hypergraph import Hypergraph

FIXTURES = Path(__file__).parent / "fixtures"


def hg(*edges, nodes=None):
    """``hg("ABC", "CD")`` builds a hypergraph from strings of one-letter nodes."""
    return Hypergraph([frozenset(e) for e in edges], nodes)


def S(text):
    return frozenset(text)


@pytest.fixture(scope="session")
def h1p():
    return load_hypergraph(FIXTURES / "h1p.hg")


@pytest.fixture(scope="session")
def h2p():
    return load_hypergraph(FIXTURES / "h2p.hg")


@pytest.fixture(scope="session")
def tri():
    return load_hypergraph(FIXTURES / "tri.hg")


@pytest.fixture(scope="session")
def p3():
    return load_hypergraph(FIXTURES / "p3.hg")


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False, help="run long tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "long: slow test, skipped unless --run-long or TPJ_LONG=1")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long") or os.environ.get("TPJ_LONG"):
        return
    skip = pytest.mark.skip(reason="long test: use --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


# acceptance lines, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
