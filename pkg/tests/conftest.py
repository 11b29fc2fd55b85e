import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cosetkit.catalog import CATALOG  # noqa: E402
from cosetkit.group import CayleyGraph  # noqa: E402
from oracles import Cosets  # noqa: E402


@functools.lru_cache(maxsize=None)
def graph(name: str) -> CayleyGraph:
    return CayleyGraph.from_spec(CATALOG[name].spec())


@functools.lru_cache(maxsize=None)
def oracle(name: str) -> Cosets:
    return Cosets(graph(name))


@pytest.fixture
def z22():
    return graph("z2xz2")


@pytest.fixture
def s3():
    return graph("s3_all")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
