import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

CATALOG = HERE / "data" / "connected_le7.g6"


@pytest.fixture(scope="session")
def catalog():
    from kgrundy.graphio import read_graph6_file

    return list(read_graph6_file(CATALOG))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, msg) in mod.RESULTS.items():
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {msg}")
