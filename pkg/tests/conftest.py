import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def subsets(draw, universe=15, sizes=(3, 6, 9, 12, 15)):
    """Sorted subset of 1..universe whose size is a multiple of 3."""
    size = draw(st.sampled_from([s for s in sizes if s <= universe]))
    vals = draw(st.lists(st.integers(1, universe), min_size=size, max_size=size, unique=True))
    return sorted(vals)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "REPORT", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session", autouse=True)
def _compile_kernels():
    # JIT compilation happens once per process; do it before any timing
    from sumtriples.solvers import Tier, count
    from sumtriples.state import from_full

    for tier in Tier:
        count(from_full(1), tier)
