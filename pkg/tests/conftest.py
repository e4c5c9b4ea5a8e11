from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from structctrl.catalog import eq4_pair, repeated_rows_pair
from structctrl.instances import generate_random
from structctrl.model import graph_of_pair

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def eq4():
    return eq4_pair()


@pytest.fixture
def eq4_graph():
    return graph_of_pair(eq4_pair())


@pytest.fixture
def repeated():
    return repeated_rows_pair()


@st.composite
def binary_pairs(draw, max_n: int = 4, max_m: int = 2, max_q: int = 7):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    q = draw(st.integers(1, max_q))
    density = draw(st.sampled_from([0.2, 0.35, 0.5, 0.7]))
    seed = draw(st.integers(0, 10**6))
    return generate_random(n, m, q, density, seed)


@st.composite
def unitary_pairs(draw, max_n: int = 5, max_m: int = 2, max_q: int = 9):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    q = draw(st.integers(1, max_q))
    seed = draw(st.integers(0, 10**6))
    return generate_random(n, m, q, seed=seed, mode="unitary")


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
