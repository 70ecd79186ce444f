import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gpcenter.graph import Graph, Profile

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n=1, max_n=12, extra=0.3):
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and draw(st.floats(0, 1)) < extra:
                edges.add((u, v))
    return Graph(n, sorted(edges))


@st.composite
def graph_and_profile(draw, max_n=12, max_w=6, extra=0.3):
    g = draw(connected_graphs(max_n=max_n, extra=extra))
    support = draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=g.n, unique=True))
    weights = {v: draw(st.integers(1, max_w)) for v in support}
    return g, Profile(weights)


def brute_values(g: Graph, pi: Profile) -> np.ndarray:
    from gpcenter.oracle import all_pairs, radius_table

    return radius_table(all_pairs(g), pi)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
