import random
from itertools import combinations

import pytest
from hypothesis import settings, strategies as st

from hypercover.core import Graph2, ThreeGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_three_graph(rng: random.Random, n: int, p: float | None = None) -> ThreeGraph:
    p = rng.random() if p is None else p
    return ThreeGraph(n, [t for t in combinations(range(n), 3) if rng.random() < p])


def random_graph2(rng: random.Random, n: int, p: float | None = None) -> Graph2:
    p = rng.random() if p is None else p
    return Graph2(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@st.composite
def three_graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    chosen = draw(st.lists(st.sampled_from(triples), unique=True)) if triples else []
    return ThreeGraph(n, chosen)


@st.composite
def graphs2(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph2(n, chosen)


@pytest.fixture
def rng():
    return random.Random(12345)
