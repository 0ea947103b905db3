"""Random and hypothesis-driven graph generators shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from forestlab.graph import WeightedMultigraph, build_graph


def random_multigraph(
    rng: random.Random,
    n: int,
    D: int = 1,
    max_mult: int = 3,
    p: float = 0.4,
    connected: bool = False,
    simple: bool = False,
    weighted: bool = False,
) -> WeightedMultigraph:
    if simple:
        max_mult = 1
    mult: dict[tuple[int, int], int] = {}
    if connected:
        for v in range(1, n):
            mult[(rng.randrange(v), v)] = 1
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                mult[(u, v)] = max(mult.get((u, v), 0), rng.randint(1, max_mult))
    weights = [rng.randint(1, D + 2) for _ in range(n)] if weighted else None
    return build_graph(n, D, weights, [(u, v, m) for (u, v), m in mult.items()])


def random_extra_weight(rng: random.Random, G: WeightedMultigraph, total: int) -> WeightedMultigraph:
    """Spread up to ``total`` units of extra weight over the vertices."""
    weights = [1] * G.n
    for _ in range(total):
        v = rng.randrange(G.n)
        if weights[v] < G.D + 2:
            weights[v] += 1
    return G.with_weights(weights)


@st.composite
def multigraphs(draw, max_n: int = 7, max_mult: int = 3, D=None, weighted: bool = True, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    D = draw(st.integers(1, 4)) if D is None else D
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mults = draw(st.lists(st.integers(0, max_mult), min_size=len(pairs), max_size=len(pairs)))
    weights = draw(st.lists(st.integers(1, D + 2), min_size=n, max_size=n)) if weighted else None
    return build_graph(n, D, weights, [(u, v, m) for (u, v), m in zip(pairs, mults) if m])
