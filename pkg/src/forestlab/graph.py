"""Weighted loopless multigraphs.

Vertices are the integers ``0..n-1``.  Each vertex carries an integer weight
``1 <= w(v) <= D+2``; the capacity ``c(v) = D+2-w(v)`` is always derived from
the weight and never stored.  Parallel edges are kept as a multiplicity on a
single unordered pair, and a pair with multiplicity two or more counts as a
2-cycle wherever acyclicity matters.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    BadIndex,
    EmptySubset,
    GraphError,
    GraphSyntaxError,
    LoopEdge,
    WeightOutOfRange,
)

# Text and JSON input refuse multiplicities above this; three parallel edges
# already make a pair uncolorable in both regimes.
MAX_IO_MULTIPLICITY = 3

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedMultigraph:
    n: int
    D: int
    weights: tuple[int, ...]
    edges: tuple[Edge, ...]
    # original labels after induced_subgraph; not part of graph identity
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @cached_property
    def multiplicity(self) -> dict[tuple[int, int], int]:
        return {(u, v): m for u, v, m in self.edges}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(neighbor, multiplicity)`` in label order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, m in self.edges:
            adj[u].append((v, m))
            adj[v].append((u, m))
        return tuple(tuple(sorted(row)) for row in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(m for _, m in row) for row in self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(m for _, _, m in self.edges)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for _, _, m in self.edges)

    def mult(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.multiplicity.get((u, v), 0)

    def capacity(self, v: int) -> int:
        return self.D + 2 - self.weights[v]

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.adjacency[v]]

    def vertices(self) -> range:
        return range(self.n)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def with_weights(self, weights: Sequence[int]) -> WeightedMultigraph:
        return build_graph(self.n, self.D, weights, self.edges)

    def with_D(self, D: int) -> WeightedMultigraph:
        return build_graph(self.n, D, self.weights, self.edges)

    def __str__(self) -> str:
        return f"WeightedMultigraph(n={self.n}, m={self.num_edges}, D={self.D})"


def build_graph(
    n: int,
    D: int,
    weights: Sequence[int] | None = None,
    edges: Iterable[Sequence[int]] = (),
) -> WeightedMultigraph:
    """Validate and normalize a weighted multigraph.

    ``edges`` holds ``(u, v)`` or ``(u, v, mult)`` items; repeated pairs are
    merged by adding their multiplicities.  ``weights`` defaults to all ones.
    """
    if n < 1:
        raise GraphError(f"graph needs at least one vertex, got n={n}")
    if D < 1:
        raise GraphError(f"D must be a positive integer, got {D}")
    if weights is None:
        weights = [1] * n
    weights = tuple(int(x) for x in weights)
    if len(weights) != n:
        raise GraphError(f"expected {n} weights, got {len(weights)}")
    for v, x in enumerate(weights):
        if not 1 <= x <= D + 2:
            raise WeightOutOfRange(f"w({v})={x} outside [1, {D + 2}]")
    merged: dict[tuple[int, int], int] = {}
    for item in edges:
        if len(item) == 2:
            u, v = item
            m = 1
        else:
            u, v, m = item
        u, v, m = int(u), int(v), int(m)
        if not (0 <= u < n and 0 <= v < n):
            raise BadIndex(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if m < 1:
            raise GraphError(f"edge ({u},{v}) has multiplicity {m} < 1")
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0) + m
    normalized = tuple((u, v, m) for (u, v), m in sorted(merged.items()))
    return WeightedMultigraph(n, D, weights, normalized)


def _check_subset(G: WeightedMultigraph, A: Iterable[int]) -> list[int]:
    verts = sorted(set(A))
    for v in verts:
        if not 0 <= v < G.n:
            raise BadIndex(f"vertex {v} not in graph on {G.n} vertices")
    return verts


def induced_subgraph(G: WeightedMultigraph, A: Iterable[int]) -> WeightedMultigraph:
    """G[A], relabeled to ``0..|A|-1`` in increasing label order.

    The returned graph's ``labels`` field maps new labels back to ``G``'s.
    """
    verts = _check_subset(G, A)
    if not verts:
        raise EmptySubset("induced subgraph of the empty set")
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v], m) for u, v, m in G.edges if u in index and v in index
    ]
    H = build_graph(len(verts), G.D, [G.weights[v] for v in verts], edges)
    return WeightedMultigraph(H.n, H.D, H.weights, H.edges, labels=tuple(verts))


def edge_count(G: WeightedMultigraph, A: Iterable[int]) -> int:
    """|E(G[A])| counted with multiplicity."""
    inside = set(A)
    return sum(m for u, v, m in G.edges if u in inside and v in inside)


def crossing_edges(G: WeightedMultigraph, A: Iterable[int]) -> int:
    """|E(A, V-A)| counted with multiplicity."""
    inside = set(A)
    return sum(m for u, v, m in G.edges if (u in inside) != (v in inside))


class DisjointSet:
    """Union-find with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def find_cycle_edge(G: WeightedMultigraph, A: Iterable[int]) -> Edge | None:
    """First edge (in edge order) closing a cycle inside G[A], or None."""
    inside = set(A)
    dsu = DisjointSet(G.n)
    for u, v, m in G.edges:
        if u in inside and v in inside:
            if m >= 2 or not dsu.union(u, v):
                return (u, v, m)
    return None


def is_forest(G: WeightedMultigraph, A: Iterable[int] | None = None) -> bool:
    """True iff G[A] is acyclic; a parallel pair inside A is a cycle."""
    return find_cycle_edge(G, G.vertices() if A is None else A) is None


def components(G: WeightedMultigraph, A: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of G[A] as sorted vertex lists, ordered by least label."""
    inside = set(G.vertices() if A is None else A)
    dsu = DisjointSet(G.n)
    for u, v, _ in G.edges:
        if u in inside and v in inside:
            dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in sorted(inside):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values())


def is_connected(G: WeightedMultigraph) -> bool:
    return len(components(G)) == 1


def boundary(G: WeightedMultigraph, A: Iterable[int]) -> set[int]:
    """Vertices of A having at least one neighbor outside A."""
    inside = set(A)
    return {v for v in inside if any(u not in inside for u, _ in G.adjacency[v])}


def bridges(G: WeightedMultigraph) -> list[tuple[int, int]]:
    """Cut edges as sorted pairs; a parallel pair is never a cut edge."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    found: list[tuple[int, int]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # iterative DFS; entries are (vertex, parent, neighbor iterator)
        stack = [(root, -1, iter(G.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u, m in it:
                if u == parent and m == 1:
                    continue
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, v, iter(G.adjacency[u])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found.append((min(v, parent), max(v, parent)))
    return sorted(found)


def remove_edge(G: WeightedMultigraph, u: int, v: int, count: int = 1) -> WeightedMultigraph:
    """Delete ``count`` parallel copies of edge uv."""
    have = G.mult(u, v)
    if have < count:
        raise GraphError(f"edge ({u},{v}) has multiplicity {have} < {count}")
    key = (min(u, v), max(u, v))
    edges = []
    for a, b, m in G.edges:
        if (a, b) == key:
            m -= count
        if m:
            edges.append((a, b, m))
    return build_graph(G.n, G.D, G.weights, edges)


def remove_vertices(G: WeightedMultigraph, A: Iterable[int]) -> WeightedMultigraph:
    drop = set(A)
    return induced_subgraph(G, [v for v in G.vertices() if v not in drop])


def permute(G: WeightedMultigraph, perm: Sequence[int]) -> WeightedMultigraph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    weights = [0] * G.n
    for v in G.vertices():
        weights[perm[v]] = G.weights[v]
    return build_graph(G.n, G.D, weights, [(perm[u], perm[v], m) for u, v, m in G.edges])


# --------------------------------------------------------------------------
# serialization


def serialize_graph(G: WeightedMultigraph) -> str:
    lines = [f"graph {G.n} D={G.D}"]
    lines += [f"w {v} {x}" for v, x in enumerate(G.weights) if x != 1]
    lines += [f"e {u} {v}" if m == 1 else f"e {u} {v} {m}" for u, v, m in G.edges]
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphSyntaxError(f"expected an integer, got {token!r}", lineno) from None


def _check_io_mult(m: int, lineno: int | None) -> None:
    if m > MAX_IO_MULTIPLICITY:
        raise GraphSyntaxError(
            f"multiplicity {m} exceeds the I/O cap of {MAX_IO_MULTIPLICITY}", lineno
        )


def parse_graph(text: str) -> WeightedMultigraph:
    """Parse the line format (or its JSON mirror when the text starts with '{')."""
    if text.lstrip().startswith("{"):
        return graph_from_json(json.loads(text))
    header: tuple[int, int] | None = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "graph":
            if header is not None:
                raise GraphSyntaxError("duplicate graph header", lineno)
            if len(tok) != 3 or not tok[2].startswith("D="):
                raise GraphSyntaxError("header must read 'graph <n> D=<D>'", lineno)
            header = (_int(tok[1], lineno), _int(tok[2][2:], lineno))
        elif kind == "e":
            if len(tok) not in (3, 4):
                raise GraphSyntaxError("edge line must read 'e <u> <v> [mult]'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            m = _int(tok[3], lineno) if len(tok) == 4 else 1
            if u == v:
                raise LoopEdge(f"line {lineno}: loop at vertex {u}")
            if header is None:
                raise GraphSyntaxError("edge before graph header", lineno)
            _check_io_mult(m, lineno)
            edges.append((u, v, m))
        elif kind == "w":
            if len(tok) != 3:
                raise GraphSyntaxError("weight line must read 'w <v> <weight>'", lineno)
            if header is None:
                raise GraphSyntaxError("weight before graph header", lineno)
            weights[_int(tok[1], lineno)] = _int(tok[2], lineno)
        else:
            raise GraphSyntaxError(f"unknown directive {kind!r}", lineno)
    if header is None:
        raise GraphSyntaxError("missing 'graph <n> D=<D>' header")
    n, D = header
    for v in weights:
        if not 0 <= v < n:
            raise BadIndex(f"weight given for vertex {v} outside 0..{n - 1}")
    G = build_graph(n, D, [weights.get(v, 1) for v in range(n)], edges)
    for u, v, m in G.edges:
        _check_io_mult(m, None)
    return G


def graph_to_json(G: WeightedMultigraph) -> dict:
    return {
        "n": G.n,
        "D": G.D,
        "weights": list(G.weights),
        "edges": [list(e) for e in G.edges],
    }


def graph_from_json(data: dict) -> WeightedMultigraph:
    try:
        n, D = int(data["n"]), int(data["D"])
        edges = [tuple(e) for e in data.get("edges", [])]
        weights = data.get("weights")
    except (KeyError, TypeError) as exc:
        raise GraphSyntaxError(f"malformed graph JSON: {exc}") from None
    G = build_graph(n, D, weights, edges)
    for _, _, m in G.edges:
        _check_io_mult(m, None)
    return G
