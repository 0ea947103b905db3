"""Potential functions on vertex subsets and the gap predicates built on them.

For a flavor with vertex weighting ``rho(v)`` (a function of the capacity) and
a constant edge weighting ``rho_e``,

    rho(A) = sum(rho(v) for v in A) - rho_e * |E(G[A])|.

Flavors:

=================  ======================================  ==========
flavor             rho(v)                                  rho_e
=================  ======================================  ==========
multi-degree       2D + 1 + 2c                             2D + 2
simple-degree      3D + 2 + 3c                             3D + 3
multi-component    as multi-degree for odd D;              2D + 1
                   2D + 2c if c <= (D-2)/2, else
                   2D + 2c - 1 for even D
=================  ======================================  ==========
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .coloring import ColorMode, solve
from .errors import BadFlavorForD, BadFlavorForGraph, EmptySubset, TooLarge
from .graph import (
    WeightedMultigraph,
    boundary,
    crossing_edges,
    edge_count,
    induced_subgraph,
)

DEFAULT_SUBSET_CAP = 24


class PotentialFlavor(str, enum.Enum):
    MULTI_DEGREE = "md"
    SIMPLE_DEGREE = "sd"
    MULTI_COMPONENT = "me"

    @property
    def mode(self) -> ColorMode:
        return ColorMode.COMPONENT if self is PotentialFlavor.MULTI_COMPONENT else ColorMode.DEGREE


@dataclass(frozen=True)
class PotentialConstants:
    rho0: int
    rhoPlus: int
    rhoE: int
    rhoStar: int
    alpha: int


def check_flavor(flavor: PotentialFlavor | str, D: int) -> PotentialFlavor:
    flavor = PotentialFlavor(flavor)
    if D < 1:
        raise BadFlavorForD(f"D must be >= 1, got {D}")
    if flavor is PotentialFlavor.SIMPLE_DEGREE and D < 2:
        raise BadFlavorForD("simple-degree potential is defined for D >= 2 only")
    return flavor


def check_flavor_for_graph(G: WeightedMultigraph, flavor: PotentialFlavor | str) -> PotentialFlavor:
    flavor = check_flavor(flavor, G.D)
    if flavor is PotentialFlavor.SIMPLE_DEGREE and not G.is_simple:
        raise BadFlavorForGraph("simple-degree potential applies to simple graphs only")
    return flavor


def vertex_potential(flavor: PotentialFlavor | str, D: int, c: int) -> int:
    """Potential of a single vertex of capacity c."""
    flavor = check_flavor(flavor, D)
    if flavor is PotentialFlavor.SIMPLE_DEGREE:
        return 3 * D + 2 + 3 * c
    if flavor is PotentialFlavor.MULTI_DEGREE or D % 2 == 1:
        return 2 * D + 1 + 2 * c
    # even D: integers split exactly into c <= (D-2)/2 and c >= D/2
    if 2 * c <= D - 2:
        return 2 * D + 2 * c
    assert 2 * c >= D
    return 2 * D + 2 * c - 1


def edge_potential(flavor: PotentialFlavor | str, D: int) -> int:
    flavor = check_flavor(flavor, D)
    if flavor is PotentialFlavor.SIMPLE_DEGREE:
        return 3 * D + 3
    if flavor is PotentialFlavor.MULTI_DEGREE or D % 2 == 1:
        return 2 * D + 2
    return 2 * D + 1


def potential_constants(flavor: PotentialFlavor | str, D: int) -> PotentialConstants:
    flavor = check_flavor(flavor, D)
    simple = flavor is PotentialFlavor.SIMPLE_DEGREE
    return PotentialConstants(
        rho0=vertex_potential(flavor, D, 0),
        rhoPlus=vertex_potential(flavor, D, D + 1),
        rhoE=edge_potential(flavor, D),
        rhoStar=-3 if simple else -2,
        alpha=3 if simple else 2,
    )


def potential(G: WeightedMultigraph, flavor: PotentialFlavor | str, A: Iterable[int] | None = None) -> int:
    """rho(A); A defaults to the whole vertex set."""
    flavor = check_flavor_for_graph(G, flavor)
    A = list(G.vertices()) if A is None else sorted(set(A))
    if not A:
        raise EmptySubset("potential of the empty set")
    vertex_sum = sum(vertex_potential(flavor, G.D, G.capacity(v)) for v in A)
    return vertex_sum - edge_potential(flavor, G.D) * edge_count(G, A)


def vertex_potentials(G: WeightedMultigraph, flavor: PotentialFlavor | str) -> list[int]:
    flavor = check_flavor_for_graph(G, flavor)
    return [vertex_potential(flavor, G.D, G.capacity(v)) for v in G.vertices()]


def _size_window(n: int, min_size: int, proper: bool) -> tuple[int, int]:
    hi = n - 1 if proper else n
    if min_size > hi:
        raise ValueError(f"no subsets with {min_size} <= |S| <= {hi} on {n} vertices")
    return min_size, hi


def min_potential_subset(
    G: WeightedMultigraph,
    flavor: PotentialFlavor | str,
    min_size: int = 2,
    proper: bool = True,
    cap: int = DEFAULT_SUBSET_CAP,
    predicate=None,
) -> tuple[list[int], int]:
    """Least-potential subset with min_size <= |S| (<= n-1 when proper).

    Exact branch and bound over include/exclude decisions in label order.
    Ties go to the lexicographically least sorted vertex tuple.  An optional
    ``predicate(S)`` restricts the feasible subsets (the bound stays valid
    since it never depends on feasibility).
    """
    flavor = check_flavor_for_graph(G, flavor)
    n = G.n
    if n > cap:
        raise TooLarge(f"subset search capped at {cap} vertices, graph has {n}")
    lo, hi = _size_window(n, min_size, proper)
    rho_v = vertex_potentials(G, flavor)
    rho_e = edge_potential(flavor, G.D)
    adj = G.adjacency
    # edges from v to later labels, the undecided part of the bound
    later = [sum(m for u, m in adj[v] if u > v) for v in range(n)]

    # Include-first DFS meets subsets in lexicographic order, so a later
    # subset never wins a tie and the bound may prune on equality.
    best: list = [None, None]  # value, subset tuple
    chosen: list[int] = []
    into = [0] * n  # multiplicity from v into the chosen set

    def visit(i: int, value: int, fresh: bool) -> None:
        size = len(chosen)
        if fresh and size >= lo and (predicate is None or predicate(chosen)):
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, tuple(chosen)
        if i == n or size == hi or size + (n - i) < lo:
            return
        if best[0] is not None:
            bound = value
            for v in range(i, n):
                gain = rho_v[v] - rho_e * (into[v] + later[v])
                if gain < 0:
                    bound += gain
            if bound >= best[0]:
                return
        delta = rho_v[i] - rho_e * into[i]
        chosen.append(i)
        for u, m in adj[i]:
            into[u] += m
        visit(i + 1, value + delta, True)
        for u, m in adj[i]:
            into[u] -= m
        chosen.pop()
        visit(i + 1, value, False)

    visit(0, 0, False)
    if best[0] is None:
        raise ValueError("no subset satisfies the constraints")
    return list(best[1]), best[0]


def min_potential_exhaustive(
    G: WeightedMultigraph, flavor: PotentialFlavor | str, min_size: int = 2, proper: bool = True, predicate=None
) -> tuple[list[int], int]:
    """Reference enumeration of every admissible subset (oracle for the search)."""
    lo, hi = _size_window(G.n, min_size, proper)
    best = None
    for size in range(lo, hi + 1):
        for S in combinations(range(G.n), size):
            if predicate is not None and not predicate(list(S)):
                continue
            val = potential(G, flavor, S)
            if best is None or val < best[0] or (val == best[0] and S < best[1]):
                best = (val, S)
    if best is None:
        raise ValueError("no subset satisfies the constraints")
    return list(best[1]), best[0]


# --------------------------------------------------------------------------
# gap predicates


@dataclass
class GapRecord:
    predicate: str
    subset: list[int] | None
    value: int | None
    threshold: int | None
    holds: bool
    detail: dict = field(default_factory=dict)


@dataclass
class GapReport:
    flavor: str
    D: int
    records: list[GapRecord]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.records)

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "D": self.D,
            "holds": self.holds,
            "records": [asdict(r) for r in self.records],
        }


def _coloring_forces_boundary(G: WeightedMultigraph, S: list[int], mode: ColorMode) -> dict:
    """For each x on the boundary of S, can some coloring of G[S] put x in F?"""
    H = induced_subgraph(G, S)
    index = {v: i for i, v in enumerate(S)}
    escapes = []
    for x in sorted(boundary(G, S)):
        if solve(H, mode, fixed={index[x]: "F"}).satisfiable:
            escapes.append(x)
    return {"boundary": sorted(boundary(G, S)), "boundary_in_F_possible": escapes}


def audit_gap_predicates(
    G: WeightedMultigraph, flavor: PotentialFlavor | str, cap: int = DEFAULT_SUBSET_CAP
) -> GapReport:
    """Evaluate the gap inequalities over proper subsets of this concrete graph.

    Records, depending on flavor and parity of D:

    * ``common_gap``: every proper S with 2 <= |S| <= n-1 has
      rho(S) > rho0 + 2 + rho*  (all flavors except multi-component, even D);
    * ``weak_gap``: rho(S) >= D, and rho(S) == D only with one crossing edge
      and rho(V-S) == D  (multi-component, even D);
    * ``strong_gap``: rho(S) >= 2D+1 whenever S has at least two crossing
      edges, counted with multiplicity  (multi-component, even D);
    * ``min_set_structure``: when the least-potential proper set S is at or
      under rho0 + 2 + rho*, whether |S| != n-1, every outside vertex sends at
      most one edge into S, and every boundary vertex of S is in M under all
      colorings of G[S].

    These are measurements, not proofs: on graphs that are not minimum
    counterexamples any of them may fail.
    """
    flavor = check_flavor_for_graph(G, flavor)
    if G.n > cap:
        raise TooLarge(f"gap audit capped at {cap} vertices, graph has {G.n}")
    D = G.D
    k = potential_constants(flavor, D)
    records: list[GapRecord] = []
    if G.n < 3:
        # no S with 2 <= |S| <= n-1
        return GapReport(flavor.value, D, [GapRecord("common_gap", None, None, None, True, {"vacuous": True})])

    S, val = min_potential_subset(G, flavor, 2, True, cap)
    even_component = flavor is PotentialFlavor.MULTI_COMPONENT and D % 2 == 0
    if not even_component:
        threshold = k.rho0 + 2 + k.rhoStar
        records.append(GapRecord("common_gap", S, val, threshold, val > threshold, {"strict": True}))
    else:
        detail: dict = {}
        holds = val >= D
        if val == D:
            crossing = crossing_edges(G, S)
            rest = [v for v in G.vertices() if v not in set(S)]
            rest_val = potential(G, flavor, rest)
            detail = {"crossing_edges": crossing, "complement_potential": rest_val}

            def breaks_equality(T: list[int]) -> bool:
                rest_T = [v for v in G.vertices() if v not in set(T)]
                return crossing_edges(G, T) != 1 or potential(G, flavor, rest_T) != D

            # D is the minimum, so any set violating the equality case at value D
            # is a minimizer of the restricted search
            try:
                T, tval = min_potential_subset(G, flavor, 2, True, cap, predicate=breaks_equality)
            except ValueError:
                T, tval = None, None
            holds = tval is None or tval > D
            if not holds:
                detail["equality_violator"] = T
        records.append(GapRecord("weak_gap", S, val, D, holds, detail))
        try:
            S2, val2 = min_potential_subset(
                G, flavor, 2, True, cap, predicate=lambda T: crossing_edges(G, T) >= 2
            )
            records.append(GapRecord("strong_gap", S2, val2, 2 * D + 1, val2 >= 2 * D + 1))
        except ValueError:
            records.append(GapRecord("strong_gap", None, None, 2 * D + 1, True, {"vacuous": True}))

    threshold = k.rho0 + 2 + k.rhoStar
    if val <= threshold:
        inside = set(S)
        heavy = [v for v in G.vertices() if v not in inside and sum(m for u, m in G.adjacency[v] if u in inside) >= 2]
        forced = _coloring_forces_boundary(G, S, flavor.mode)
        detail = {
            "size_not_n_minus_1": len(S) != G.n - 1,
            "outside_vertices_with_two_edges_in": heavy,
            **forced,
        }
        holds = detail["size_not_n_minus_1"] and not heavy and not forced["boundary_in_F_possible"]
        records.append(GapRecord("min_set_structure", S, val, threshold, holds, detail))
    else:
        records.append(GapRecord("min_set_structure", S, val, threshold, True, {"vacuous": True}))
    return GapReport(flavor.value, D, records)
