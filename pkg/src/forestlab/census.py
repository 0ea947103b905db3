"""Isomorphism-free enumeration of small multigraphs and a census of critical ones.

Canonical forms minimize the upper-triangular multiplicity matrix over vertex
orderings.  Orderings are restricted to those that list vertices by their
color-refinement class, which is itself isomorphism-invariant, so the
minimum is still a complete invariant while visiting far fewer than n!
orderings.  ``canonical_form_bruteforce`` tries every ordering and is kept as
the reference.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .coloring import ColorMode, Verdict, is_critical
from .errors import BadParameters, TooLarge
from .graph import WeightedMultigraph, build_graph, graph_to_json, is_connected
from .potential import PotentialFlavor, potential, potential_constants

MAX_ENUM_N = 8
MAX_ENUM_MULT = 3


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    weights: tuple[int, ...]
    matrix: bytes

    def graph(self, D: int) -> WeightedMultigraph:
        mat = np.frombuffer(self.matrix, dtype=np.uint8).reshape(self.n, self.n)
        edges = [(u, v, int(mat[u, v])) for u in range(self.n) for v in range(u + 1, self.n) if mat[u, v]]
        return build_graph(self.n, D, list(self.weights), edges)


def _matrix(G: WeightedMultigraph) -> list[list[int]]:
    mat = [[0] * G.n for _ in range(G.n)]
    for u, v, m in G.edges:
        mat[u][v] = mat[v][u] = m
    return mat


def _refine(mat: list[list[int]], weights: Sequence[int]) -> list[int]:
    """Stable color-refinement classes, numbered by sorted signature."""
    n = len(weights)
    sig = [(weights[v], tuple(sorted(mat[v]))) for v in range(n)]
    while True:
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [ranks[s] for s in sig]
        sig = [(colors[v], tuple(sorted((colors[u], mat[v][u]) for u in range(n) if mat[v][u]))) for v in range(n)]
        if len(set(sig)) == len(ranks):
            return colors


def _form(mat: list[list[int]], weights: Sequence[int], order: Sequence[int]) -> tuple:
    n = len(order)
    return tuple(weights[v] for v in order), tuple(mat[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))


def _pack(n: int, weights: tuple, upper: tuple) -> CanonicalForm:
    mat = np.zeros((n, n), dtype=np.uint8)
    if n > 1:
        iu = np.triu_indices(n, 1)
        mat[iu] = upper
        mat.T[iu] = upper
    return CanonicalForm(n, weights, mat.tobytes())


def canonical_form(G: WeightedMultigraph) -> CanonicalForm:
    mat = _matrix(G)
    colors = _refine(mat, G.weights)
    cells = [[v for v in range(G.n) if colors[v] == c] for c in range(max(colors, default=-1) + 1)]
    best = None
    for parts in product(*(permutations(cell) for cell in cells)):
        order = [v for part in parts for v in part]
        form = _form(mat, G.weights, order)
        if best is None or form < best:
            best = form
    if best is None:
        return _pack(0, (), ())
    return _pack(G.n, *best)


def canonical_form_bruteforce(G: WeightedMultigraph) -> CanonicalForm:
    if G.n > MAX_ENUM_N:
        raise TooLarge(f"brute-force canonical form capped at {MAX_ENUM_N} vertices")
    mat = _matrix(G)
    best = min(_form(mat, G.weights, order) for order in permutations(range(G.n)))
    return _pack(G.n, *best)


def _check_enum(n: int, max_mult: int) -> None:
    if n > MAX_ENUM_N:
        raise TooLarge(f"enumeration capped at {MAX_ENUM_N} vertices, asked for {n}")
    if n < 1:
        raise BadParameters("enumeration needs at least one vertex")
    if not 1 <= max_mult <= MAX_ENUM_MULT:
        raise BadParameters(f"max multiplicity must be in [1, {MAX_ENUM_MULT}]")


@lru_cache(maxsize=None)
def _all_forms(n: int, max_mult: int) -> tuple[CanonicalForm, ...]:
    """Every unweighted multigraph on n vertices, one canonical form each, sorted."""
    level = [_pack(1, (1,), ())]
    for size in range(2, n + 1):
        seen: set[CanonicalForm] = set()
        for form in level:
            H = form.graph(1)
            for mults in product(range(max_mult + 1), repeat=size - 1):
                edges = list(H.edges) + [(u, size - 1, m) for u, m in enumerate(mults) if m]
                seen.add(canonical_form(build_graph(size, 1, None, edges)))
        level = sorted(seen)
    return tuple(level)


def enumerate_graphs(
    n: int,
    max_mult: int = 1,
    connected: bool = False,
    min_degree: int = 0,
    simple: bool = False,
    D: int = 1,
) -> Iterator[WeightedMultigraph]:
    """One unit-weight representative per isomorphism class on exactly n vertices."""
    if simple:
        max_mult = 1
    _check_enum(n, max_mult)
    for form in _all_forms(n, max_mult):
        G = form.graph(D)
        if connected and not is_connected(G):
            continue
        if G.n and G.min_degree() < min_degree:
            continue
        yield G


# --------------------------------------------------------------------------
# critical census


def applicable_flavors(G: WeightedMultigraph, mode: ColorMode) -> list[PotentialFlavor]:
    if mode is ColorMode.COMPONENT:
        return [PotentialFlavor.MULTI_COMPONENT]
    flavors = [PotentialFlavor.MULTI_DEGREE]
    if G.is_simple and G.D >= 2:
        flavors.append(PotentialFlavor.SIMPLE_DEGREE)
    return flavors


@dataclass
class CensusEntry:
    graph: WeightedMultigraph
    mode: ColorMode
    verdict: Verdict
    checks: list[dict] = field(default_factory=list)

    @property
    def exempt(self) -> bool:
        return self.graph.n < 3

    @property
    def within_bound(self) -> bool:
        return all(c["satisfies"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "graph": graph_to_json(self.graph),
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "exempt": self.exempt,
            "checks": self.checks,
            "satisfiesTheorem": self.exempt or self.within_bound,
        }


@dataclass
class CriticalCensus:
    D: int
    mode: ColorMode
    entries: list[CensusEntry] = field(default_factory=list)
    enumerated: dict[int, int] = field(default_factory=dict)
    unknown: int = 0

    @property
    def violations(self) -> list[CensusEntry]:
        return [e for e in self.entries if e.verdict is Verdict.CRITICAL and not e.exempt and not e.within_bound]

    def critical(self, min_n: int = 0) -> list[CensusEntry]:
        return [e for e in self.entries if e.verdict is Verdict.CRITICAL and e.graph.n >= min_n]

    def stats(self) -> dict:
        return {
            "D": self.D,
            "mode": self.mode.value,
            "enumerated": {str(k): v for k, v in sorted(self.enumerated.items())},
            "critical": len(self.critical()),
            "exempt": sum(1 for e in self.entries if e.exempt),
            "unknown": self.unknown,
            "violations": len(self.violations),
        }


def _verdict(args) -> Verdict:
    G, mode, budget = args
    return is_critical(G, mode, budget=budget).verdict


def _bound_checks(G: WeightedMultigraph, mode: ColorMode) -> list[dict]:
    out = []
    for flavor in applicable_flavors(G, mode):
        rho = potential(G, flavor)
        bound = potential_constants(flavor, G.D).rhoStar
        out.append({"flavor": flavor.value, "rho": rho, "bound": bound, "satisfies": rho <= bound})
    return out


def find_critical_graphs(
    n_max: int,
    D: int,
    mode: ColorMode | str,
    max_mult: int = MAX_ENUM_MULT,
    simple: bool = False,
    restrict: bool = True,
    threads: int = 1,
    budget: int = 10**7,
) -> CriticalCensus:
    """Run the criticality check on every enumerated graph and test the potential bound.

    With ``restrict`` only connected graphs of minimum degree two are
    examined (critical graphs always have both properties); turning it off
    checks every graph, which verifies the restriction empirically.
    """
    mode = ColorMode.parse(mode)
    if simple:
        max_mult = 1
    census = CriticalCensus(D, mode)
    for n in range(1 if not restrict else 2, n_max + 1):
        graphs = list(enumerate_graphs(n, max_mult, connected=restrict, min_degree=2 if restrict else 0, simple=simple, D=D))
        census.enumerated[n] = len(graphs)
        jobs = [(G, mode, budget) for G in graphs]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(threads) as pool:
                verdicts = list(pool.map(_verdict, jobs, chunksize=32))
        else:
            verdicts = [_verdict(j) for j in jobs]
        for G, verdict in zip(graphs, verdicts):
            if verdict is Verdict.UNKNOWN:
                census.unknown += 1
            if verdict in (Verdict.CRITICAL, Verdict.UNKNOWN):
                census.entries.append(CensusEntry(G, mode, verdict, _bound_checks(G, mode)))
    return census
