"""Exact (D,F)- and (e,F)-colorings of weighted multigraphs.

A coloring is a partition ``(M, F)`` of the vertices such that both ``G[M]``
and ``G[F]`` are forests.  In the degree-bounded regime every ``v`` in ``M``
also satisfies ``w(v) + |N(v) & M| <= D+1``; in the component-bounded regime
every component of ``G[M]`` has total weight at most ``D+1``.  With unit
weights these are "max degree of G[M] at most D" and "every component of
G[M] has at most D edges".
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import BudgetExceeded, TooLarge
from .graph import DisjointSet, WeightedMultigraph, components, remove_edge

DEFAULT_BUDGET = 10**8
DEFAULT_COUNT_CAP = 22

M_CLASS = 0
F_CLASS = 1


class ColorMode(str, enum.Enum):
    DEGREE = "dff"
    COMPONENT = "eff"

    @classmethod
    def parse(cls, text: str | ColorMode) -> ColorMode:
        if isinstance(text, ColorMode):
            return text
        aliases = {"dff": cls.DEGREE, "degree": cls.DEGREE, "eff": cls.COMPONENT, "component": cls.COMPONENT}
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown color mode {text!r} (use dff or eff)") from None


@dataclass(frozen=True)
class Partition:
    M: frozenset[int]
    F: frozenset[int]

    @classmethod
    def from_classes(cls, M: Iterable[int], F: Iterable[int]) -> Partition:
        return cls(frozenset(M), frozenset(F))

    @classmethod
    def from_colors(cls, colors: Iterable[int]) -> Partition:
        colors = list(colors)
        return cls(
            frozenset(v for v, c in enumerate(colors) if c == M_CLASS),
            frozenset(v for v, c in enumerate(colors) if c == F_CLASS),
        )

    def to_json(self) -> dict:
        return {"M": sorted(self.M), "F": sorted(self.F)}


def component_weight(G: WeightedMultigraph, C: Iterable[int]) -> int:
    return sum(G.weights[v] for v in C)


@dataclass
class VerificationReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_partition(G: WeightedMultigraph, P: Partition, mode: ColorMode) -> VerificationReport:
    """Check every constraint of the regime and list each violation found."""
    mode = ColorMode.parse(mode)
    violations: list[dict] = []
    limit = G.D + 1
    if P.M & P.F or (P.M | P.F) != set(G.vertices()):
        violations.append({
            "kind": "not_a_partition",
            "overlap": sorted(P.M & P.F),
            "missing": sorted(set(G.vertices()) - (P.M | P.F)),
            "extra": sorted((P.M | P.F) - set(G.vertices())),
        })
        return VerificationReport(False, violations)
    for name, cls in (("M", P.M), ("F", P.F)):
        # report every cycle-closing edge, not just the first
        dsu = DisjointSet(G.n)
        for u, v, m in G.edges:
            if u in cls and v in cls and (m >= 2 or not dsu.union(u, v)):
                violations.append({"kind": "cycle", "class": name, "edge": [u, v, m]})
    if mode is ColorMode.DEGREE:
        for v in sorted(P.M):
            inside = sum(1 for u, _ in G.adjacency[v] if u in P.M)
            if G.weights[v] + inside > limit:
                violations.append({
                    "kind": "overloaded",
                    "vertex": v,
                    "load": G.weights[v] + inside,
                    "limit": limit,
                })
    else:
        for C in components(G, P.M):
            weight = component_weight(G, C)
            if weight > limit:
                violations.append({
                    "kind": "overweight",
                    "component": C,
                    "weight": weight,
                    "limit": limit,
                })
    return VerificationReport(not violations, violations)


@dataclass
class ColoringResult:
    partition: Partition | None
    nodes: int

    @property
    def satisfiable(self) -> bool:
        return self.partition is not None

    def to_json(self) -> dict:
        out: dict = {"result": "sat" if self.satisfiable else "unsat", "nodes": self.nodes}
        if self.partition is not None:
            out["witness"] = self.partition.to_json()
        return out


class _Search:
    """Backtracking with rollback union-find and full forward propagation.

    Union-find runs without path compression so that each union can be
    undone from the trail in O(1).
    """

    def __init__(self, G: WeightedMultigraph, mode: ColorMode, budget: int):
        self.G = G
        self.degree_mode = mode is ColorMode.DEGREE
        self.budget = budget
        self.nodes = 0
        n = G.n
        self.n = n
        self.adj = [list(row) for row in G.adjacency]
        self.w = list(G.weights)
        self.limit = G.D + 1
        self.color = [-1] * n
        self.parent = list(range(n))
        self.size = [1] * n
        self.cweight = list(G.weights)
        self.mcount = [0] * n
        self.trail: list[tuple] = []
        self.order = sorted(range(n), key=lambda v: (-G.degrees[v], v))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def allowed(self, u: int, cls: int) -> bool:
        color = self.color
        limit = self.limit
        if cls == M_CLASS and self.w[u] > limit:
            return False
        roots: list[int] = []
        k = 0
        for v, m in self.adj[u]:
            if color[v] != cls:
                continue
            if m > 1:
                return False
            r = self.find(v)
            if r in roots:
                return False
            roots.append(r)
            if cls == M_CLASS:
                k += 1
                if self.degree_mode and self.w[v] + self.mcount[v] + 1 > limit:
                    return False
        if cls == M_CLASS:
            if self.degree_mode:
                return self.w[u] + k <= limit
            return self.w[u] + sum(self.cweight[r] for r in roots) <= limit
        return True

    def assign(self, u: int, cls: int) -> None:
        color = self.color
        trail = self.trail
        color[u] = cls
        trail.append((0, u))
        for v, _ in self.adj[u]:
            if color[v] != cls:
                continue
            ra, rb = self.find(u), self.find(v)
            if self.size[ra] < self.size[rb]:
                ra, rb = rb, ra
            self.parent[rb] = ra
            self.size[ra] += self.size[rb]
            self.cweight[ra] += self.cweight[rb]
            trail.append((1, rb, ra))
            if cls == M_CLASS:
                self.mcount[u] += 1
                self.mcount[v] += 1
                trail.append((2, u, v))

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            entry = trail.pop()
            tag = entry[0]
            if tag == 0:
                self.color[entry[1]] = -1
            elif tag == 1:
                _, rb, ra = entry
                self.parent[rb] = rb
                self.size[ra] -= self.size[rb]
                self.cweight[ra] -= self.cweight[rb]
            else:
                self.mcount[entry[1]] -= 1
                self.mcount[entry[2]] -= 1

    def propagate(self) -> bool:
        color = self.color
        changed = True
        while changed:
            changed = False
            for u in self.order:
                if color[u] != -1:
                    continue
                can_m = self.allowed(u, M_CLASS)
                can_f = self.allowed(u, F_CLASS)
                if not (can_m or can_f):
                    return False
                if can_m != can_f:
                    self.assign(u, M_CLASS if can_m else F_CLASS)
                    changed = True
        return True

    def search(self) -> bool:
        if not self.propagate():
            return False
        color = self.color
        u = next((v for v in self.order if color[v] == -1), None)
        if u is None:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)
        mark = len(self.trail)
        for cls in (M_CLASS, F_CLASS):
            if self.allowed(u, cls):
                self.assign(u, cls)
                if self.search():
                    return True
                self.undo(mark)
        return False


def solve(
    G: WeightedMultigraph,
    mode: ColorMode | str,
    budget: int = DEFAULT_BUDGET,
    fixed: Mapping[int, str | int] | None = None,
) -> ColoringResult:
    """Decide colorability exactly, returning a verified witness if one exists.

    ``fixed`` pins vertices to a class (``"M"``/``"F"`` or 0/1).  Raises
    ``BudgetExceeded`` once more than ``budget`` branching nodes are used.
    """
    mode = ColorMode.parse(mode)
    search = _Search(G, mode, budget)
    for v, cls in (fixed or {}).items():
        cls = {"M": M_CLASS, "F": F_CLASS}.get(cls, cls)
        if search.color[v] == cls:
            continue
        if search.color[v] != -1 or not search.allowed(v, cls):
            return ColoringResult(None, search.nodes)
        search.assign(v, cls)
    if not search.search():
        return ColoringResult(None, search.nodes)
    P = Partition.from_colors(search.color)
    report = verify_partition(G, P, mode)
    assert report.ok, f"solver produced an invalid witness: {report.violations}"
    return ColoringResult(P, search.nodes)


def _valid_mask(G: WeightedMultigraph, mask: int, degree_mode: bool) -> bool:
    # independent brute-force check used by the enumeration oracle
    limit = G.D + 1
    in_m = [(mask >> v) & 1 == 1 for v in range(G.n)]
    for v in range(G.n):
        if in_m[v] and G.weights[v] > limit:
            return False
    dsu = DisjointSet(G.n)
    for u, v, m in G.edges:
        if in_m[u] == in_m[v] and (m >= 2 or not dsu.union(u, v)):
            return False
    if degree_mode:
        for v in range(G.n):
            if in_m[v]:
                load = G.weights[v] + sum(1 for u, _ in G.adjacency[v] if in_m[u])
                if load > limit:
                    return False
    else:
        totals: dict[int, int] = {}
        for v in range(G.n):
            if in_m[v]:
                r = dsu.find(v)
                totals[r] = totals.get(r, 0) + G.weights[v]
        if any(t > limit for t in totals.values()):
            return False
    return True


def iter_colorings(
    G: WeightedMultigraph, mode: ColorMode | str, cap: int = DEFAULT_COUNT_CAP
) -> Iterator[Partition]:
    """Every valid partition, by exhaustive enumeration of all 2^n splits."""
    mode = ColorMode.parse(mode)
    if G.n > cap:
        raise TooLarge(f"enumeration capped at {cap} vertices, graph has {G.n}")
    degree_mode = mode is ColorMode.DEGREE
    for mask in range(1 << G.n):
        if _valid_mask(G, mask, degree_mode):
            yield Partition(
                frozenset(v for v in range(G.n) if mask >> v & 1),
                frozenset(v for v in range(G.n) if not mask >> v & 1),
            )


def count_colorings(G: WeightedMultigraph, mode: ColorMode | str, cap: int = DEFAULT_COUNT_CAP) -> int:
    return sum(1 for _ in iter_colorings(G, mode, cap))


class Verdict(str, enum.Enum):
    COLORABLE = "Colorable"
    CRITICAL = "Critical"
    UNCOLORABLE_NOT_CRITICAL = "UncolorableNotCritical"
    UNKNOWN = "Unknown"


@dataclass
class CriticalityReport:
    colorable: bool | None
    verdict: Verdict
    failing_edge: tuple[int, int] | None = None
    failing_vertex: int | None = None
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "colorable": self.colorable,
            "failing_edge": list(self.failing_edge) if self.failing_edge else None,
            "failing_vertex": self.failing_vertex,
            "nodes": self.nodes,
        }


def is_critical(
    G: WeightedMultigraph, mode: ColorMode | str, budget: int = DEFAULT_BUDGET
) -> CriticalityReport:
    """Uncolorable, yet colorable after deleting any single edge.

    Deleting one copy of a parallel pair gives the same graph whichever copy
    is removed, so one deletion per distinct pair is enough.  An isolated
    vertex never affects colorability, so its presence rules out criticality.
    """
    mode = ColorMode.parse(mode)
    nodes = 0
    try:
        base = solve(G, mode, budget)
        nodes += base.nodes
        if base.satisfiable:
            return CriticalityReport(True, Verdict.COLORABLE, nodes=nodes)
        if G.n >= 2:
            for v in G.vertices():
                if G.degrees[v] == 0:
                    return CriticalityReport(
                        False, Verdict.UNCOLORABLE_NOT_CRITICAL, failing_vertex=v, nodes=nodes
                    )
        for u, v, _ in G.edges:
            res = solve(remove_edge(G, u, v), mode, budget)
            nodes += res.nodes
            if not res.satisfiable:
                return CriticalityReport(
                    False, Verdict.UNCOLORABLE_NOT_CRITICAL, failing_edge=(u, v), nodes=nodes
                )
    except BudgetExceeded as exc:
        return CriticalityReport(None, Verdict.UNKNOWN, nodes=nodes + exc.nodes)
    return CriticalityReport(False, Verdict.CRITICAL, nodes=nodes)


__all__ = [
    "ColorMode",
    "ColoringResult",
    "CriticalityReport",
    "Partition",
    "VerificationReport",
    "Verdict",
    "component_weight",
    "count_colorings",
    "is_critical",
    "iter_colorings",
    "solve",
    "verify_partition",
]
