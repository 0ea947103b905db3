"""Charges, the single discharging rule, and reducible-configuration audits.

Each vertex starts with charge ``ch(u) = rho(u) - d(u) * rho_e / 2``; the
charges sum to ``rho(V(G))`` because every edge is split evenly between its
endpoints.  In the odd-D component-bounded regime, the light 3-vertices
``T`` (degree 3, weight (D+1)/2) each send 1/3 along every incident edge.

The configuration audits report, vertex by vertex, whether the structural
conclusions that hold in a minimum counterexample are met by a concrete
graph.  Only ``min_degree`` needs nothing beyond criticality; the rest also
assume the graph beats the potential bound, so on genuine critical graphs
(which never do) they are informative rather than expected to pass.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import ColorMode, Verdict, is_critical, solve
from .errors import WrongParity
from .graph import WeightedMultigraph, bridges, components, induced_subgraph, remove_edge
from .potential import (
    PotentialFlavor,
    check_flavor,
    check_flavor_for_graph,
    edge_potential,
    potential,
    vertex_potential,
)

THIRD = Fraction(1, 3)


@dataclass
class ChargeLedger:
    charges: list[Fraction]
    stage: str = "Initial"

    @property
    def total(self) -> Fraction:
        return sum(self.charges, Fraction(0))

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "total": str(self.total),
            "charges": [str(c) for c in self.charges],
        }


def charge(flavor: PotentialFlavor | str, D: int, degree: int, capacity: int) -> Fraction:
    """Initial charge of a vertex with the given degree and capacity."""
    return vertex_potential(flavor, D, capacity) - Fraction(degree * edge_potential(flavor, D), 2)


def initial_charges(G: WeightedMultigraph, flavor: PotentialFlavor | str) -> ChargeLedger:
    flavor = check_flavor_for_graph(G, flavor)
    ledger = ChargeLedger([charge(flavor, G.D, G.degrees[v], G.capacity(v)) for v in G.vertices()])
    assert ledger.total == potential(G, flavor), "charges must sum to the potential of V(G)"
    return ledger


def light_vertices(G: WeightedMultigraph) -> set[int]:
    """T: 3-vertices of weight exactly (D+1)/2; empty for even D."""
    if G.D % 2 == 0:
        return set()
    half = (G.D + 1) // 2
    return {v for v in G.vertices() if G.degrees[v] == 3 and G.weights[v] == half}


def t_incidences(G: WeightedMultigraph, T: set[int] | None = None) -> list[int]:
    """j(v): edges (with multiplicity) joining v to a vertex of T."""
    T = light_vertices(G) if T is None else T
    return [sum(m for u, m in G.adjacency[v] if u in T) for v in G.vertices()]


def discharge_R1(G: WeightedMultigraph) -> ChargeLedger:
    """Apply the rule: every light 3-vertex sends 1/3 along each incident edge."""
    if G.D % 2 == 0:
        raise WrongParity("the light-vertex rule is defined for odd D only")
    before = initial_charges(G, PotentialFlavor.MULTI_COMPONENT)
    after = list(before.charges)
    T = light_vertices(G)
    for t in sorted(T):
        for u, m in G.adjacency[t]:
            after[t] -= m * THIRD
            after[u] += m * THIRD
    ledger = ChargeLedger(after, "AfterR1")
    assert ledger.total == before.total
    return ledger


def deficiency(G: WeightedMultigraph, A: Iterable[int]) -> int:
    """Q(A) = sum over A of (3 - j(v))."""
    j = t_incidences(G)
    return sum(3 - j[v] for v in A)


# --------------------------------------------------------------------------
# charge-bound sweep


def sweep_charge_bounds(max_D: int = 6, max_degree: int = 8) -> list[dict]:
    """Check the per-vertex charge inequalities over every small parameter combination.

    Returns the violations found (an empty list when every bound holds).
    """
    failures: list[dict] = []

    def expect(ok: bool, **info) -> None:
        if not ok:
            failures.append(info)

    for D in range(1, max_D + 1):
        for flavor in PotentialFlavor:
            if flavor is PotentialFlavor.SIMPLE_DEGREE and D < 2:
                continue
            for d in range(0, max_degree + 1):
                for c in range(0, D + 2):
                    ch = charge(flavor, D, d, c)
                    info = dict(flavor=flavor.value, D=D, degree=d, capacity=c, charge=str(ch))
                    if d >= 4:
                        expect(ch <= -1, bound="d>=4 => ch<=-1", **info)
                    if d == 2 and c == 0:
                        expect(ch == -1, bound="d=2,c=0 => ch=-1", **info)
                    if d == 3 and c <= 1 and D >= 2 and flavor is not PotentialFlavor.MULTI_COMPONENT:
                        expect(ch < -1, bound="d=3,c<=1,D>=2 => ch<-1", **info)
                    if flavor is PotentialFlavor.MULTI_COMPONENT and D % 2 == 0 and d == 3:
                        if 2 * c in (D, D + 2):
                            expect(ch <= Fraction(-1, 2), bound="d=3,c in {D/2,D/2+1} => ch<=-1/2", **info)
                        if 2 * c <= D - 2:
                            expect(ch <= Fraction(-7, 2), bound="d=3,c<=D/2-1 => ch<=-7/2", **info)
                    if flavor is PotentialFlavor.MULTI_COMPONENT and D % 2 == 1:
                        w = D + 2 - c
                        if d == 3 and 2 * w == D + 1:
                            expect(ch == 1, bound="light 3-vertex => ch=1", **info)
                            expect(ch - 3 * THIRD == 0, bound="light 3-vertex => ch*=0", **info)
                        if d == 3 and 2 * w >= D + 3:
                            expect(ch <= -1, bound="3-vertex outside T => ch<=-1", **info)
                        if d == 4 and w >= 2:
                            expect(ch + 4 * THIRD <= Fraction(-5, 3), bound="d=4,w>=2 => ch*<=-5/3", **info)
                        if d >= 5:
                            expect(ch + d * THIRD < -D, bound="d>=5 => ch*<-D", **info)
    return failures


# --------------------------------------------------------------------------
# configuration audits


@dataclass
class ConfigAudit:
    flavor: str
    mode: str
    verdict: str
    entries: list[dict] = field(default_factory=list)

    @property
    def inference_applicable(self) -> bool:
        return self.verdict == Verdict.CRITICAL.value

    def failures(self, hypothesis: str | None = None) -> list[dict]:
        return [e for e in self.entries if not e["holds"] and (hypothesis is None or e["hypothesis"] == hypothesis)]

    def lemma(self, name: str) -> list[dict]:
        return [e for e in self.entries if e["lemma"] == name]

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "mode": self.mode,
            "verdict": self.verdict,
            "inference": "applicable" if self.inference_applicable else "NotApplicable-for-inference",
            "entries": self.entries,
        }


CRITICAL = "critical"
COUNTEREXAMPLE = "minimum_counterexample"


def _in_multiedge(G: WeightedMultigraph, v: int) -> bool:
    return any(m >= 2 for _, m in G.adjacency[v])


def _cut_side(G: WeightedMultigraph, x: int, y: int) -> list[int]:
    """Vertices on x's side once the bridge xy is removed."""
    H = remove_edge(G, x, y)
    return next(C for C in components(H) if x in C)


def _cut_edge_entries(G: WeightedMultigraph, mode: ColorMode) -> list[dict]:
    D = G.D
    entries = []
    cut = bridges(G)
    entries.append({
        "lemma": "unique_cut_edge",
        "hypothesis": COUNTEREXAMPLE,
        "witness": {"cut_edges": [list(e) for e in cut]},
        "holds": len(cut) <= 1,
    })
    for x, y in cut:
        for z, other in ((x, y), (y, x)):
            side = _cut_side(G, z, other)
            H = induced_subgraph(G, side)
            zi = side.index(z)
            z_in_f = solve(H, mode, fixed={zi: "F"}).satisfiable
            # z in M with component weight <= D/2: raise w(z) by D/2 + 1
            heavier = list(H.weights)
            heavier[zi] = min(heavier[zi] + D // 2 + 1, D + 2)
            light_m = solve(H.with_weights(heavier), mode, fixed={zi: "M"}).satisfiable
            rho_side = potential(G, PotentialFlavor.MULTI_COMPONENT, side)
            checks = {
                "every_coloring_has_heavy_M_component": not z_in_f and not light_m,
                "side_potential_is_D": rho_side == D,
                "unit_weight": G.weights[z] == 1,
                "degree_at_least_4": G.degrees[z] >= 4,
            }
            entries.append({
                "lemma": "cut_edge_structure",
                "hypothesis": COUNTEREXAMPLE,
                "witness": {"edge": [x, y], "endpoint": z, "side_potential": rho_side, **checks},
                "holds": all(checks.values()),
            })
    return entries


def audit_configurations(
    G: WeightedMultigraph,
    flavor: PotentialFlavor | str,
    mode: ColorMode | str,
    verdict: Verdict | str | None = None,
    q_subsets: Iterable[Iterable[int]] | None = None,
) -> ConfigAudit:
    """List every vertex or edge that breaks an applicable structural lemma.

    ``verdict`` may carry a precomputed criticality verdict; otherwise it is
    computed.  Audits never infer anything themselves: a graph that is not
    critical is tagged NotApplicable-for-inference.
    """
    flavor = check_flavor(flavor, G.D)
    mode = ColorMode.parse(mode)
    if verdict is None:
        verdict = is_critical(G, mode).verdict
    verdict = Verdict(verdict)
    D = G.D
    deg = G.degrees
    audit = ConfigAudit(flavor.value, mode.value, verdict.value)
    add = audit.entries.append

    for v in G.vertices():
        ok = deg[v] >= 2 and (deg[v] != 2 or G.capacity(v) == 0)
        add({"lemma": "min_degree", "hypothesis": CRITICAL, "witness": {"vertex": v, "degree": deg[v], "capacity": G.capacity(v)}, "holds": ok})

    for v in G.vertices():
        if deg[v] == 3 and G.capacity(v) >= 1:
            add({"lemma": "degree3_not_in_multiedge", "hypothesis": COUNTEREXAMPLE, "witness": {"vertex": v}, "holds": not _in_multiedge(G, v)})

    for x, y, _ in G.edges:
        if deg[x] == 3 and deg[y] == 3:
            total = G.weights[x] + G.weights[y]
            add({"lemma": "adjacent_degree3_weights", "hypothesis": COUNTEREXAMPLE, "witness": {"edge": [x, y], "weight_sum": total}, "holds": total >= D + 2})

    if mode is ColorMode.DEGREE and D >= 2:
        for v in G.vertices():
            if deg[v] == 3:
                add({"lemma": "degree3_capacity", "hypothesis": COUNTEREXAMPLE, "witness": {"vertex": v, "capacity": G.capacity(v)}, "holds": G.capacity(v) <= 1})

    if mode is ColorMode.COMPONENT:
        for v in G.vertices():
            if deg[v] == 3:
                add({"lemma": "degree3_weight", "hypothesis": COUNTEREXAMPLE, "witness": {"vertex": v, "weight": G.weights[v]}, "holds": 2 * G.weights[v] >= D + 1})
        if D % 2 == 1:
            T = light_vertices(G)
            j = t_incidences(G, T)
            for u in G.vertices():
                if deg[u] == 4 and 2 * G.weights[u] <= D + 1:
                    nbrs = set(G.neighbors(u))
                    add({"lemma": "light_degree4", "hypothesis": COUNTEREXAMPLE, "witness": {"vertex": u, "neighbors": sorted(nbrs)}, "holds": not nbrs <= T})
            for v in G.vertices():
                if deg[v] == 2:
                    add({"lemma": "degree2_in_multiedge", "hypothesis": COUNTEREXAMPLE, "witness": {"vertex": v}, "holds": _in_multiedge(G, v)})
            touching = sorted({(min(u, v), max(u, v)) for u in T for v in G.neighbors(u) if v in T})
            add({"lemma": "light_vertices_independent", "hypothesis": COUNTEREXAMPLE, "witness": {"T": sorted(T), "T_edges": [list(e) for e in touching]}, "holds": not touching})
            rest = [v for v in G.vertices() if v not in T]
            subsets = [sorted(set(A)) for A in q_subsets] if q_subsets is not None else None
            if subsets is None:
                # Q is additive, so its maximum over subsets of V-T takes every positive term
                subsets = [[v for v in rest if 3 - j[v] > 0]]
            for A in subsets:
                q = sum(3 - j[v] for v in A)
                add({"lemma": "deficiency_sum", "hypothesis": COUNTEREXAMPLE, "witness": {"subset": A, "Q": q, "outside_T": all(v not in T for v in A)}, "holds": q <= 3})
        else:
            audit.entries.extend(_cut_edge_entries(G, mode))
    return audit
