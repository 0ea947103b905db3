"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from math import floor

import numpy as np
import pytest

from forestlab.census import enumerate_graphs, find_critical_graphs
from forestlab.coloring import ColorMode, Verdict, count_colorings, is_critical, solve
from forestlab.constructions import build_family, critical_edge_bound, expand_weights_to_gadgets, family_size
from forestlab.discharging import charge, discharge_R1, initial_charges, sweep_charge_bounds
from forestlab.graph import build_graph, is_forest
from forestlab.potential import PotentialFlavor, potential, potential_constants
from forestlab.sparsity import certify_sparsity, max_excess_cut, max_excess_exact
from randgraphs import random_extra_weight, random_multigraph

MD, SD, ME = PotentialFlavor.MULTI_DEGREE, PotentialFlavor.SIMPLE_DEGREE, PotentialFlavor.MULTI_COMPONENT


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "potential constant identities, D in 1..8")
def test_constant_identities(record_property):
    checked = 0
    start = time.perf_counter()
    for D in range(1, 9):
        for flavor in PotentialFlavor:
            if flavor is SD and D < 2:
                continue
            k = potential_constants(flavor, D)
            assert k.rhoE == k.rhoPlus - k.rho0
            assert k.rho0 - k.rhoE == -1
            assert 2 * k.rhoE - k.rhoPlus == 1
            assert Fraction(k.rho0, k.alpha) < D + 1
            assert k.alpha == -k.rhoStar
            checked += 1
    elapsed = time.perf_counter() - start
    record_property("pairs", checked)
    assert elapsed < 1


FAMILIES = [("md", 1, 0), ("md", 1, 1), ("md", 2, 0), ("md", 2, 1), ("md", 3, 0), ("me", 1, 1), ("me", 2, 1), ("me", 3, 1), ("sd", 2, 1)]


@criterion(2, "sharpness families: counts, edge bound, unsat, critical")
def test_sharpness_families(record_property):
    for family, D, k in FAMILIES:
        G = build_family(family, D, k)
        mode = ColorMode.COMPONENT if family == "me" else ColorMode.DEGREE
        assert (G.n, G.num_edges) == family_size(family, D, k)
        assert G.num_edges == critical_edge_bound(family, D, G.n)
        assert not solve(G, mode).satisfiable
        assert is_critical(G, mode).verdict is Verdict.CRITICAL, (family, D, k)
    record_property("instances", len(FAMILIES))


@criterion(3, "no critical graph on 3..5 vertices beats the potential bound")
def test_potential_bound_census(record_property):
    critical = 0
    for D in (1, 2):
        for mode in ("dff", "eff"):
            for simple in (False, True):
                census = find_critical_graphs(5, D, mode, max_mult=3, simple=simple)
                assert census.unknown == 0
                assert census.violations == []
                critical += len(census.critical(3))
    record_property("critical_graphs_checked", critical)


def threshold_parameters(D, mode, simple):
    if mode == "dff" and simple:
        return Fraction(6 * D + 5, 3 * (D + 1)), Fraction(2, 3 * (D + 1))
    if mode == "eff" and D % 2 == 0:
        return Fraction(4 * D + 1, 2 * D + 1), Fraction(1, 2 * D + 1)
    return Fraction(4 * D + 3, 2 * (D + 1)), Fraction(1, 2 * (D + 1))


def random_sparse_graph(rng, n, D, a, b, simple):
    """Random spanning tree, then random edge additions kept only while (a,b)-sparse."""
    max_mult = 1 if simple else 3
    masks = np.arange(1 << n, dtype=np.int64)
    bits = [(masks >> v) & 1 for v in range(n)]
    sizes = sum(bits)
    cap = np.array([floor(a * s + b) if s >= 2 else 1 << 40 for s in sizes.tolist()], dtype=np.int64)
    inside = np.zeros_like(masks)
    mult = {}

    def add(u, v):
        nonlocal inside
        trial = inside + (bits[u] & bits[v])
        if (trial <= cap).all():
            inside = trial
            mult[(u, v)] = mult.get((u, v), 0) + 1
            return True
        return False

    for v in range(1, n):
        assert add(rng.randrange(v), v)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    target = rng.randint(0, 3 * n)
    for _ in range(target):
        u, v = rng.choice(pairs)
        if mult.get((u, v), 0) < max_mult:
            add(u, v)
    return build_graph(n, D, None, [(u, v, m) for (u, v), m in mult.items()])


@criterion(4, "sparse graphs at the coloring thresholds are colorable")
def test_sparse_graphs_colorable(record_property):
    rng = random.Random(4)
    settings = [(D, mode, False) for D in (1, 2, 3) for mode in ("dff", "eff")] + [(2, "dff", True), (3, "dff", True)]
    total = 0
    for D, mode, simple in settings:
        a, b = threshold_parameters(D, mode, simple)
        for _ in range(500):
            G = random_sparse_graph(rng, rng.randint(2, 12), D, a, b, simple)
            assert certify_sparsity(G, a, b).sparse
            assert solve(G, mode).satisfiable, (D, mode, simple, G)
            total += 1
    record_property("graphs", total)


@criterion(5, "cut vs exact excess; solver vs enumeration")
def test_oracle_equivalences(record_property):
    rng = random.Random(5)
    slopes = [Fraction(1), Fraction(3, 2), Fraction(7, 4), Fraction(2), Fraction(11, 6)]
    for _ in range(500):
        G = random_multigraph(rng, rng.randint(2, 14), p=rng.uniform(0.1, 0.6))
        for a in slopes:
            assert max_excess_cut(G, a)[1] == max_excess_exact(G, a)[1]
    for _ in range(500):
        G = random_multigraph(rng, rng.randint(1, 10), rng.randint(1, 3), p=rng.uniform(0.2, 0.6), weighted=True)
        for mode in ColorMode:
            assert solve(G, mode).satisfiable == (count_colorings(G, mode) > 0)
    record_property("graphs", 1000)


@criterion(6, "weight-to-gadget expansion preserves colorability")
def test_expansion_equivalence(record_property):
    rng = random.Random(6)
    comparisons = 0
    for _ in range(300):
        host = random_multigraph(rng, rng.randint(1, 8), rng.randint(1, 3), p=rng.uniform(0.2, 0.6), simple=rng.random() < 0.5)
        G = random_extra_weight(rng, host, rng.randint(0, 4))
        styles = ["multi"] + (["simple"] if G.is_simple else [])
        for style in styles:
            E = expand_weights_to_gadgets(G, style)
            for mode in ColorMode:
                assert solve(G, mode).satisfiable == solve(E, mode).satisfiable
                comparisons += 1
    record_property("comparisons", comparisons)


@criterion(7, "charge sums, R1 conservation, per-degree charge bounds")
def test_charge_accounting(record_property):
    rng = random.Random(7)
    for flavor in PotentialFlavor:
        for _ in range(1000):
            D = rng.randint(2 if flavor is SD else 1, 6)
            G = random_multigraph(rng, rng.randint(1, 10), D, p=0.4, simple=flavor is SD, weighted=True)
            assert initial_charges(G, flavor).total == potential(G, flavor)
            if flavor is ME and D % 2 == 1:
                assert discharge_R1(G).total == potential(G, flavor)
    assert sweep_charge_bounds(6, 8) == []
    record_property("graphs", 3000)


@criterion(8, "known charge values")
def test_known_charges():
    for flavor in PotentialFlavor:
        for D in range(2 if flavor is SD else 1, 9):
            assert charge(flavor, D, 2, 0) == -1
    for D in (1, 3, 5, 7):
        half = (D + 1) // 2
        G = build_graph(4, D, [half, D + 2, D + 2, D + 2], [(0, 1), (0, 2), (0, 3)])
        assert initial_charges(G, ME).charges[0] == 1
        assert discharge_R1(G).charges[0] == 0
    for D in (2, 4, 6, 8):
        for c in (D // 2, D // 2 + 1):
            assert charge(ME, D, 3, c) <= Fraction(-1, 2)


@criterion(9, "forests are exactly the (1,-1)-sparse multigraphs")
def test_forest_sparsity_equivalence(record_property):
    checked = 0
    for n in range(2, 7):
        for G in enumerate_graphs(n, max_mult=2, connected=True):
            assert is_forest(G) == certify_sparsity(G, 1, -1).sparse
            checked += 1
    record_property("graphs", checked)
