import pytest

from forestlab.census import (
    CensusEntry,
    canonical_form,
    canonical_form_bruteforce,
    enumerate_graphs,
    find_critical_graphs,
)
from forestlab.coloring import ColorMode, Verdict, is_critical, solve
from forestlab.errors import TooLarge
from forestlab.graph import build_graph, induced_subgraph, permute, remove_edge
from randgraphs import random_multigraph


@pytest.mark.parametrize(
    "n, max_mult, kwargs, count",
    [(1, 1, {}, 1), (2, 3, {"connected": True}, 3), (3, 1, {"connected": True}, 2), (4, 1, {}, 11), (5, 1, {"connected": True}, 21)],
)
def test_enumeration_counts(n, max_mult, kwargs, count):
    assert len(list(enumerate_graphs(n, max_mult, **kwargs))) == count


def test_enumeration_limits():
    with pytest.raises(TooLarge):
        list(enumerate_graphs(9))


def test_enumeration_is_isomorphism_free():
    forms = [canonical_form_bruteforce(G) for G in enumerate_graphs(4, 2)]
    assert len(forms) == len(set(forms))


def test_canonical_form_is_invariant(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        G = random_multigraph(rng, n, 2, p=0.5, weighted=True)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(G) == canonical_form(permute(G, perm))


def test_refined_and_bruteforce_forms_induce_same_classes(rng):
    graphs = [random_multigraph(rng, 5, 1, max_mult=2, p=0.5) for _ in range(60)]
    for G in graphs[:30]:
        perm = list(range(5))
        rng.shuffle(perm)
        graphs.append(permute(G, perm))
    fast = [canonical_form(G) for G in graphs]
    slow = [canonical_form_bruteforce(G) for G in graphs]
    for i in range(len(graphs)):
        for j in range(i):
            assert (fast[i] == fast[j]) == (slow[i] == slow[j])


def test_two_vertex_graphs_are_never_critical():
    census = find_critical_graphs(2, 1, "dff")
    assert census.critical() == [] and census.enumerated == {2: 2}


def test_small_entries_are_flagged_exempt():
    entry = CensusEntry(build_graph(2, 1, [3, 3], [(0, 1)]), ColorMode.DEGREE, Verdict.CRITICAL, [])
    assert entry.exempt and entry.to_json()["satisfiesTheorem"]


@pytest.mark.parametrize("mode", ["dff", "eff"])
def test_census_entries_reverify(mode):
    census = find_critical_graphs(4, 1, mode)
    assert census.critical(3)
    for entry in census.entries:
        assert is_critical(entry.graph, mode).verdict is Verdict.CRITICAL
    assert census.violations == [] and census.unknown == 0


def test_modes_coincide_on_simple_graphs_at_d1():
    dff = find_critical_graphs(5, 1, "dff", simple=True)
    eff = find_critical_graphs(5, 1, "eff", simple=True)
    assert [e.graph for e in dff.entries] == [e.graph for e in eff.entries]
    assert len(dff.critical()) == 1  # K5


def test_restriction_loses_nothing():
    full = find_critical_graphs(4, 2, "eff", max_mult=2, restrict=False)
    fast = find_critical_graphs(4, 2, "eff", max_mult=2)
    assert [e.graph for e in full.critical()] == [e.graph for e in fast.critical()]


def test_thread_count_does_not_change_output():
    one = find_critical_graphs(4, 1, "dff", threads=1)
    two = find_critical_graphs(4, 1, "dff", threads=2)
    assert [e.to_json() for e in one.entries] == [e.to_json() for e in two.entries]


def _shrink_to_critical(G, mode):
    changed = True
    while changed:
        changed = False
        for u, v, _ in G.edges:
            H = remove_edge(G, u, v)
            if not solve(H, mode).satisfiable:
                G, changed = H, True
                break
    return induced_subgraph(G, [v for v in G.vertices() if G.degrees[v] > 0])


@pytest.mark.parametrize("mode", ["dff", "eff"])
def test_uncolorable_graphs_contain_a_census_graph(rng, mode):
    census = find_critical_graphs(5, 1, mode)
    known = {canonical_form(e.graph) for e in census.critical()}
    found = 0
    for _ in range(300):
        G = random_multigraph(rng, rng.randint(3, 5), 1, max_mult=3, p=0.7)
        if solve(G, mode).satisfiable:
            continue
        H = _shrink_to_critical(G, mode)
        assert is_critical(H, mode).verdict is Verdict.CRITICAL
        assert canonical_form(H) in known
        found += 1
    assert found > 10
