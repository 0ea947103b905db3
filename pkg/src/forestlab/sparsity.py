"""(a,b)-sparsity certificates and maximum average degree, in exact rationals.

A multigraph is (a,b)-sparse when every vertex set A with |A| >= 2 spans at
most a|A| + b edges.  Everything here reduces to the excess

    excess(A) = |E(G[A])| - a|A|,   maximized over |A| >= 2,

which is computed two independent ways: by enumerating all vertex sets
(``max_excess_exact``) and by one minimum cut per anchored pair of adjacent
vertices (``max_excess_cut``).  The graph is (a,b)-sparse iff the maximum
excess is at most b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import GraphError, NonPositiveSlope, TooLarge
from .graph import WeightedMultigraph, edge_count

EXACT_CAP = 20


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_slope(a) -> Fraction:
    a = as_fraction(a)
    if a <= 0:
        raise NonPositiveSlope(f"slope a must be positive, got {a}")
    return a


def _check_pairs(G: WeightedMultigraph) -> None:
    if G.n < 2:
        raise GraphError("excess is taken over sets of at least two vertices")


def max_excess_exact(G: WeightedMultigraph, a, cap: int = EXACT_CAP) -> tuple[list[int], Fraction]:
    """Enumerate all 2^n vertex sets; ties go to the lexicographically least set."""
    a = _check_slope(a)
    _check_pairs(G)
    n = G.n
    if n > cap:
        raise TooLarge(f"exhaustive excess capped at {cap} vertices, graph has {n}")
    p, q = a.numerator, a.denominator
    masks = np.arange(1 << n, dtype=np.int64)
    bits = [(masks >> v) & 1 for v in range(n)]
    sizes = np.zeros_like(masks)
    for b in bits:
        sizes += b
    edges = np.zeros_like(masks)
    for u, v, m in G.edges:
        edges += m * (bits[u] & bits[v])
    scaled = q * edges - p * sizes
    scaled[sizes < 2] = np.iinfo(np.int64).min
    best = int(scaled.max())
    winners = np.flatnonzero(scaled == best)
    subset = min(tuple(v for v in range(n) if w >> v & 1) for w in winners.tolist())
    return list(subset), Fraction(best, q)


def _anchored_cut(G: WeightedMultigraph, pairs, p: int, q: int, anchor: tuple[int, int]) -> tuple[list[int], int]:
    """max over A containing both anchors of q|E(A)| - p|A|, with the least maximizer.

    Network: source -> pair node (q * multiplicity), pair node -> both
    endpoints (infinite), vertex -> sink (p), source -> anchors (infinite).
    The best value is the total pair capacity minus the minimum cut, and the
    vertices reachable from the source in the residual graph form the
    smallest optimal set.
    """
    n = G.n
    src, snk = 0, 1
    vbase = 2
    ebase = 2 + n
    size = ebase + len(pairs)
    total = sum(q * m for _, _, m in pairs)
    inf = total + p * n + 1
    rows, cols, caps = [], [], []

    def arc(i, j, c):
        rows.append(i)
        cols.append(j)
        caps.append(c)

    for idx, (u, v, m) in enumerate(pairs):
        e = ebase + idx
        arc(src, e, q * m)
        arc(e, vbase + u, inf)
        arc(e, vbase + v, inf)
    for v in range(n):
        arc(vbase + v, snk, p)
    for v in anchor:
        arc(src, vbase + v, inf)
    cap = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(size, size))
    cap.sum_duplicates()
    result = maximum_flow(cap, src, snk)
    flow = result.flow.toarray()
    residual = cap.toarray() - flow
    seen = np.zeros(size, dtype=bool)
    seen[src] = True
    stack = [src]
    while stack:
        i = stack.pop()
        for j in np.flatnonzero((residual[i] > 0) & ~seen):
            seen[j] = True
            stack.append(int(j))
    chosen = [v for v in range(n) if seen[vbase + v]]
    return chosen, total - int(result.flow_value)


def max_excess_cut(G: WeightedMultigraph, a) -> tuple[list[int], Fraction]:
    """Same quantity as ``max_excess_exact`` via minimum cuts.

    Every set with an induced edge contains some adjacent pair, so anchoring
    each adjacent pair in turn covers all of them; sets without induced edges
    are best at size two and are found by scanning non-adjacent pairs.
    """
    a = _check_slope(a)
    _check_pairs(G)
    p, q = a.numerator, a.denominator
    best: tuple[int, list[int]] | None = None
    for u, v, _ in G.edges:
        chosen, val = _anchored_cut(G, G.edges, p, q, (u, v))
        if best is None or val > best[0]:
            best = (val, chosen)
    for u, v in combinations(range(G.n), 2):
        if G.mult(u, v) == 0:
            val = -2 * p
            if best is None or val > best[0]:
                best = (val, [u, v])
            break
    assert best is not None
    return best[1], Fraction(best[0], q)


@dataclass
class SparsityCertificate:
    sparse: bool
    a: Fraction
    b: Fraction
    subset: list[int] | None = None
    edges: int | None = None
    bound: Fraction | None = None
    max_excess: Fraction | None = None
    method: str = "exact"

    @property
    def verdict(self) -> str:
        return "Sparse" if self.sparse else "Violation"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "a": str(self.a),
            "b": str(self.b),
            "max_excess": str(self.max_excess),
            "method": self.method,
        }
        if not self.sparse:
            out.update({"subset": self.subset, "edges": self.edges, "bound": str(self.bound)})
        return out


def certify_sparsity(G: WeightedMultigraph, a, b, method: str = "auto") -> SparsityCertificate:
    """Decide (a,b)-sparsity; on failure return a most-violating vertex set."""
    a = _check_slope(a)
    b = as_fraction(b)
    if G.n < 2:
        # no set with |A| >= 2 exists
        return SparsityCertificate(True, a, b, method="vacuous")
    if method == "auto":
        method = "exact" if G.n <= EXACT_CAP else "cut"
    finder = max_excess_exact if method == "exact" else max_excess_cut
    subset, excess = finder(G, a)
    if excess <= b:
        return SparsityCertificate(True, a, b, max_excess=excess, method=method)
    m = edge_count(G, subset)
    bound = a * len(subset) + b
    assert len(subset) >= 2 and m > bound
    return SparsityCertificate(False, a, b, subset, m, bound, excess, method)


def mad(G: WeightedMultigraph) -> Fraction:
    """Maximum average degree, by binary search over the possible densities.

    The densest set's ratio |E(A)|/|A| has numerator at most |E| and
    denominator at most n, so the answer is one of finitely many rationals;
    a set of density >= t exists iff the cut excess at slope t is >= 0.
    """
    if G.num_edges == 0:
        return Fraction(0)
    candidates = sorted({Fraction(m, k) for k in range(2, G.n + 1) for m in range(1, G.num_edges + 1)})
    lo, hi = 0, len(candidates) - 1
    # invariant: candidates[lo] is achievable
    while lo < hi:
        mid = (lo + hi + 1) // 2
        _, excess = max_excess_cut(G, candidates[mid])
        if excess >= 0:
            lo = mid
        else:
            hi = mid - 1
    return 2 * candidates[lo]


def mad_exhaustive(G: WeightedMultigraph, cap: int = EXACT_CAP) -> Fraction:
    if G.n > cap:
        raise TooLarge(f"exhaustive mad capped at {cap} vertices")
    best = Fraction(0)
    for size in range(2, G.n + 1):
        for A in combinations(range(G.n), size):
            best = max(best, Fraction(2 * edge_count(G, A), size))
    return best
