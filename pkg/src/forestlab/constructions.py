"""Forcing gadgets and the three extremal families.

Gadgets are pendant subgraphs hung on an anchor vertex:

* two-fundamental: new ``x, y`` with edges ``vx, vy`` and a double edge ``xy``;
* three-fundamental: a new triangle ``xyz`` joined to ``v`` (a K4 through v);
* M*: a K4 through the anchor whose members carry two-fundamental gadgets,
  which forces the anchor into M in every (e,F)-coloring;
* (M*, M*): an M*-gadget on a new anchor with one two-fundamental gadget
  swapped for a double-edge path back to another vertex ``u``.

Families are labeled skeleton-first (left to right as drawn), with every
gadget vertex appended afterwards.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from dataclasses import dataclass, field

from .errors import BadIndex, BadParameters, StyleMismatch
from .graph import WeightedMultigraph, build_graph


class GadgetKind(str, enum.Enum):
    TWO_FUNDAMENTAL = "two"
    THREE_FUNDAMENTAL = "three"


class FamilyId(str, enum.Enum):
    MULTI_DEGREE = "md"
    MULTI_EDGES = "me"
    SIMPLE_DEGREE = "sd"


class ExpansionStyle(str, enum.Enum):
    MULTIGRAPH = "multi"
    SIMPLE = "simple"


@dataclass
class _Builder:
    D: int
    weights: list[int] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    @classmethod
    def from_graph(cls, G: WeightedMultigraph) -> _Builder:
        return cls(G.D, list(G.weights), list(G.edges))

    @property
    def n(self) -> int:
        return len(self.weights)

    def add_vertex(self, weight: int = 1) -> int:
        self.weights.append(weight)
        return len(self.weights) - 1

    def add_edge(self, u: int, v: int, mult: int = 1) -> None:
        self.edges.append((u, v, mult))

    def check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise BadIndex(f"vertex {v} not in graph on {self.n} vertices")

    def two_fundamental(self, v: int) -> None:
        x, y = self.add_vertex(), self.add_vertex()
        self.add_edge(v, x)
        self.add_edge(v, y)
        self.add_edge(x, y, 2)

    def three_fundamental(self, v: int) -> None:
        x, y, z = self.add_vertex(), self.add_vertex(), self.add_vertex()
        for a, b in ((x, y), (y, z), (x, z), (v, x), (v, y), (v, z)):
            self.add_edge(a, b)

    def gadgets(self, v: int, count: int, kind: GadgetKind = GadgetKind.TWO_FUNDAMENTAL) -> None:
        for _ in range(count):
            if kind is GadgetKind.TWO_FUNDAMENTAL:
                self.two_fundamental(v)
            else:
                self.three_fundamental(v)

    def m_star_skeleton(self, v: int) -> tuple[list[int], list[int]]:
        """K4 through v; returns its four vertices and their gadget counts."""
        D = self.D
        quad = [v, self.add_vertex(), self.add_vertex(), self.add_vertex()]
        for i in range(4):
            for j in range(i + 1, 4):
                self.add_edge(quad[i], quad[j])
        counts = [D // 2] * 4
        if D % 2 == 0:
            counts[0] -= 1
        else:
            counts[2] += 1
            counts[3] += 1
        return quad, counts

    def m_star(self, v: int) -> None:
        quad, counts = self.m_star_skeleton(v)
        for x, g in zip(quad, counts):
            self.gadgets(x, g)

    def mm(self, u: int, v: int) -> int:
        """(M*, M*)-gadget from u to an existing anchor v; returns the swapped vertex."""
        quad, counts = self.m_star_skeleton(v)
        eligible = [i for i in range(1, 4) if counts[i] > 0]
        assert eligible, "an M*-gadget always has a removable gadget off its anchor"
        i = eligible[0]
        counts[i] -= 1
        for x, g in zip(quad, counts):
            self.gadgets(x, g)
        t1, t2 = self.add_vertex(), self.add_vertex()
        self.add_edge(t1, t2, 2)
        self.add_edge(t1, u)
        self.add_edge(t2, quad[i])
        return quad[i]

    def build(self) -> WeightedMultigraph:
        return build_graph(self.n, self.D, self.weights, self.edges)


def attach_gadget(G: WeightedMultigraph, v: int, kind: GadgetKind | str = GadgetKind.TWO_FUNDAMENTAL) -> WeightedMultigraph:
    kind = GadgetKind(kind)
    b = _Builder.from_graph(G)
    b.check(v)
    b.gadgets(v, 1, kind)
    return b.build()


def attach_m_star(G: WeightedMultigraph, v: int, D: int | None = None) -> WeightedMultigraph:
    b = _Builder.from_graph(G)
    if D is not None:
        b.D = D
    if b.D < 1:
        raise BadParameters("M*-gadget needs D >= 1")
    b.check(v)
    b.m_star(v)
    return b.build()


def attach_mm(G: WeightedMultigraph, u: int, D: int | None = None) -> tuple[WeightedMultigraph, int]:
    """Hang an (M*, M*)-gadget from u on a fresh anchor; returns (graph, anchor)."""
    b = _Builder.from_graph(G)
    if D is not None:
        b.D = D
    if b.D < 1:
        raise BadParameters("(M*,M*)-gadget needs D >= 1")
    b.check(u)
    anchor = b.add_vertex()
    b.mm(u, anchor)
    return b.build(), anchor


def m_star_size(D: int) -> tuple[int, int]:
    """(vertices, edges) of an M*-gadget, anchor included."""
    return (4 * D + 2, 8 * D + 2) if D % 2 == 0 else (4 * D + 4, 8 * D + 6)


def family_size(family: FamilyId | str, D: int, k: int) -> tuple[int, int]:
    """Closed-form (vertices, edges) for a family member."""
    family = FamilyId(family)
    if family is FamilyId.MULTI_DEGREE:
        g = D * k + 2 * D + 2
        return 2 * k + 2 + 2 * g, 3 * k + 2 + 4 * g
    if family is FamilyId.SIMPLE_DEGREE:
        g = D * k + 2 * D + 3
        return 3 * k + 3 * g, 5 * k - 2 + 6 * g
    nv, ne = m_star_size(D)
    return nv * k + 2, ne * k + 4


def critical_edge_bound(family: FamilyId | str, D: int, n: int):
    """Least edge count allowed for a critical graph on n vertices in the family's regime."""
    family = FamilyId(family)
    if family is FamilyId.MULTI_DEGREE or (family is FamilyId.MULTI_EDGES and D % 2 == 1):
        return Fraction((4 * D + 3) * n + 2, 2 * (D + 1))
    if family is FamilyId.MULTI_EDGES:
        return Fraction((4 * D + 1) * n + 2, 2 * D + 1)
    return Fraction((6 * D + 5) * n + 3, 3 * (D + 1))


def build_family(family: FamilyId | str, D: int, k: int) -> WeightedMultigraph:
    family = FamilyId(family)
    if D < 1 or (family is FamilyId.SIMPLE_DEGREE and D < 2):
        raise BadParameters(f"{family.value} family needs D >= {2 if family is FamilyId.SIMPLE_DEGREE else 1}")
    if k < (0 if family is FamilyId.MULTI_DEGREE else 1):
        raise BadParameters(f"k={k} too small for family {family.value}")
    b = _Builder(D)
    if family is FamilyId.MULTI_DEGREE:
        xs = [b.add_vertex() for _ in range(2 * k + 2)]
        for i in range(2 * k + 1):
            b.add_edge(xs[i], xs[i + 1], 2 if i % 2 == 0 else 1)
        for i, x in enumerate(xs):
            if i in (0, 2 * k + 1):
                g = D + 1
            else:
                g = D if i % 2 == 0 else 0
            b.gadgets(x, g)
    elif family is FamilyId.SIMPLE_DEGREE:
        tri = [(b.add_vertex(), b.add_vertex(), b.add_vertex()) for _ in range(k)]
        for x, y, z in tri:
            b.add_edge(x, y)
            b.add_edge(y, z)
            b.add_edge(x, z)
        for i in range(k - 1):
            z = tri[i][2]
            b.add_edge(z, tri[i + 1][0])
            b.add_edge(z, tri[i + 1][1])
        x1, y1, _ = tri[0]
        b.gadgets(x1, D + 1, GadgetKind.THREE_FUNDAMENTAL)
        b.gadgets(y1, D + 1, GadgetKind.THREE_FUNDAMENTAL)
        for i, (_, _, z) in enumerate(tri):
            b.gadgets(z, D + 1 if i == k - 1 else D, GadgetKind.THREE_FUNDAMENTAL)
    else:
        vs = [b.add_vertex() for _ in range(k)]
        b.m_star(vs[0])
        for i in range(k - 1):
            b.mm(vs[i], vs[i + 1])
        b.two_fundamental(vs[-1])
    G = b.build()
    n, m = family_size(family, D, k)
    assert (G.n, G.num_edges) == (n, m), f"{family.value}: built {G.n}/{G.num_edges}, expected {n}/{m}"
    assert critical_edge_bound(family, D, G.n) == G.num_edges
    if family is FamilyId.SIMPLE_DEGREE:
        assert G.is_simple
    return G


def expand_weights_to_gadgets(G: WeightedMultigraph, style: ExpansionStyle | str) -> WeightedMultigraph:
    """Trade each extra unit of weight for one pendant gadget of the given style."""
    style = ExpansionStyle(style)
    if style is ExpansionStyle.SIMPLE and not G.is_simple:
        raise StyleMismatch("simple expansion needs a simple host graph")
    kind = GadgetKind.THREE_FUNDAMENTAL if style is ExpansionStyle.SIMPLE else GadgetKind.TWO_FUNDAMENTAL
    b = _Builder(G.D, [1] * G.n, list(G.edges))
    for v, w in enumerate(G.weights):
        b.gadgets(v, w - 1, kind)
    return b.build()
