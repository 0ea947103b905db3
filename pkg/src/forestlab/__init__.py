"""Exact tooling for partitioning weighted multigraphs into a forest and a bounded forest."""

from .census import CanonicalForm, CriticalCensus, canonical_form, enumerate_graphs, find_critical_graphs
from .coloring import (
    ColorMode,
    ColoringResult,
    CriticalityReport,
    Partition,
    Verdict,
    count_colorings,
    is_critical,
    iter_colorings,
    solve,
    verify_partition,
)
from .constructions import (
    ExpansionStyle,
    FamilyId,
    GadgetKind,
    attach_gadget,
    attach_m_star,
    attach_mm,
    build_family,
    critical_edge_bound,
    expand_weights_to_gadgets,
    family_size,
)
from .discharging import ChargeLedger, ConfigAudit, audit_configurations, discharge_R1, initial_charges
from .errors import ForestLabError
from .graph import WeightedMultigraph, build_graph, graph_from_json, graph_to_json, parse_graph, serialize_graph
from .potential import (
    PotentialFlavor,
    audit_gap_predicates,
    min_potential_subset,
    potential,
    potential_constants,
)
from .sparsity import SparsityCertificate, certify_sparsity, mad, max_excess_cut, max_excess_exact

__version__ = "0.1.0"
