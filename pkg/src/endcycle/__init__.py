"""Certified cycle-space membership and end-aware homology for locally
finite graphs with finitely many orbits under a shift action.

The package decides whether an integer edge vector lies in the cycle
space of the compactified graph, producing a checkable certificate
either way: a decomposition into oriented circles, or a finite oriented
cut with nonzero sum. On top of that sit combinatorial 1-chains and the
homology computations they support.
"""

from .chains import (
    AdmissibilityReport,
    AdmissiblePairSpec,
    ChainRep,
    Constant,
    EndJump,
    GroupDescriptor,
    Pass,
    PeriodicMember,
    Walk,
    ZeroChain,
    augmentation,
    boundary,
    chain_to_text,
    check_admissible,
    edge_vector_of,
    h0,
    h_n_trivial,
    homologous,
    homology_class,
    is_cycle_adhoc,
    pair_to_text,
    parse_chain_text,
    parse_pair_text,
    restrict_chain,
    subdivide_to_passes,
)
from .circles import (
    CircleDecomposition,
    CircuitFamily,
    EndCircle,
    FiniteCircuit,
    RaySegment,
)
from .cuts import (
    ClassSetCut,
    FiniteSetCut,
    HalfSpaceCut,
    cut_edges,
    cut_sum,
    enumerate_finite_cuts,
    star_cut,
)
from .errors import (
    BadDimension,
    EndcycleError,
    FormatError,
    GraphMismatch,
    InfiniteBoundarySupport,
    InfiniteCut,
    InternalError,
    NonzeroBoundary,
    NotACycle,
    NotAdmissible,
    NotAdmissiblePair,
    NotARay,
    NotInCycleSpace,
    NotRepresentable,
    NotThin,
    UnknownEdge,
    UnknownEnd,
    UnknownVertex,
)
from .examples import example_documents, example_graph, example_names
from .graph import (
    Dart,
    EdgeId,
    EndId,
    Graph,
    Ray,
    VertexId,
    graph_from_text,
    parse_graph_text,
)
from .membership import (
    Member,
    NonMember,
    certificate_from_json,
    certificate_to_json,
    decompose,
    is_member,
    verify_certificate,
)
from .vectors import (
    EdgeVector,
    FamilyMember,
    VectorFamily,
    parse_vector_text,
    thin_sum,
    vector_to_text,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "AdmissiblePairSpec",
    "BadDimension",
    "ChainRep",
    "CircleDecomposition",
    "CircuitFamily",
    "ClassSetCut",
    "Constant",
    "Dart",
    "EdgeId",
    "EdgeVector",
    "EndCircle",
    "EndId",
    "EndJump",
    "EndcycleError",
    "FamilyMember",
    "FiniteCircuit",
    "FiniteSetCut",
    "FormatError",
    "Graph",
    "GraphMismatch",
    "GroupDescriptor",
    "HalfSpaceCut",
    "InfiniteBoundarySupport",
    "InfiniteCut",
    "InternalError",
    "Member",
    "NonMember",
    "NonzeroBoundary",
    "NotACycle",
    "NotARay",
    "NotAdmissible",
    "NotAdmissiblePair",
    "NotInCycleSpace",
    "NotRepresentable",
    "NotThin",
    "Pass",
    "PeriodicMember",
    "Ray",
    "RaySegment",
    "UnknownEdge",
    "UnknownEnd",
    "UnknownVertex",
    "VectorFamily",
    "VertexId",
    "Walk",
    "ZeroChain",
    "augmentation",
    "boundary",
    "certificate_from_json",
    "certificate_to_json",
    "chain_to_text",
    "check_admissible",
    "cut_edges",
    "cut_sum",
    "decompose",
    "edge_vector_of",
    "enumerate_finite_cuts",
    "example_documents",
    "example_graph",
    "example_names",
    "graph_from_text",
    "h0",
    "h_n_trivial",
    "homologous",
    "homology_class",
    "is_cycle_adhoc",
    "is_member",
    "pair_to_text",
    "parse_chain_text",
    "parse_graph_text",
    "parse_pair_text",
    "parse_vector_text",
    "restrict_chain",
    "star_cut",
    "subdivide_to_passes",
    "thin_sum",
    "vector_to_text",
    "verify_certificate",
]
