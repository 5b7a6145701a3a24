"""Cospectral graph pairs via unfolding constructions, certified exactly.

Three builders turn small binary seeds into pairs of simple graphs that
share a characteristic polynomial; the certification layer proves
cospectrality with exact integer arithmetic and settles isomorphism by
exhaustive search at these sizes.
"""

from .constructions import (
    Graph,
    HypothesisReport,
    UnfoldingPair,
    bipartite_graph,
    build_reflexive_unfolding,
    build_semireflexive_unfolding,
    build_tripartite_unfolding,
    check_hypotheses,
    validate_biregular,
)
from .equivalence import (
    ISO_CAP,
    PET_CAP,
    PermWitness,
    SimilarityCheck,
    graph_isomorphic,
    hammack_property_test,
    is_pet,
    is_pst,
    partition_respecting_iso,
    perm_equivalent,
    permutation_matrix,
    quick_non_pet,
    verify_similarity_witness,
)
from .errors import CapExceededError, PreconditionError
from .formats import dot, graph6
from .matrix import (
    Block2,
    Block3,
    IntMatrix,
    block_antidiag,
    block_diag,
    kron,
    partial_transpose,
    ptp2,
    ptp3,
)
from .report import PairReport, build_pair, certify, certify_seed
from .spectral import CharPoly, Spectrum, char_poly, cospectral, spectrum_approx

__version__ = "0.1.0"

__all__ = [
    "Block2",
    "Block3",
    "CapExceededError",
    "CharPoly",
    "Graph",
    "HypothesisReport",
    "ISO_CAP",
    "IntMatrix",
    "PET_CAP",
    "PairReport",
    "PermWitness",
    "PreconditionError",
    "SimilarityCheck",
    "Spectrum",
    "UnfoldingPair",
    "bipartite_graph",
    "block_antidiag",
    "block_diag",
    "build_pair",
    "build_reflexive_unfolding",
    "build_semireflexive_unfolding",
    "build_tripartite_unfolding",
    "certify",
    "certify_seed",
    "char_poly",
    "check_hypotheses",
    "cospectral",
    "dot",
    "graph6",
    "graph_isomorphic",
    "hammack_property_test",
    "is_pet",
    "is_pst",
    "kron",
    "partial_transpose",
    "partition_respecting_iso",
    "perm_equivalent",
    "permutation_matrix",
    "ptp2",
    "ptp3",
    "quick_non_pet",
    "spectrum_approx",
    "validate_biregular",
    "verify_similarity_witness",
]
