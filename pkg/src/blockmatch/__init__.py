"""Exact tools for k-uniform set families with no perfect matching and no
small blocking set: constructions, matching/blocking deciders, the shift
operator, a graph-level edge-bound verifier and extremal searches."""

from .errors import CoverableError, DomainError
from .family import (
    BlockingWitness,
    KSet,
    Matching,
    SetFamily,
    covering_matching,
    find_perfect_matching,
    is_blocking_set,
    is_blocking_set_unbounded,
    is_matching,
    link,
    max_matching_size,
    min_blocking_size,
)
from .constructions import (
    ConstructionSpec,
    build_E,
    build_Eprime3,
    build_augmented_E2,
    build_kleitman,
    canonical_blocks,
    delta3,
    size_E,
    size_Eprime3,
)
from .shifting import (
    ClosureViolation,
    ShiftStep,
    ShiftTrace,
    closure_property_check,
    is_meaningful,
    is_shifted_on,
    potential,
    shift,
    shift_closure,
)
from .graphs import Graph, graph_cover_exists, hall_witness, matching_covering
from .graphprop import (
    MixedMatching,
    PropInstance,
    VerifyReport,
    build_fig1,
    build_fig2,
    cover_b,
    edge_bound,
    exhaustive_verify,
    instance_signature,
    sampled_verify,
    validate,
)
from .search import ExtremalResult, SearchBudget, extremal_search, maximality_check
from .backend import backend_name

__version__ = "0.1.0"

__all__ = [
    "BlockingWitness",
    "ClosureViolation",
    "ConstructionSpec",
    "CoverableError",
    "DomainError",
    "ExtremalResult",
    "Graph",
    "KSet",
    "Matching",
    "MixedMatching",
    "PropInstance",
    "SearchBudget",
    "SetFamily",
    "ShiftStep",
    "ShiftTrace",
    "VerifyReport",
    "backend_name",
    "build_E",
    "build_Eprime3",
    "build_augmented_E2",
    "build_fig1",
    "build_fig2",
    "build_kleitman",
    "canonical_blocks",
    "closure_property_check",
    "cover_b",
    "covering_matching",
    "delta3",
    "edge_bound",
    "exhaustive_verify",
    "extremal_search",
    "find_perfect_matching",
    "graph_cover_exists",
    "hall_witness",
    "instance_signature",
    "is_blocking_set",
    "is_blocking_set_unbounded",
    "is_matching",
    "is_meaningful",
    "is_shifted_on",
    "link",
    "matching_covering",
    "max_matching_size",
    "maximality_check",
    "min_blocking_size",
    "potential",
    "sampled_verify",
    "shift",
    "shift_closure",
    "size_E",
    "size_Eprime3",
    "validate",
]
