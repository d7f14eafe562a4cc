"""Instance-level executors for the colorful refinement argument."""
from .hypergraph import CompletePartiteHypergraph, count_partite_copies, find_complete_partite
from .lemmas import (
    Case1,
    Case2,
    Inconclusive,
    LabeledFunction,
    RadonPremiseError,
    SeparatedPairCertificate,
    check_separable_subset,
    large_separated_pairs,
    refine_for_any_f,
    verify_separated_pair,
    weight,
)
from .pipeline import MTupleWitness, VennCertificate, VennRow, verify_outcome, weak_colorful_run

__all__ = [
    "Case1", "Case2", "CompletePartiteHypergraph", "Inconclusive", "LabeledFunction", "MTupleWitness",
    "RadonPremiseError", "SeparatedPairCertificate", "VennCertificate", "VennRow", "check_separable_subset",
    "count_partite_copies", "find_complete_partite", "large_separated_pairs", "refine_for_any_f",
    "verify_outcome", "verify_separated_pair", "weak_colorful_run", "weight",
]
