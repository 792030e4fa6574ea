"""Sparse paving matroids as stable sets of Johnson graphs.

The non-bases of a rank-r sparse paving matroid on [n] form a stable set
of the Johnson graph J(n,r); this package enumerates, counts, and samples
those stable sets, decides minor containment, digs into forts and moats,
and runs reproducible censuses from a small CLI.
"""

from .bits import elements_of, mask_of
from .core import (
    GeneralMatroid,
    LineStructure,
    RSubset,
    SparsePavingMatroid,
    adjacent,
    is_stable,
    make_sparse_paving,
    verify_matroid_axioms,
)
from .errors import (
    BadCardinalityError,
    BudgetExceededError,
    DependentContractionSetError,
    MatroidFileError,
    MismatchedAmbientError,
    NoBasisError,
    NotAFortError,
    NotStableError,
    PavingError,
    RankDeficientError,
    UnknownTargetError,
)
from .extremal import (
    CopyCount,
    DensityResult,
    abundance_trend,
    count_disjoint_copies,
    disjoint_copies,
    ex_density,
)
from .johnson import (
    JohnsonGraph,
    byskov_bound,
    count_sparse_paving,
    derive_seed,
    enumerate_stable_sets,
    fano_triples,
    johnson_graph,
    local_lym_ok,
    max_stable_bound,
    sample_sparse_paving,
    shadow,
    total_sparse_paving,
)
from .minors import (
    PavingQuotient,
    clean_copy_minor,
    common_core_lines,
    contains_line_structure,
    contract,
    disjoint_lines,
    has_minor,
    has_uniform_minor,
    independent_subsets,
    iter_embeddings,
    lift,
    restrict,
    uniform,
    whirl3,
)
from .structures import (
    classify_moat,
    find_disjoint_good_moats,
    fort_refine,
    is_fort,
    is_good_moat,
    is_moat,
    is_valid_coloring,
    loose_elements,
    moat_interior,
    polychromatic_subset,
    replace_moat_interior,
    tied_nonbases,
)

__version__ = "0.1.0"

__all__ = [
    "BadCardinalityError",
    "BudgetExceededError",
    "CopyCount",
    "DensityResult",
    "DependentContractionSetError",
    "GeneralMatroid",
    "JohnsonGraph",
    "LineStructure",
    "MatroidFileError",
    "MismatchedAmbientError",
    "NoBasisError",
    "NotAFortError",
    "NotStableError",
    "PavingError",
    "PavingQuotient",
    "RSubset",
    "RankDeficientError",
    "SparsePavingMatroid",
    "UnknownTargetError",
    "abundance_trend",
    "adjacent",
    "byskov_bound",
    "classify_moat",
    "clean_copy_minor",
    "common_core_lines",
    "contains_line_structure",
    "contract",
    "count_disjoint_copies",
    "count_sparse_paving",
    "derive_seed",
    "disjoint_copies",
    "disjoint_lines",
    "elements_of",
    "enumerate_stable_sets",
    "ex_density",
    "fano_triples",
    "find_disjoint_good_moats",
    "fort_refine",
    "has_minor",
    "has_uniform_minor",
    "is_fort",
    "is_good_moat",
    "is_moat",
    "is_stable",
    "is_valid_coloring",
    "independent_subsets",
    "iter_embeddings",
    "johnson_graph",
    "lift",
    "local_lym_ok",
    "loose_elements",
    "moat_interior",
    "make_sparse_paving",
    "mask_of",
    "max_stable_bound",
    "polychromatic_subset",
    "replace_moat_interior",
    "restrict",
    "sample_sparse_paving",
    "shadow",
    "tied_nonbases",
    "total_sparse_paving",
    "uniform",
    "verify_matroid_axioms",
    "whirl3",
]
