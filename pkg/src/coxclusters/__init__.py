"""Combinatorics of clustered elements in simply laced Coxeter groups.

Root sequences and reduced words, inversion triples and their
contractibility, braid clusters and contracted expressions, cluster
contraction operators, and exhaustive enumeration of the maximally
clustered elements wherever the Coxeter graph allows only finitely many.
"""

from .errors import (
    CapExceededError,
    ClusterIndexError,
    CoxeterError,
    GraphSpecError,
    InvariantViolationError,
    NoBraidMoveError,
    NormalizationError,
    NotBraidClusterError,
    NotContractedError,
    NotMaximallyClusteredError,
    NotReducedError,
    RootSequenceError,
    ScopeError,
    WordSpecError,
)
from .graphs import (
    ComponentVerdict,
    CoxeterGraph,
    FinitenessReport,
    classify_graph,
    coxeter_family,
    induced_subgraph,
    parse_graph,
)
from .words import (
    DEFAULT_MAX_NODES,
    GroupElement,
    Root,
    Word,
    apply_braid_move,
    canonical_form,
    cartan_pairing,
    commutation_class,
    evaluate_word,
    format_root,
    format_word,
    is_positive_root,
    is_reduced,
    parse_word,
    positive_roots,
    reduced_word_graph,
    reflect,
    root_height,
    root_sequence,
    simple_root,
    some_reduced_word,
    word_from_root_sequence,
)
from .triples import (
    InversionTriple,
    TripleReport,
    check_subword_heredity,
    classification_flags,
    classify_element,
    clear_caches,
    contractible_triples,
    inversion_set,
    inversion_triples,
    is_fully_commutative_word,
)
from .clusters import (
    BraidCluster,
    ClusterGraph,
    ContractedDecomposition,
    cluster_graph,
    contract_cluster,
    contract_fully,
    contracted_decomposition,
    find_contracted_expression,
    is_braid_cluster,
    is_normalized,
    normalize_cluster,
    parse_bracketed,
)
from .enumeration import CensusRow, enumerate_all_mc, enumerate_by_length

__version__ = "0.1.0"
