"""Cycle-completable and k-quasichordal graph characterizations with
machine-checkable certificates, plus an exhaustive small-graph harness."""

from .graphs import (
    Graph,
    Graph6Error,
    UnsupportedSizeError,
    canonical_form,
    decode_graph6,
    encode_graph6,
    enumerate_connected,
    find_induced_embedding,
)
from .width import treewidth, is_partial_k_tree, is_series_parallel, has_k4_minor
from .elimination import (
    fill_in,
    find_blended,
    is_blended,
    is_chordal,
    supergraph_from_blended,
    verify_restricted_supergraph,
)
from .decomposition import (
    DecompositionTree,
    decompose,
    extract_decomposition_from_supergraph,
    find_clique_cutset,
    merge_supergraphs,
    reassemble,
)
from .forbidden import (
    built_from_closure,
    condition1_witness,
    f_witness,
    generate_family,
    lemma32_witness,
    vertex_partition,
)
from .characterize import (
    Verdict,
    check_1,
    check_2,
    check_3,
    check_3k,
    check_A,
    check_Ak,
    check_B,
    check_Bk,
    check_alpha,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
