"""Shortest and longest leaf distances of level-2 phylogenetic networks, and reconstruction from them."""

from .altpath import (
    AltPathEmbedding, ColoredTree, build_altpath, detect_altpath, format_tree,
    is_shortest_reconstructible, make_pair, parse_tree, similar, swap_in_place,
)
from .blobs import (
    BlobReduction, drop_middle_of_bad_triple, expand_pendant, identify_pendant,
    pendant_candidates, reduce_pendant,
)
from .chains import (
    CherryStep, FreshNames, chain_adjacency, chains_from_matrix, expand_cherry,
    find_cherries, reduce_cherry, structural_chains, subtree_reduce,
)
from .errors import *  # noqa: F401,F403
from .forms import PendantForm, bad_counterpart, is_bad_form
from .iso import canonical_network, certificate, is_isomorphic
from .metrics import (
    DistanceMatrix, brute_force_longest, format_matrix, longest_matrix,
    parse_matrix, shortest_matrix, sl_matrix,
)
from .network import Network, NetworkBuilder, format_network, parse_network, to_dot, validate
from .reconstruct import (
    AMBIGUOUS, UNIQUE, UNREALIZABLE, ReconstructionResult, ReductionTrace,
    TripleBulbSystem, extract_triples_and_bulbs, reconstruct_genside,
    reconstruct_shortest, reconstruct_single_blob, reconstruct_sl,
)
from .splits import Split, all_splits, is_cut_split, minimal_parts, structural_splits
from .structure import Blob, GeneratorGraph, blobs, classify_pendant, decompose, generator, level
from .testkit import GenParams, random_colored_tree, random_network, verify_roundtrip

__version__ = "0.1.0"
