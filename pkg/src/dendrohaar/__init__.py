"""Haar wavelet transforms on dendrograms, with the clustering, embedding,
text-encoding and information-accounting steps around them."""

__version__ = "0.1.0"

from .cluster import Dendrogram, Merge, cophenetic, is_ultrametric, ward_cluster
from .core import DataMatrix, range_normalize, read_csv, validate_matrix, validate_weights
from .corranal import (
    ContingencyTable,
    FactorEmbedding,
    chi2_distance,
    correspondence_analysis,
    double,
)
from .infometrics import (
    BagOfWords,
    BooleanPositional,
    DiscretizedReal,
    Hierarchical,
    RankSequence,
    detail_energy_profile,
    generation_cost,
    kendall_w,
    shannon_bits,
    spearman_rho,
)
from .textcodec import (
    RankTable,
    boolean_encoding_size,
    encode_ranks,
    node_set_labels,
    normalize_length,
    rank_decompose,
    rank_terms,
    tokenize,
    word_equation,
)
from .wavelet import (
    ApproximationChain,
    DendroWavelet,
    HaarScheme,
    chain,
    chain_stats,
    forward,
    inverse,
    partial_reconstruct,
)
