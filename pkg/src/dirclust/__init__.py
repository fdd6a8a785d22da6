"""Hierarchical clustering of asymmetric (directed) dissimilarity networks.

Reciprocal, nonreciprocal, unilateral and single-linkage clustering, the
dendrogram/ultrametric correspondence, and executable checks of the
clustering axioms. The (min, max) closure kernel is compiled with Cython
when available; ``dirclust.kernels.BACKEND`` tells which one is in use.
"""

from .errors import DirclustError, ValidationError
from .kernels import BACKEND
from .methods import (
    MethodId,
    cluster,
    nonreciprocal,
    reciprocal,
    single_linkage,
    unilateral,
)
from .network import (
    CanonicalSpec,
    Network,
    Partition,
    canonical_matrix,
    canonical_network,
    is_symmetric,
    max_symmetrize,
    min_loop_cost,
    min_symmetrize,
    permute,
    quotient,
    separation,
    two_node_network,
    validate_network,
)
from .paths import (
    brute_force_min_chain_cost,
    canonical_embedding,
    chain_cost,
    delta_partition,
    min_chain,
    min_chain_cost,
)
from .ultrametric import (
    Dendrogram,
    Merge,
    Ultrametric,
    cut,
    to_dendrogram,
    to_newick,
    to_ultrametric,
    validate_ultrametric,
)

__version__ = "0.1.0"
