"""Networks: node labels plus a directed dissimilarity matrix.

A network here is a finite node set with a nonnegative, possibly asymmetric
dissimilarity that is zero exactly on the diagonal. Entries may be ``inf``
to encode a missing edge. Every value derived from a network by the library
is built from ``min`` and ``max`` alone, so values are compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadParams,
    BadPermutation,
    DimensionMismatch,
    DuplicateLabel,
    InvalidPartition,
    NegativeEntry,
    NonZeroDiagonal,
    TooFewNodes,
    ValidationError,
    ZeroOffDiagonal,
)


def _frozen(a):
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Network:
    """Validated, immutable network. Build with :func:`validate_network`."""

    nodes: tuple[str, ...]
    dissim: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)

    def index(self, label: str) -> int:
        try:
            return self.nodes.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.nodes == other.nodes and np.array_equal(self.dissim, other.dissim)

    def __hash__(self):
        return hash((self.nodes, self.dissim.tobytes()))

    def __repr__(self):
        return f"Network(nodes={list(self.nodes)!r}, dissim={self.dissim.tolist()!r})"


@dataclass(frozen=True)
class CanonicalSpec:
    """Parameters of a permuted canonical network.

    ``perm`` is a 0-based permutation; the identity is used when omitted.
    """

    n: int
    alpha: float
    beta: float
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise BadParams(f"n must be a positive integer, got {self.n!r}")
        if not (self.alpha > 0 and self.beta > 0):
            raise BadParams("alpha and beta must be positive")
        if self.perm is not None:
            object.__setattr__(self, "perm", _check_perm(self.perm, self.n))


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of node indices covering ``range(n)``.

    Blocks are stored sorted internally and ordered by their smallest
    element, so two partitions compare equal iff they have the same blocks.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        norm = [tuple(sorted(int(i) for i in b)) for b in blocks]
        if any(len(b) == 0 for b in norm):
            raise InvalidPartition("empty block")
        flat = [i for b in norm for i in b]
        if len(flat) != len(set(flat)):
            raise InvalidPartition("blocks overlap")
        size = len(flat) if n is None else n
        if set(flat) != set(range(size)):
            raise InvalidPartition(f"blocks do not cover nodes 0..{size - 1}")
        norm.sort(key=lambda b: b[0])
        object.__setattr__(self, "blocks", tuple(norm))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, i: int) -> int:
        for k, b in enumerate(self.blocks):
            if i in b:
                return k
        raise KeyError(i)

    def block_map(self) -> list[int]:
        """Node index -> block index."""
        out = [0] * self.n
        for k, b in enumerate(self.blocks):
            for i in b:
                out[i] = k
        return out

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside a block of ``other``."""
        owner = other.block_map()
        return all(len({owner[i] for i in b}) == 1 for b in self.blocks)

    def labelled(self, labels: Sequence[str]) -> list[list[str]]:
        return [[labels[i] for i in b] for b in self.blocks]


def validate_network(nodes: Sequence[str] | None, dissim) -> Network:
    """Check a candidate network and return it as a :class:`Network`.

    If ``nodes`` is None the labels default to ``"0", "1", ...``. Raises the
    error for the first violated invariant in the order: shape, labels,
    diagonal, negative entries, zero off-diagonal entries.
    """
    try:
        a = np.array(dissim, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"dissimilarities are not a numeric matrix: {exc}") from None
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        raise DimensionMismatch("network needs at least one node")
    if nodes is None:
        nodes = [str(i) for i in range(n)]
    nodes = tuple(str(x) for x in nodes)
    if len(nodes) != n:
        raise DimensionMismatch(f"{len(nodes)} labels for a {n}x{n} matrix")
    if len(set(nodes)) != n:
        seen = set()
        dup = next(x for x in nodes if x in seen or seen.add(x))
        raise DuplicateLabel(f"duplicate label {dup!r}")
    if np.isnan(a).any():
        i, j = map(int, np.argwhere(np.isnan(a))[0])
        raise ValidationError(f"entry ({i}, {j}) is NaN")
    diag = np.diagonal(a)
    if (diag != 0).any():
        i = int(np.flatnonzero(diag != 0)[0])
        raise NonZeroDiagonal(i, float(diag[i]))
    if (a < 0).any():
        i, j = map(int, np.argwhere(a < 0)[0])
        raise NegativeEntry(i, j, float(a[i, j]))
    off = a == 0
    np.fill_diagonal(off, False)
    if off.any():
        i, j = map(int, np.argwhere(off)[0])
        raise ZeroOffDiagonal(i, j)
    return Network(nodes, _frozen(a))


def _check_perm(perm, n):
    try:
        perm = tuple(int(p) for p in perm)
    except (TypeError, ValueError):
        raise BadPermutation(f"not a permutation: {perm!r}") from None
    if sorted(perm) != list(range(n)):
        raise BadPermutation(f"{list(perm)} is not a permutation of 0..{n - 1}")
    return perm


def _need_two(net):
    if net.n < 2:
        raise TooFewNodes("statistic undefined for a single-node network")


def _offdiag(a):
    mask = ~np.eye(a.shape[0], dtype=bool)
    return a[mask]


def separation(net: Network) -> float:
    """Smallest positive dissimilarity of the network."""
    _need_two(net)
    return float(_offdiag(net.dissim).min())


def min_loop_cost(net: Network) -> float:
    """Smallest maximum-link cost over all loops through at least two nodes.

    A loop through ``x`` and ``x'`` is a chain there plus a chain back, so
    this is the minimum over pairs of ``max(c(x, x'), c(x', x))`` with ``c``
    the directed minimum chain cost.
    """
    _need_two(net)
    c = kernels.minmax_closure(net.dissim)
    return float(_offdiag(np.maximum(c, c.T)).min())


def is_symmetric(net: Network) -> bool:
    return bool(np.array_equal(net.dissim, net.dissim.T))


def max_symmetrize(net: Network) -> Network:
    return Network(net.nodes, _frozen(np.maximum(net.dissim, net.dissim.T)))


def min_symmetrize(net: Network) -> Network:
    return Network(net.nodes, _frozen(np.minimum(net.dissim, net.dissim.T)))


def canonical_matrix(n: int, alpha: float, beta: float) -> np.ndarray:
    """``alpha`` above the diagonal, ``beta`` below, zero on it."""
    a = np.full((n, n), float(beta))
    a[np.triu_indices(n, 1)] = float(alpha)
    np.fill_diagonal(a, 0.0)
    return a


def canonical_network(spec: CanonicalSpec) -> Network:
    """Build the permuted canonical network described by ``spec``.

    Nodes are labelled ``"1" .. "n"``. Entry ``(i, j)`` is ``A(perm[i],
    perm[j])`` where ``A`` is :func:`canonical_matrix`.
    """
    a = canonical_matrix(spec.n, spec.alpha, spec.beta)
    if spec.perm is not None:
        p = np.asarray(spec.perm)
        a = a[np.ix_(p, p)]
    return Network(tuple(str(i + 1) for i in range(spec.n)), _frozen(a))


def two_node_network(alpha: float, beta: float) -> Network:
    """Nodes ``p``, ``q`` with ``A(p, q) = alpha`` and ``A(q, p) = beta``."""
    if not (alpha > 0 and beta > 0):
        raise BadParams("alpha and beta must be positive")
    return validate_network(["p", "q"], [[0.0, alpha], [beta, 0.0]])


def permute(net: Network, perm: Sequence[int], carry_labels: bool = False) -> Network:
    """Apply a permutation to the dissimilarity function.

    The output satisfies ``out.dissim[i, j] == net.dissim[perm[i], perm[j]]``.
    By default node labels stay in place, so the permutation moves
    dissimilarities between named nodes. With ``carry_labels=True`` the labels
    move along with their rows, which yields the same network under new
    indices.
    """
    p = np.asarray(_check_perm(perm, net.n))
    a = net.dissim[np.ix_(p, p)]
    nodes = tuple(net.nodes[i] for i in p) if carry_labels else net.nodes
    return Network(nodes, _frozen(a))


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def quotient(net: Network, part: Partition) -> Network:
    """Collapse each block to one node.

    The dissimilarity between two blocks is the smallest dissimilarity from a
    member of the first to a member of the second. Block labels join member
    labels with ``+``.
    """
    if part.n != net.n:
        raise InvalidPartition(f"partition covers {part.n} nodes, network has {net.n}")
    k = len(part.blocks)
    a = np.zeros((k, k))
    for s, bs in enumerate(part.blocks):
        for t, bt in enumerate(part.blocks):
            if s != t:
                a[s, t] = net.dissim[np.ix_(bs, bt)].min()
    labels = tuple("+".join(net.nodes[i] for i in b) for b in part.blocks)
    return Network(labels, _frozen(a))
