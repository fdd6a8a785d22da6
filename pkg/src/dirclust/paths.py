"""Chains, minimum chain costs and the two constructive embedding lemmas."""

from __future__ import annotations

import heapq
import math
from collections import deque
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    BadAlpha,
    ChainTooShort,
    IndexOutOfRange,
    PreconditionViolated,
    TooLarge,
)
from .network import Network, Partition, canonical_matrix, min_loop_cost, separation

BRUTE_FORCE_MAX_NODES = 8


def _frozen(a):
    a.flags.writeable = False
    return a


def chain_cost(net: Network, chain: Sequence[int]) -> float:
    """Largest link dissimilarity met while walking ``chain`` in order."""
    if len(chain) < 2:
        raise ChainTooShort("a chain needs at least two nodes")
    for i in chain:
        if not 0 <= i < net.n:
            raise IndexOutOfRange(f"node index {i} outside 0..{net.n - 1}")
    return float(max(net.dissim[a, b] for a, b in zip(chain, chain[1:])))


def min_chain_cost(net: Network, backend: str | None = None) -> np.ndarray:
    """Directed minimum chain cost for every ordered pair (read-only array).

    Entry ``[i, j]`` is the minimum over chains from ``i`` to ``j`` of the
    largest link dissimilarity along the chain.
    """
    return _frozen(kernels.minmax_closure(net.dissim, backend=backend))


def brute_force_min_chain_cost(net: Network) -> np.ndarray:
    """Reference implementation by exhaustive enumeration of simple chains.

    Depth-first search from every source over all simple chains. Meant as a
    test oracle; limited to :data:`BRUTE_FORCE_MAX_NODES` nodes.
    """
    n = net.n
    if n > BRUTE_FORCE_MAX_NODES:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_MAX_NODES} nodes, got {n}")
    a = net.dissim.tolist()
    out = [[math.inf] * n for _ in range(n)]

    def walk(src, node, cost, visited):
        for nxt in range(n):
            if visited & (1 << nxt):
                continue
            c = max(cost, a[node][nxt])
            if c < out[src][nxt]:
                out[src][nxt] = c
            walk(src, nxt, c, visited | (1 << nxt))

    for s in range(n):
        out[s][s] = 0.0
        walk(s, s, 0.0, 1 << s)
    return _frozen(np.array(out, dtype=np.float64))


def min_chain(net: Network, src: int, dst: int) -> list[int] | None:
    """One minimising chain from ``src`` to ``dst``, or None if unreachable.

    Bottleneck Dijkstra with predecessor tracking. Ties are broken
    arbitrarily; the chain is not unique in general.
    """
    n = net.n
    for i in (src, dst):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"node index {i} outside 0..{n - 1}")
    best = [math.inf] * n
    pred = [-1] * n
    best[src] = 0.0
    heap = [(0.0, src)]
    done = [False] * n
    while heap:
        c, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for v in range(n):
            if v == u or done[v]:
                continue
            w = max(c, net.dissim[u, v])
            if w < best[v]:
                best[v] = w
                pred[v] = u
                heapq.heappush(heap, (w, v))
    if math.isinf(best[dst]):
        return None
    if src == dst:
        return [src, dst]
    chain = [dst]
    while chain[-1] != src:
        chain.append(pred[chain[-1]])
    return chain[::-1]


def _reach_below(net: Network, x: int, delta: float) -> set[int]:
    """Nodes reachable from ``x`` using only links of dissimilarity < delta."""
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(net.dissim[u] < delta):
            v = int(v)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def delta_partition(net: Network, x: int, x2: int, delta: float) -> Partition:
    """Split the nodes into a block around ``x`` and one around ``x2``.

    Requires the minimum chain cost from ``x`` to ``x2`` to be at least
    ``delta``. The block of ``x`` is everything ``x`` reaches through links
    cheaper than ``delta``; every dissimilarity from that block to the other
    one is then at least ``delta``. The result is checked before returning.
    """
    n = net.n
    for i in (x, x2):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"node index {i} outside 0..{n - 1}")
    if x == x2:
        raise PreconditionViolated("x and x' must differ")
    cost = min_chain_cost(net)[x, x2]
    if cost < delta:
        raise PreconditionViolated(
            f"minimum chain cost {cost} from {x} to {x2} is below delta={delta}"
        )
    bx = _reach_below(net, x, delta)
    rest = [i for i in range(n) if i not in bx]
    part = Partition([sorted(bx), rest], n=n)
    cross = net.dissim[np.ix_(sorted(bx), rest)]
    if x2 in bx or not (cross >= delta).all():
        raise AssertionError("delta_partition postcondition failed")  # unreachable
    return part


def canonical_embedding(net: Network, alpha: float) -> list[int]:
    """Order the nodes so the network dominates a canonical network.

    Returns ``position`` where ``position[x]`` is the 0-based slot of node
    ``x``, such that ``net.dissim[x, y] >= C[position[x], position[y]]`` for
    every pair, with ``C = canonical_matrix(n, alpha, beta)`` and
    ``beta = min_loop_cost(net)``. Nodes are picked greedily: the next one is
    the lowest-index unpicked node whose cheap predecessors
    (``net.dissim[y, x] < beta``) are all already picked.
    """
    n = net.n
    if n == 1:
        return [0]
    sep = separation(net)
    if not 0 < alpha <= sep:
        raise BadAlpha(f"alpha must lie in (0, separation={sep}], got {alpha}")
    beta = min_loop_cost(net)
    cheap_pred = [
        {y for y in range(n) if y != x and net.dissim[y, x] < beta} for x in range(n)
    ]
    position = [-1] * n
    picked: set[int] = set()
    for pos in range(n):
        for x in range(n):
            if position[x] < 0 and cheap_pred[x] <= picked:
                position[x] = pos
                picked.add(x)
                break
        else:  # a cheap loop would exist, contradicting beta
            raise AssertionError("no eligible node; minimum loop cost inconsistent")
    c = canonical_matrix(n, alpha, beta)
    p = np.asarray(position)
    if not (net.dissim >= c[np.ix_(p, p)]).all():
        raise AssertionError("canonical_embedding postcondition failed")
    return position
