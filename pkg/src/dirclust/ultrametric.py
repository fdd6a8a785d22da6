"""Ultrametrics, dendrograms, and the conversion between them.

A dendrogram is stored as a merge list in the usual linkage convention:
leaves are clusters ``0..n-1`` and the ``k``-th merge creates cluster
``n + k``. Several merges may share a height; they are emitted one connected
group at a time, groups and members ordered by smallest leaf index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    BadDiagonal,
    DimensionMismatch,
    DuplicateLabel,
    InfiniteValue,
    NegativeEntry,
    NotSymmetric,
    StrongTriangleViolated,
    ValidationError,
    ZeroOffDiagonal,
)
from .network import Partition


def format_number(x: float) -> str:
    """Shortest decimal that reads back to exactly ``x``; ``inf`` for infinity."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


@dataclass(frozen=True, eq=False)
class Ultrametric:
    labels: tuple[str, ...]
    values: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Ultrametric):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.labels, self.values.tobytes()))

    def __getitem__(self, pair):
        i, j = pair
        if isinstance(i, str):
            i = self.labels.index(i)
        if isinstance(j, str):
            j = self.labels.index(j)
        return float(self.values[i, j])

    def min_offdiag(self) -> float:
        if self.n < 2:
            return math.inf
        return float(self.values[~np.eye(self.n, dtype=bool)].min())

    def __repr__(self):
        return f"Ultrametric(labels={list(self.labels)!r}, values={self.values.tolist()!r})"


def _strong_triangle_witness(u):
    """First (i, j, k) with u[i, k] > max(u[i, j], u[j, k]), or None."""
    n = u.shape[0]
    for i in range(n):
        bound = np.maximum(u[i][:, None], u)  # bound[j, k] = max(u[i,j], u[j,k])
        bad = u[i][None, :] > bound
        if bad.any():
            j, k = map(int, np.argwhere(bad)[0])
            return i, j, k
    return None


def validate_ultrametric(labels: Sequence[str] | None, values) -> Ultrametric:
    """Check identity, symmetry and the strong triangle inequality."""
    a = np.array(values, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise DimensionMismatch(f"{len(labels)} labels for a {n}x{n} matrix")
    if len(set(labels)) != n:
        raise DuplicateLabel("duplicate labels")
    if np.isnan(a).any():
        raise ValidationError("matrix contains NaN")
    for i in range(n):
        if a[i, i] != 0:
            raise BadDiagonal(i, float(a[i, i]))
    if (a < 0).any():
        i, j = map(int, np.argwhere(a < 0)[0])
        raise NegativeEntry(i, j, float(a[i, j]))
    off = a == 0
    np.fill_diagonal(off, False)
    if off.any():
        i, j = map(int, np.argwhere(off)[0])
        raise ZeroOffDiagonal(i, j)
    asym = a != a.T
    if asym.any():
        i, j = map(int, np.argwhere(asym)[0])
        raise NotSymmetric(i, j)
    w = _strong_triangle_witness(a)
    if w is not None:
        i, j, k = w
        raise StrongTriangleViolated(i, j, k, (float(a[i, k]), float(a[i, j]), float(a[j, k])))
    a.flags.writeable = False
    return Ultrametric(labels, a)


class Merge(NamedTuple):
    height: float
    left: int
    right: int
    new: int


@dataclass(frozen=True)
class Dendrogram:
    """Merge tree over ``leaves``. A forest if some clusters never merge."""

    leaves: tuple[str, ...]
    merges: tuple[Merge, ...]

    def __post_init__(self):
        n = len(self.leaves)
        merges = tuple(Merge(float(h), int(l), int(r), int(c)) for h, l, r, c in self.merges)
        object.__setattr__(self, "leaves", tuple(self.leaves))
        object.__setattr__(self, "merges", merges)
        used: set[int] = set()
        prev = 0.0
        for k, m in enumerate(merges):
            if m.new != n + k:
                raise ValidationError(f"merge {k} creates id {m.new}, expected {n + k}")
            if not (m.height > 0) or math.isinf(m.height):
                raise ValidationError(f"merge {k} has non-positive or infinite height {m.height}")
            if m.height < prev:
                raise ValidationError(f"merge {k} height {m.height} below previous {prev}")
            for c in (m.left, m.right):
                if not 0 <= c < n + k:
                    raise ValidationError(f"merge {k} refers to unknown cluster {c}")
                if c in used:
                    raise ValidationError(f"merge {k} reuses cluster {c}")
                used.add(c)
            if m.left == m.right:
                raise ValidationError(f"merge {k} joins cluster {m.left} with itself")
            prev = m.height

    @property
    def n(self) -> int:
        return len(self.leaves)

    def roots(self) -> list[int]:
        used = {c for m in self.merges for c in (m.left, m.right)}
        return [c for c in range(self.n + len(self.merges)) if c not in used]

    @property
    def complete(self) -> bool:
        """True if a single cluster remains after the last merge."""
        return len(self.roots()) == 1

    def members(self) -> list[tuple[int, ...]]:
        """Leaf indices contained in each cluster id."""
        out = [(i,) for i in range(self.n)]
        for m in self.merges:
            out.append(tuple(sorted(out[m.left] + out[m.right])))
        return out

    def heights(self) -> list[float]:
        return sorted({m.height for m in self.merges})

    def levels(self) -> list[tuple[float, Partition]]:
        """Partition after all merges at each distinct height, in order."""
        return [(h, cut(self, h)) for h in self.heights()]

    def check(self) -> None:
        """Assert the boundary and hierarchy conditions on the merge list."""
        if cut(self, 0.0) != Partition([[i] for i in range(self.n)], n=self.n):
            raise ValidationError("clusters exist at resolution 0")
        lv = self.levels()
        for (_, p), (_, q) in zip(lv, lv[1:]):
            if not p.refines(q):
                raise ValidationError("partitions are not nested")
        if self.n and self.complete and self.merges:
            if len(cut(self, self.merges[-1].height)) != 1:
                raise ValidationError("final merge does not yield one cluster")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, u):
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u, v):
        ru, rv = self.find(u), self.find(v)
        if ru != rv:
            self.parent[max(ru, rv)] = min(ru, rv)
        return ru != rv


def to_dendrogram(u: Ultrametric, strict: bool = False) -> Dendrogram:
    """Merge tree whose cluster heights reproduce ``u``.

    Pairs at infinite distance never merge and the result is a forest; with
    ``strict=True`` that case raises :class:`InfiniteValue` carrying the
    forest instead.
    """
    n = u.n
    a = u.values
    iu, ju = np.triu_indices(n, 1)
    vals = a[iu, ju]
    finite = np.isfinite(vals)
    order = np.lexsort((ju[finite], iu[finite], vals[finite]))
    edges = list(zip(vals[finite][order].tolist(), iu[finite][order].tolist(), ju[finite][order].tolist()))

    leaves_uf = _UnionFind(n)  # root = smallest leaf of the block
    cluster_of = list(range(n))  # block root leaf -> current cluster id
    merges: list[Merge] = []
    for h, group in groupby(edges, key=lambda e: e[0]):
        links = [(leaves_uf.find(i), leaves_uf.find(j)) for _, i, j in group]
        links = [(r, s) for r, s in links if r != s]
        if not links:
            continue
        comp = _UnionFind(n)
        for r, s in links:
            comp.union(r, s)
        groups: dict[int, set[int]] = {}
        for r, s in links:
            groups.setdefault(comp.find(r), set()).update((r, s))
        for key in sorted(groups):
            blocks = sorted(groups[key])  # block roots are their smallest leaves
            current = cluster_of[blocks[0]]
            for b in blocks[1:]:
                new = n + len(merges)
                merges.append(Merge(h, current, cluster_of[b], new))
                current = new
            for b in blocks[1:]:
                leaves_uf.union(blocks[0], b)
            cluster_of[leaves_uf.find(blocks[0])] = current
    d = Dendrogram(u.labels, tuple(merges))
    if strict and n > 1 and not d.complete:
        raise InfiniteValue(d)
    return d


def to_ultrametric(d: Dendrogram) -> Ultrametric:
    """Each pair's value is the height at which the pair first shares a cluster."""
    n = d.n
    a = np.full((n, n), math.inf)
    np.fill_diagonal(a, 0.0)
    members = d.members()
    for m in d.merges:
        left, right = list(members[m.left]), list(members[m.right])
        a[np.ix_(left, right)] = m.height
        a[np.ix_(right, left)] = m.height
    a.flags.writeable = False
    return Ultrametric(d.leaves, a)


def cut(d: Dendrogram, delta: float) -> Partition:
    """Clusters at resolution ``delta`` (merges of height <= delta applied)."""
    uf = _UnionFind(d.n)
    members = d.members()
    for m in d.merges:
        if m.height > delta:
            break
        uf.union(members[m.left][0], members[m.right][0])
    blocks: dict[int, list[int]] = {}
    for i in range(d.n):
        blocks.setdefault(uf.find(i), []).append(i)
    return Partition(blocks.values(), n=d.n)


def merges_to_text(d: Dendrogram) -> str:
    """One ``height<TAB>left<TAB>right<TAB>new`` line per merge."""
    return "".join(
        f"{format_number(m.height)}\t{m.left}\t{m.right}\t{m.new}\n" for m in d.merges
    )


def merges_from_text(text: str, leaves: Sequence[str]) -> Dendrogram:
    merges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValidationError(f"line {lineno}: expected 4 tab-separated fields")
        h, l, r, c = parts
        merges.append(Merge(float(h), int(l), int(r), int(c)))
    return Dendrogram(tuple(leaves), tuple(merges))


_NEWICK_SPECIAL = set(" ()[]':;,\t\n")


def _newick_label(s):
    if any(ch in _NEWICK_SPECIAL for ch in s):
        return "'" + s.replace("'", "''") + "'"
    return s


def to_newick(d: Dendrogram) -> str:
    """Newick text, one tree per line (several lines for a forest).

    Consecutive merges at equal height are flattened into a single
    multifurcating node. Branch lengths are height differences.
    """
    n = d.n
    height = [0.0] * n + [m.height for m in d.merges]
    children: dict[int, list[int]] = {}
    for m in d.merges:
        kids = []
        for c in (m.left, m.right):
            if c >= n and height[c] == m.height:
                kids.extend(children.pop(c))
            else:
                kids.append(c)
        children[m.new] = kids

    def render(c, parent_h):
        if c < n:
            body = _newick_label(d.leaves[c])
        else:
            body = "(" + ",".join(render(k, height[c]) for k in children[c]) + ")"
        if parent_h is None:
            return body
        return f"{body}:{format_number(parent_h - height[c])}"

    members = d.members()
    roots = sorted(d.roots(), key=lambda r: members[r][0])
    return "".join(render(r, None) + ";\n" for r in roots)
