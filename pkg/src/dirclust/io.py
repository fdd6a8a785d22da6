"""Reading and writing networks and ultrametrics as text.

Two input formats:

``matrix``
    ``n`` rows of ``n`` numbers separated by commas (or tabs / whitespace).
    An optional header row and/or leading column supplies labels.
``edges``
    ``src<TAB>dst<TAB>weight`` lines; a line with a single token declares an
    isolated node. Node order is order of first appearance and missing pairs
    are ``inf``.

``inf`` is the textual form of infinity everywhere. Numbers are written in
the shortest form that reads back exactly.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

import numpy as np

from .errors import DirclustError
from .network import Network, validate_network
from .ultrametric import format_number


class ParseError(DirclustError):
    """Input text could not be parsed."""


def _number(tok: str):
    try:
        x = float(tok)
    except ValueError:
        return None
    return None if math.isnan(x) else x


def _rows(text: str) -> list[list[str]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input")
    if any("," in ln for ln in lines):
        split = lambda ln: [t.strip() for t in ln.split(",")]  # noqa: E731
    elif any("\t" in ln for ln in lines):
        split = lambda ln: [t.strip() for t in ln.split("\t")]  # noqa: E731
    else:
        split = lambda ln: ln.split()  # noqa: E731
    return [split(ln) for ln in lines]


def parse_matrix(text: str) -> tuple[list[str] | None, np.ndarray]:
    """Labels (or None) and the numeric matrix of a dense-matrix document.

    A first row is a header if its first cell is blank or any later cell is
    not a number. With a blank top-left cell every data row starts with its
    label; otherwise a label column is recognised by non-numeric first cells.
    """
    rows = _rows(text)
    first = rows[0]
    header = None
    row_labels = None
    if first[0] == "" or any(_number(t) is None for t in first[1:]) or (
        len(first) == 1 and _number(first[0]) is None
    ):
        header, rows = first, rows[1:]
    if not rows:
        raise ParseError("matrix has no data rows")
    if header is not None and header[0] == "":
        header = header[1:]
        if any(len(r) != len(header) + 1 for r in rows):
            raise ParseError("every row must start with a label when the header has a blank corner")
        row_labels = [r[0] for r in rows]
        rows = [r[1:] for r in rows]
    elif any(_number(r[0]) is None for r in rows):
        row_labels = [r[0] for r in rows]
        rows = [r[1:] for r in rows]
    n = len(rows)
    values = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ParseError(f"row {i + 1} has {len(r)} values, expected {n}")
        vals = [_number(t) for t in r]
        if any(v is None for v in vals):
            bad = r[vals.index(None)]
            raise ParseError(f"row {i + 1}: not a number: {bad!r}")
        values.append(vals)
    if header is not None and len(header) != n:
        raise ParseError(f"header has {len(header)} labels for {n} columns")
    if header and row_labels and list(header) != list(row_labels):
        raise ParseError("row labels do not match header labels")
    return header or row_labels, np.array(values, dtype=np.float64)


def parse_edges(text: str) -> tuple[list[str], np.ndarray]:
    """Labels and matrix of an edge-list document."""
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: dict[tuple[int, int], float] = {}

    def node(name):
        if name not in index:
            index[name] = len(labels)
            labels.append(name)
        return index[name]

    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t") if "\t" in line else line.split()
        parts = [p.strip() for p in parts]
        if len(parts) == 1:
            node(parts[0])
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected src<TAB>dst<TAB>weight")
        w = _number(parts[2])
        if w is None:
            raise ParseError(f"line {lineno}: not a number: {parts[2]!r}")
        if w <= 0:
            raise ParseError(f"line {lineno}: weight must be positive, got {parts[2]}")
        s, t = node(parts[0]), node(parts[1])
        if s == t:
            raise ParseError(f"line {lineno}: self-loop on {parts[0]!r}")
        if (s, t) in edges:
            raise ParseError(f"line {lineno}: duplicate edge {parts[0]!r} -> {parts[1]!r}")
        edges[(s, t)] = w
    if not labels:
        raise ParseError("empty input")
    a = np.full((len(labels), len(labels)), math.inf)
    np.fill_diagonal(a, 0.0)
    for (s, t), w in edges.items():
        a[s, t] = w
    return labels, a


def parse_network(text: str, fmt: str = "matrix") -> Network:
    if fmt == "matrix":
        labels, a = parse_matrix(text)
    elif fmt in ("edges", "edge-list"):
        labels, a = parse_edges(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return validate_network(labels, a)


def read_network(path: str, fmt: str = "matrix") -> Network:
    with open(path) as fh:
        return parse_network(fh.read(), fmt)


def matrix_to_text(labels: Sequence[str], values) -> str:
    """Dense CSV with a header row and a label column."""
    out = ["," + ",".join(labels)]
    for lab, row in zip(labels, np.asarray(values)):
        out.append(lab + "," + ",".join(format_number(v) for v in row))
    return "\n".join(out) + "\n"


def network_to_text(net: Network) -> str:
    return matrix_to_text(net.nodes, net.dissim)


def edges_to_text(net: Network) -> str:
    """Edge list that declares every node first, so node order survives a re-read."""
    lines = list(net.nodes)
    for i in range(net.n):
        for j in range(net.n):
            if i != j and math.isfinite(net.dissim[i, j]):
                lines.append(f"{net.nodes[i]}\t{net.nodes[j]}\t{format_number(net.dissim[i, j])}")
    return "\n".join(lines) + "\n"


_LABEL_OK = re.compile(r"^[^,\t\n#]+$")


def check_label_text(labels: Sequence[str]):
    bad = [x for x in labels if not _LABEL_OK.match(x) or x != x.strip()]
    if bad:
        raise ParseError(f"label {bad[0]!r} cannot be written unambiguously")
