"""Executable checks of clustering axioms and properties.

Each ``check_*`` function returns an :class:`AxiomReport`. A failing report
always carries a witness (the offending nodes and values) so the violation
can be reproduced by hand. Random generators for networks and
dissimilarity-reducing maps live here too; every generator is determined by
its seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import BadParams, DimensionMismatch, NotDissimilarityReducing
from .methods import ASYMMETRIC_METHODS, MethodId, cluster
from .network import (
    CanonicalSpec,
    Network,
    Partition,
    canonical_network,
    min_loop_cost,
    quotient,
    separation,
    two_node_network,
)
from .ultrametric import Ultrametric, format_number

#: Dissimilarity grid used by the random generators; small on purpose so that
#: ties are common.
GRID = (0.5, 1.0, 2.0, 3.0, 4.0, 5.0)

_VALUE_VARIANTS = {"A1": "A1", "B1": "B1", "A1''": "A1''", "A1'''": "A1'''"}
_INFLUENCE_VARIANTS = {"P1": "P1", "P1'": "P1'", "Q1": "P1'"}
_SANDWICH_VARIANTS = ("thm3", "unilateral-exact", "thm6")


@dataclass
class AxiomReport:
    name: str
    passed: bool
    witness: dict[str, Any] | None = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failing report {self.name!r} needs a witness")

    def __bool__(self):
        return self.passed

    def to_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict}\t{self.name}"
        if self.detail:
            line += f"\t{self.detail}"
        if self.witness:
            line += "\twitness: " + ", ".join(f"{k}={_fmt(v)}" for k, v in self.witness.items())
        return line

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["verdict"] = "pass" if self.passed else "fail"
        return d


def _fmt(v):
    if isinstance(v, float):
        return format_number(v)
    return str(v)


def _json_default(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    raise TypeError(type(v))


def reports_to_text(reports: Iterable[AxiomReport]) -> str:
    return "".join(r.to_line() + "\n" for r in reports)


def reports_to_json(reports: Iterable[AxiomReport]) -> str:
    """One JSON object per line; ``inf`` becomes the string ``"inf"``."""

    def clean(v):
        if isinstance(v, float) and math.isinf(v):
            return format_number(v)
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        return v

    return "".join(
        json.dumps(clean(r.to_dict()), default=_json_default) + "\n" for r in reports
    )


@dataclass(frozen=True)
class NodeMap:
    """Total function from source node indices to target node indices."""

    mapping: tuple[int, ...]
    source: str = "X"
    target: str = "Y"

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(i) for i in self.mapping))

    def __len__(self):
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "NodeMap":
        return cls(tuple(range(n)))


def _check_map_shape(node_map: NodeMap, src: Network, dst: Network):
    if len(node_map.mapping) != src.n:
        raise DimensionMismatch(f"map covers {len(node_map.mapping)} nodes, source has {src.n}")
    bad = [y for y in node_map.mapping if not 0 <= y < dst.n]
    if bad:
        raise DimensionMismatch(f"map targets {bad[0]} outside 0..{dst.n - 1}")


def _same_nodes(u: Ultrametric, net: Network):
    if u.n != net.n:
        raise DimensionMismatch(f"ultrametric has {u.n} nodes, network has {net.n}")
    if tuple(u.labels) != tuple(net.nodes):
        raise DimensionMismatch("ultrametric and network labels differ")


def is_dissimilarity_reducing(node_map: NodeMap, src: Network, dst: Network) -> AxiomReport:
    """Pass iff no dissimilarity grows when moved along ``node_map``."""
    _check_map_shape(node_map, src, dst)
    m = np.asarray(node_map.mapping, dtype=int)
    image = dst.dissim[np.ix_(m, m)]
    bad = image > src.dissim
    if not bad.any():
        return AxiomReport("dissimilarity_reducing", True)
    x, y = map(int, np.argwhere(bad)[0])
    return AxiomReport(
        "dissimilarity_reducing",
        False,
        {
            "x": src.nodes[x],
            "x2": src.nodes[y],
            "src_value": float(src.dissim[x, y]),
            "dst_value": float(image[x, y]),
        },
    )


def check_value_axiom(method, variant: str, alpha: float, beta: float) -> AxiomReport:
    """Run ``method`` on the two-node network and compare with the axiom.

    ``A1`` wants ``max(alpha, beta)``, ``A1''`` wants ``min(alpha, beta)``
    and ``A1'''`` accepts anything in between. ``B1`` is ``A1`` restricted
    to ``alpha == beta``.
    """
    if variant not in _VALUE_VARIANTS:
        raise BadParams(f"unknown value axiom {variant!r}")
    if variant == "B1" and alpha != beta:
        raise BadParams("B1 applies to symmetric two-node networks (alpha == beta)")
    method = MethodId.parse(method)
    u = cluster(method, two_node_network(alpha, beta))[0, 1]
    lo, hi = min(alpha, beta), max(alpha, beta)
    if variant in ("A1", "B1"):
        ok, expected = u == hi, hi
    elif variant == "A1''":
        ok, expected = u == lo, lo
    else:
        ok, expected = lo <= u <= hi, f"[{format_number(lo)}, {format_number(hi)}]"
    name = f"{variant}[{method.value}]"
    detail = f"u(p,q)={format_number(u)}"
    if ok:
        return AxiomReport(name, True, detail=detail)
    return AxiomReport(name, False, {"u": u, "expected": expected, "alpha": alpha, "beta": beta}, detail)


def check_extended_value(method, n: int, alpha: float, beta: float, perm=None) -> AxiomReport:
    """Pass iff every distinct pair of the canonical network sits at max(alpha, beta)."""
    if n < 2:
        raise BadParams("extended value axiom needs n >= 2")
    method = MethodId.parse(method)
    net = canonical_network(CanonicalSpec(n, alpha, beta, None if perm is None else tuple(perm)))
    u = cluster(method, net).values
    target = max(alpha, beta)
    off = ~np.eye(n, dtype=bool)
    bad = off & (u != target)
    name = f"A1'[{method.value}]"
    if not bad.any():
        return AxiomReport(name, True, detail=f"n={n} u={format_number(target)}")
    i, j = map(int, np.argwhere(bad)[0])
    return AxiomReport(
        name, False, {"i": net.nodes[i], "j": net.nodes[j], "u": float(u[i, j]), "expected": target}
    )


def check_transformation(method, src: Network, dst: Network, node_map: NodeMap) -> AxiomReport:
    """Pass iff clustering never pulls apart what ``node_map`` maps together.

    Concretely ``u_src(x, x') >= u_dst(node_map(x), node_map(x'))`` for every pair.
    Raises :class:`NotDissimilarityReducing` if ``node_map`` does not qualify.
    """
    gate = is_dissimilarity_reducing(node_map, src, dst)
    if not gate.passed:
        raise NotDissimilarityReducing(gate)
    method = MethodId.parse(method)
    ux = cluster(method, src).values
    uy = cluster(method, dst).values
    m = np.asarray(node_map.mapping, dtype=int)
    image = uy[np.ix_(m, m)]
    bad = ux < image
    name = f"A2[{method.value}]"
    if not bad.any():
        return AxiomReport(name, True)
    x, y = map(int, np.argwhere(bad)[0])
    return AxiomReport(
        name,
        False,
        {
            "x": src.nodes[x],
            "x2": src.nodes[y],
            "u_src": float(ux[x, y]),
            "u_dst": float(image[x, y]),
        },
    )


def check_influence(u: Ultrametric, net: Network, variant: str = "P1") -> AxiomReport:
    """``P1``: no merge below the minimum loop cost. ``P1'``/``Q1``: none below separation."""
    if variant not in _INFLUENCE_VARIANTS:
        raise BadParams(f"unknown influence property {variant!r}")
    _same_nodes(u, net)
    kind = _INFLUENCE_VARIANTS[variant]
    if net.n < 2:
        return AxiomReport(variant, True, detail="single node")
    bound = min_loop_cost(net) if kind == "P1" else separation(net)
    vals = np.where(np.eye(net.n, dtype=bool), np.inf, u.values)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    low = float(vals[i, j])
    detail = f"bound={format_number(bound)} min_u={format_number(low)}"
    if low >= bound:
        return AxiomReport(variant, True, detail=detail)
    return AxiomReport(
        variant, False, {"x": net.nodes[i], "x2": net.nodes[j], "u": low, "bound": bound}, detail
    )


def check_sandwich(u: Ultrametric, net: Network, variant: str = "thm3") -> AxiomReport:
    """Entrywise bounds on ``u``.

    ``thm3``: nonreciprocal <= u <= reciprocal. ``thm6``: unilateral <= u <=
    reciprocal. ``unilateral-exact``: u must equal the unilateral ultrametric.
    """
    if variant not in _SANDWICH_VARIANTS:
        raise BadParams(f"unknown sandwich {variant!r}")
    _same_nodes(u, net)
    lower_m = MethodId.NONRECIPROCAL if variant == "thm3" else MethodId.UNILATERAL
    upper_m = MethodId.UNILATERAL if variant == "unilateral-exact" else MethodId.RECIPROCAL
    lower = cluster(lower_m, net).values
    upper = cluster(upper_m, net).values
    for side, bad, bound, method in (
        ("lower", u.values < lower, lower, lower_m),
        ("upper", u.values > upper, upper, upper_m),
    ):
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            return AxiomReport(
                variant,
                False,
                {
                    "x": net.nodes[i],
                    "x2": net.nodes[j],
                    "u": float(u.values[i, j]),
                    "side": side,
                    "bound": float(bound[i, j]),
                    "bound_method": method.value,
                },
            )
    return AxiomReport(variant, True, detail=f"{lower_m.value} <= u <= {upper_m.value}")


def check_symmetric_collapse(net: Network) -> AxiomReport:
    """On a symmetric network all four methods must give the same ultrametric."""
    ref = cluster(MethodId.SINGLE_LINKAGE, net).values
    for m in ASYMMETRIC_METHODS:
        u = cluster(m, net).values
        diff = u != ref
        if diff.any():
            i, j = map(int, np.argwhere(diff)[0])
            return AxiomReport(
                "symmetric_collapse",
                False,
                {"method": m.value, "x": net.nodes[i], "x2": net.nodes[j],
                 "u": float(u[i, j]), "single_linkage": float(ref[i, j])},
            )
    return AxiomReport("symmetric_collapse", True)


# --- random instances ----------------------------------------------------


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_network(
    n: int,
    density: float = 1.0,
    seed=None,
    values: Sequence[float] = GRID,
    symmetric: bool = False,
) -> Network:
    """Random network with off-diagonal entries drawn from ``values``.

    Each off-diagonal entry is finite with probability ``density`` and
    ``inf`` otherwise. ``seed`` may be an int or a numpy Generator.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise BadParams(f"n must be a positive integer, got {n!r}")
    if not 0 < density <= 1:
        raise BadParams(f"density must lie in (0, 1], got {density}")
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 0 or (vals <= 0).any():
        raise BadParams("values must be a non-empty set of positive numbers")
    rng = _rng(seed)
    a = rng.choice(vals, size=(n, n))
    if density < 1:
        a[rng.random((n, n)) >= density] = np.inf
    if symmetric:
        a = np.triu(a, 1)
        a = a + a.T
    np.fill_diagonal(a, 0.0)
    a.flags.writeable = False
    return Network(tuple(f"n{i}" for i in range(n)), a)


def random_partition(n: int, seed=None) -> Partition:
    rng = _rng(seed)
    k = int(rng.integers(1, n + 1))
    labels = rng.integers(0, k, size=n)
    blocks: dict[int, list[int]] = {}
    for i, b in enumerate(labels):
        blocks.setdefault(int(b), []).append(i)
    return Partition(blocks.values(), n=n)


def random_quotient_map(net: Network, seed=None) -> tuple[Network, NodeMap]:
    """Quotient of ``net`` by a random partition, with the block map."""
    part = random_partition(net.n, seed)
    return quotient(net, part), NodeMap(tuple(part.block_map()), "X", "X/~")


def random_injection_map(n: int, extra: int, seed=None, density: float = 1.0):
    """``(src, dst, node_map)`` with ``node_map`` injective and dissimilarity reducing.

    ``dst`` is a random network on ``n + extra`` nodes; ``src`` copies the
    dissimilarities of the image nodes and inflates some of them by grid
    steps, so ``node_map`` never increases a dissimilarity.
    """
    rng = _rng(seed)
    dst = random_network(n + extra, density, rng)
    m = rng.permutation(n + extra)[:n]
    a = dst.dissim[np.ix_(m, m)].copy()
    bump = rng.choice(np.array((0.0,) + GRID), size=(n, n))
    a = a + bump
    np.fill_diagonal(a, 0.0)
    a.flags.writeable = False
    src = Network(tuple(f"s{i}" for i in range(n)), a)
    return src, dst, NodeMap(tuple(int(i) for i in m), "X", "Y")


def check_alternative_implication(method, instances: Iterable[tuple[Network, Network, NodeMap]],
                                  pairs: Iterable[tuple[float, float]]) -> list[AxiomReport]:
    """Joint report: if ``method`` passes A1'' and A2 on the samples it must pass P1'.

    Returns the A1'', A2 and P1' reports followed by one report for the
    implication itself.
    """
    method = MethodId.parse(method)
    instances = list(instances)
    a1 = [check_value_axiom(method, "A1''", a, b) for a, b in pairs]
    a2 = [check_transformation(method, s, d, node_map) for s, d, node_map in instances]
    p1 = [check_influence(cluster(method, s), s, "P1'") for s, _, _ in instances]
    premise = all(a1) and all(a2)
    conclusion = all(p1)
    out = [summarize(f"A1''[{method.value}]", a1), summarize(f"A2[{method.value}]", a2),
           summarize(f"P1'[{method.value}]", p1)]
    name = f"A1''+A2=>P1'[{method.value}]"
    if not premise or conclusion:
        out.append(AxiomReport(name, True, detail="premise holds" if premise else "premise fails"))
    else:
        bad = next(r for r in p1 if not r.passed)
        out.append(AxiomReport(name, False, bad.witness))
    return out


def summarize(name, reports):
    """Collapse many reports into one, keeping the first failure's witness."""
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    detail = f"{len(reports) - len(failed)}/{len(reports)} passed"
    if not failed:
        return AxiomReport(name, True, detail=detail)
    return AxiomReport(name, False, failed[0].witness, detail)


