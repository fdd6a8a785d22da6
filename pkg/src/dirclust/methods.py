"""Hierarchical clustering methods for asymmetric networks.

All four methods reduce to one (min, max) closure:

* single linkage: closure of a symmetric network;
* reciprocal: single linkage on the pairwise-max symmetrisation;
* unilateral: single linkage on the pairwise-min symmetrisation;
* nonreciprocal: pairwise max of the directed closure and its transpose.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import NotSymmetric
from .network import Network, is_symmetric, max_symmetrize, min_symmetrize
from .paths import min_chain_cost
from .ultrametric import Ultrametric


class MethodId(str, Enum):
    SINGLE_LINKAGE = "single_linkage"
    RECIPROCAL = "reciprocal"
    NONRECIPROCAL = "nonreciprocal"
    UNILATERAL = "unilateral"

    @classmethod
    def parse(cls, name: "str | MethodId") -> "MethodId":
        if isinstance(name, MethodId):
            return name
        key = str(name).strip().lower().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r}; choose from {choices}") from None


ASYMMETRIC_METHODS = (MethodId.RECIPROCAL, MethodId.NONRECIPROCAL, MethodId.UNILATERAL)


def _ultrametric(net, values):
    values = np.array(values, dtype=np.float64)
    values.flags.writeable = False
    return Ultrametric(net.nodes, values)


def single_linkage(net: Network, backend: str | None = None) -> Ultrametric:
    if not is_symmetric(net):
        raise NotSymmetric(msg="single linkage requires a symmetric network")
    return _ultrametric(net, min_chain_cost(net, backend=backend))


def reciprocal(net: Network, backend: str | None = None) -> Ultrametric:
    return single_linkage(max_symmetrize(net), backend=backend)


def nonreciprocal(net: Network, backend: str | None = None) -> Ultrametric:
    c = min_chain_cost(net, backend=backend)
    return _ultrametric(net, np.maximum(c, c.T))


def unilateral(net: Network, backend: str | None = None) -> Ultrametric:
    return single_linkage(min_symmetrize(net), backend=backend)


_DISPATCH = {
    MethodId.SINGLE_LINKAGE: single_linkage,
    MethodId.RECIPROCAL: reciprocal,
    MethodId.NONRECIPROCAL: nonreciprocal,
    MethodId.UNILATERAL: unilateral,
}


def cluster(method: "str | MethodId", net: Network, backend: str | None = None) -> Ultrametric:
    """Run ``method`` (a :class:`MethodId` or its name) on ``net``."""
    return _DISPATCH[MethodId.parse(method)](net, backend=backend)
