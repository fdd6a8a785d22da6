import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import INF, LOOPNET, networks
from dirclust import (
    CanonicalSpec,
    brute_force_min_chain_cost,
    canonical_embedding,
    canonical_network,
    chain_cost,
    delta_partition,
    min_chain,
    min_chain_cost,
    min_loop_cost,
    separation,
    two_node_network,
    validate_network,
)
from dirclust import kernels
from dirclust.errors import BadAlpha, ChainTooShort, IndexOutOfRange, PreconditionViolated, TooLarge
from dirclust.network import canonical_matrix


class TestChainCost:
    def test_golden(self, golden):
        assert chain_cost(golden, [0, 1, 2]) == 0.5
        assert chain_cost(golden, [2, 1]) == 3

    def test_direction_matters(self, golden):
        assert chain_cost(golden, [0, 1]) != chain_cost(golden, [1, 0])

    def test_repeated_nodes_allowed(self, golden):
        assert chain_cost(golden, [0, 1, 0, 1]) == 2

    def test_errors(self, golden):
        with pytest.raises(ChainTooShort):
            chain_cost(golden, [0])
        with pytest.raises(IndexOutOfRange):
            chain_cost(golden, [0, 3])


class TestMinChainCost:
    def test_golden(self, golden):
        c = min_chain_cost(golden)
        # values from oracles.directed_cost
        assert c.tolist() == [[0, 0.5, 0.5], [1, 0, 0.5], [1, 1, 0]]

    def test_single_node(self):
        assert min_chain_cost(validate_network(["x"], [[0]])).tolist() == [[0]]

    def test_canonical_n3(self):
        c = min_chain_cost(canonical_network(CanonicalSpec(3, 1, 3)))
        assert c.tolist() == [[0, 1, 1], [3, 0, 1], [3, 3, 0]]

    def test_loopnet_matches_enumeration(self, loopnet):
        np.testing.assert_array_equal(min_chain_cost(loopnet), oracles.directed_cost(LOOPNET))

    @given(networks(max_n=6))
    @settings(max_examples=200, deadline=None)
    def test_matches_brute_force(self, net):
        np.testing.assert_array_equal(min_chain_cost(net), brute_force_min_chain_cost(net))

    @given(networks(max_n=5))
    @settings(max_examples=60, deadline=None)
    def test_brute_force_matches_permutation_enumeration(self, net):
        np.testing.assert_array_equal(brute_force_min_chain_cost(net), oracles.directed_cost(net.dissim))

    @given(networks(max_n=7))
    @settings(max_examples=150, deadline=None)
    def test_closure_fixpoint_and_bounds(self, net):
        c = min_chain_cost(net)
        assert (np.diagonal(c) == 0).all()
        assert (c <= net.dissim).all()
        relaxed = np.min(np.maximum(c[:, :, None], c[None, :, :]), axis=1)
        np.testing.assert_array_equal(relaxed, c)

    @given(networks(max_n=7))
    @settings(max_examples=100, deadline=None)
    def test_value_provenance(self, net):
        c = min_chain_cost(net)
        finite = c[np.isfinite(c) & (c > 0)]
        assert set(finite.tolist()) <= set(net.dissim.ravel().tolist())

    @given(networks(max_n=7, symmetric=True))
    @settings(max_examples=100, deadline=None)
    def test_symmetric_input_symmetric_output(self, net):
        c = min_chain_cost(net)
        np.testing.assert_array_equal(c, c.T)

    def test_brute_force_cap(self):
        net = validate_network(None, np.ones((9, 9)) - np.eye(9))
        with pytest.raises(TooLarge):
            brute_force_min_chain_cost(net)

    def test_read_only(self, golden):
        with pytest.raises(ValueError):
            min_chain_cost(golden)[0, 1] = 9


class TestBackends:
    @pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
    @given(networks(max_n=12))
    @settings(max_examples=100, deadline=None)
    def test_backends_agree(self, net):
        np.testing.assert_array_equal(
            kernels.minmax_closure(net.dissim, "cython"), kernels.minmax_closure(net.dissim, "python")
        )

    def test_unknown_backend(self, golden):
        with pytest.raises(ValueError):
            kernels.minmax_closure(golden.dissim, "fortran")

    def test_env_forces_fallback(self):
        env = dict(os.environ, DIRCLUST_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", "import dirclust; print(dirclust.BACKEND)"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "python"

    def test_input_untouched(self, golden):
        a = np.array(golden.dissim)
        kernels.minmax_closure(a)
        np.testing.assert_array_equal(a, golden.dissim)


class TestWitnessChain:
    @given(networks(min_n=2, max_n=6), st.data())
    @settings(max_examples=100, deadline=None)
    def test_chain_attains_cost(self, net, data):
        i = data.draw(st.integers(0, net.n - 1))
        j = data.draw(st.integers(0, net.n - 1).filter(lambda k: k != i))
        chain = min_chain(net, i, j)
        cost = min_chain_cost(net)[i, j]
        if np.isinf(cost):
            assert chain is None
        else:
            assert chain[0] == i and chain[-1] == j
            assert chain_cost(net, chain) == cost

    def test_golden(self, golden):
        assert min_chain(golden, 1, 0) == [1, 2, 0]


class TestDeltaPartition:
    def test_precondition(self, golden):
        # directed minimum chain cost c -> a is 1
        with pytest.raises(PreconditionViolated):
            delta_partition(golden, 2, 0, 2)

    def test_golden_b_to_a_also_below(self, golden):
        # b reaches a through [b, c, a] at cost 1 < 2
        with pytest.raises(PreconditionViolated):
            delta_partition(golden, 1, 0, 2)

    def test_golden_b_to_a_at_one(self, golden):
        part = delta_partition(golden, 1, 0, 1)
        assert part.blocks == ((0,), (1, 2))

    def test_two_node(self):
        part = delta_partition(two_node_network(5, 5), 0, 1, 5)
        assert part.blocks == ((0,), (1,))

    @given(networks(min_n=2, max_n=7), st.data())
    @settings(max_examples=150, deadline=None)
    def test_postcondition(self, net, data):
        c = min_chain_cost(net)
        x = data.draw(st.integers(0, net.n - 1))
        x2 = data.draw(st.integers(0, net.n - 1).filter(lambda k: k != x))
        delta = float(c[x, x2]) if np.isfinite(c[x, x2]) else data.draw(st.sampled_from([1.0, 7.0]))
        part = delta_partition(net, x, x2, delta)
        bx = part.blocks[part.block_of(x)]
        other = [k for k in range(net.n) if k not in bx]
        assert x2 in other
        assert all(net.dissim[b, o] >= delta for b in bx for o in other)


class TestCanonicalEmbedding:
    @staticmethod
    def _check(net, alpha, position):
        beta = min_loop_cost(net)
        canon = canonical_matrix(net.n, alpha, beta)
        assert sorted(position) == list(range(net.n))
        for x in range(net.n):
            for y in range(net.n):
                assert net.dissim[x, y] >= canon[position[x], position[y]]

    def test_two_node(self):
        net = two_node_network(1, 3)
        position = canonical_embedding(net, 1)
        # q has the cheap predecessor p (A(p, q) = 1 < 3), so p comes first
        assert position == [0, 1]
        self._check(net, 1, position)

    def test_loopnet(self, loopnet):
        self._check(loopnet, 0.5, canonical_embedding(loopnet, 0.5))

    def test_bad_alpha(self, loopnet):
        with pytest.raises(BadAlpha):
            canonical_embedding(loopnet, 0.75)
        with pytest.raises(BadAlpha):
            canonical_embedding(loopnet, 0)

    @given(networks(min_n=2, max_n=7), st.floats(0.01, 1.0))
    @settings(max_examples=150, deadline=None)
    def test_postcondition(self, net, frac):
        alpha = separation(net) * frac
        self._check(net, alpha, canonical_embedding(net, alpha))

    @given(networks(min_n=2, max_n=6, symmetric=True))
    @settings(max_examples=60, deadline=None)
    def test_symmetric(self, net):
        self._check(net, separation(net), canonical_embedding(net, separation(net)))

    def test_infinite_loop_cost(self):
        net = validate_network(None, [[0, 1, INF], [INF, 0, 2], [INF, INF, 0]])
        position = canonical_embedding(net, 1)
        assert position == [0, 1, 2]
        self._check(net, 1, position)
