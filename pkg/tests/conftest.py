from functools import reduce
from itertools import combinations

import numpy as np
import pytest

from apsbench.constants import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z
from apsbench.schemas.graphs import Edge, Graph
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.services.henning_yeo_service import HenningYeoService


def make_graph(n, pairs, weights=None):
    weights = weights or [1.0] * len(pairs)
    return Graph(n=n, edges=[Edge(u=u, v=v, w=w) for (u, v), w in zip(pairs, weights)])


def pair_operator(n, first, second, a, b):
    factors = [PAULI_I] * n
    factors[a] = first
    factors[b] = second
    return reduce(np.kron, factors)


def dense_hamiltonian(g):
    """sum w_ij (II + XX - YY + ZZ) / 2 as a dense matrix, qubit 0 most significant."""
    dim = 1 << g.n
    h = np.zeros((dim, dim), dtype=complex)
    for edge in g.collapsed().edges:
        term = np.eye(dim, dtype=complex)
        for op in (PAULI_X, PAULI_Z):
            term = term + pair_operator(g.n, op, op, edge.u, edge.v)
        term = term - pair_operator(g.n, PAULI_Y, PAULI_Y, edge.u, edge.v)
        h += 0.5 * edge.w * term
    return h


def brute_force_matching_value(g):
    best = 0.0
    for size in range(1, g.n // 2 + 1):
        for subset in combinations(range(g.m), size):
            vertices = [v for e in subset for v in (g.edges[e].u, g.edges[e].v)]
            if len(set(vertices)) == len(vertices):
                best = max(best, sum(g.edges[e].w for e in subset))
    return best


def brute_force_fractional_value(g):
    """Best half-integral fractional matching by enumeration of {0, 1/2, 1} fractions."""
    best = 0.0
    for choice in np.ndindex(*([3] * g.m)):
        fractions = [c / 2 for c in choice]
        load = [0.0] * g.n
        for edge, frac in zip(g.edges, fractions):
            load[edge.u] += frac
            load[edge.v] += frac
        if max(load, default=0.0) <= 1.0:
            best = max(best, sum(edge.w * frac for edge, frac in zip(g.edges, fractions)))
    return best


@pytest.fixture
def single_edge():
    return make_graph(2, [(0, 1)])


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def path3():
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def star3():
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def cycle4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def k5_minus_edge():
    return make_graph(5, [pair for pair in combinations(range(5), 2) if pair != (0, 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def hy_service():
    return HenningYeoService()


@pytest.fixture
def hy_even(hy_service):
    return hy_service.build(HYSpec(k=4, p=2))


@pytest.fixture
def hy_odd(hy_service):
    return hy_service.build(HYSpec(k=3, p=1))
