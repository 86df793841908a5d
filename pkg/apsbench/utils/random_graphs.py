import math
from typing import Iterator, Optional

import networkx as nx
import numpy as np

from apsbench.schemas.graphs import Edge, Graph


def to_networkx(g: Graph) -> nx.Graph:
    """
    Converts a graph into a networkx graph whose edges carry `weight`, `mult` and `id` attributes.
    """
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    for edge_id, edge in enumerate(g.edges):
        nx_graph.add_edge(edge.u, edge.v, weight=edge.w, mult=edge.mult, id=edge_id)
    return nx_graph


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """
    Converts a networkx graph on integer nodes into a graph; missing weights default to 1.
    """
    nodes = sorted(nx_graph.nodes)
    index = {node: position for position, node in enumerate(nodes)}
    edges = [
        Edge(u=index[u], v=index[v], w=float(data.get("weight", 1.0)))
        for u, v, data in sorted(nx_graph.edges(data=True), key=lambda item: (index[item[0]], index[item[1]]))
    ]
    return Graph(n=len(nodes), edges=edges)


def random_connected_graph(n: int, rng: np.random.Generator, edge_probability: Optional[float] = None) -> Graph:
    """
    Samples a connected simple graph on n vertices from G(n, p), resampling until connected.

    Args:
        n (int): Number of vertices, at least 1.
        rng (np.random.Generator): Source of randomness; the sample is a function of its state.
        edge_probability (float, optional): Edge probability. Defaults to a value drawn from
            [max(2 ln n / n, 0.3), 0.9] so that sparse and dense graphs both occur.

    Returns:
        Graph: A connected graph with unit weights.
    """
    if n == 1:
        return Graph(n=1)
    if edge_probability is None:
        low = min(0.9, max(2 * math.log(n) / n, 0.3))
        edge_probability = float(rng.uniform(low, 0.9))
    while True:
        nx_graph = nx.gnp_random_graph(n, edge_probability, seed=int(rng.integers(2**31)))
        if nx.is_connected(nx_graph):
            return from_networkx(nx_graph)


def random_connected_graphs(count: int, max_n: int, rng: np.random.Generator, min_n: int = 2) -> Iterator[Graph]:
    for _ in range(count):
        yield random_connected_graph(int(rng.integers(min_n, max_n + 1)), rng)


def random_angles(g: Graph, rng: np.random.Generator) -> list:
    """Uniform angles in [0, pi/4], one per edge id."""
    return rng.uniform(0.0, math.pi / 4, size=g.m).tolist()
