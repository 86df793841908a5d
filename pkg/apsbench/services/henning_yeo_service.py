from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from apsbench.core.settings import logger
from apsbench.enums.edge_class import EdgeClassTag
from apsbench.enums.quasi_complete_kind import QuasiCompleteEdgeKind
from apsbench.exc.henning_yeo import (
    BaseGraphUnavailableException,
    InvalidHenningYeoSpecException,
    UntaggedEdgeException,
)
from apsbench.schemas.graphs import Edge, Graph
from apsbench.schemas.henning_yeo import HenningYeoInstance, HYSpec, QuasiCompleteBlock, QuasiCompleteGraph
from apsbench.utils.validation import check_hy_parameters

BASE_SAMPLING_ATTEMPTS = 1000


def henning_yeo_order(k: int, p: int) -> int:
    """
    Returns the order of the Henning-Yeo graph with parameters (k, p).

    Even k: p(k^2 + k + 2) / 2. Odd k: p(k^3 - 3k) + k^2 + 2k + 1.

    Raises:
        InvalidHenningYeoSpecException: If k < 3 or p < 1.
    """
    check_hy_parameters(k, p)
    if k % 2 == 0:
        return p * (k * k + k + 2) // 2
    return p * (k**3 - 3 * k) + k * k + 2 * k + 1


def smallest_p_for_order(k: int, min_order: int) -> int:
    """
    Returns the smallest valid replication parameter whose instance has at least `min_order` vertices.

    Even k needs p >= 2 for a loop-free base multigraph.

    Raises:
        InvalidHenningYeoSpecException: If k < 3.
    """
    check_hy_parameters(k, 1)
    p = 2 if k % 2 == 0 else 1
    while henning_yeo_order(k, p) < min_order:
        p += 1
    return p


def quasi_complete_even_deleted(k: int) -> Set[Tuple[int, int]]:
    """Local pairs removed from K_{k+1} in the even block: the single edge w1 w2."""
    return {(0, 1)}


def quasi_complete_odd_deleted(k: int) -> Set[Tuple[int, int]]:
    """Local pairs removed from K_{k+2}; local index k+1 is the distinguished vertex w_{k+2}."""
    deleted = {(2 * i, 2 * i + 1) for i in range((k - 1) // 2)}
    deleted.add((k - 1, k + 1))
    deleted.add((k, k + 1))
    return deleted


def quasi_complete_local_edges(k: int) -> List[Tuple[int, int]]:
    """Local edge list of the quasi-complete block of degree k, in lexicographic order."""
    if k % 2 == 0:
        size, deleted = k + 1, quasi_complete_even_deleted(k)
    else:
        size, deleted = k + 2, quasi_complete_odd_deleted(k)
    return [pair for pair in combinations(range(size), 2) if pair not in deleted]


def classify_quasi_complete_edge(k: int, a: int, b: int) -> QuasiCompleteEdgeKind:
    """
    Returns the closed-form kind of the local block edge (a, b), a < b.
    """
    if k % 2 == 0:
        if a in (0, 1) or b in (0, 1):
            return QuasiCompleteEdgeKind.EVEN_XU
        return QuasiCompleteEdgeKind.EVEN_UV
    if b == k + 1:
        return QuasiCompleteEdgeKind.ODD_UX
    if (a, b) == (k - 1, k):
        return QuasiCompleteEdgeKind.ODD_TOP_PAIR
    return QuasiCompleteEdgeKind.ODD_UV


def circulant_base_pairs(k: int, p: int) -> List[Tuple[int, int]]:
    """
    Returns the canonical loop-free k-regular base multigraph on p vertices as a list of pairs with repetition.

    p = 2 gives k parallel edges, p >= 3 a p-cycle with every edge of multiplicity k/2.
    """
    if p == 2:
        return [(0, 1)] * k
    pairs = []
    for vertex in range(p):
        pair = tuple(sorted((vertex, (vertex + 1) % p)))
        pairs.extend([pair] * (k // 2))
    return sorted(pairs)


def random_base_pairs(k: int, p: int, seed: int) -> List[Tuple[int, int]]:
    """
    Samples a loop-free k-regular multigraph on p vertices with the configuration model.

    Raises:
        BaseGraphUnavailableException: If no loop-free pairing is found within the attempt budget.
    """
    rng = np.random.default_rng(seed)
    for _ in range(BASE_SAMPLING_ATTEMPTS):
        multigraph = nx.configuration_model([k] * p, seed=int(rng.integers(2**31)))
        if nx.number_of_selfloops(multigraph) == 0:
            return sorted(tuple(sorted((int(u), int(v)))) for u, v in multigraph.edges())
    raise BaseGraphUnavailableException(k=k, p=p)


class HenningYeoService:
    """
    Builds Henning-Yeo graphs and their quasi-complete building blocks.

    Vertices are laid out copy-major: barrier vertices first, then every quasi-complete
    copy as a contiguous range in block-local order.
    """

    def build_quasi_complete_even(self, k: int) -> QuasiCompleteGraph:
        """
        Builds K_{k+1} minus the edge xy, with x = 0 and y = 1.

        Args:
            k (int): Even degree, at least 4.

        Returns:
            QuasiCompleteGraph: The block and its distinguished vertices (x, y).

        Raises:
            InvalidHenningYeoSpecException: If k is odd or below 4.
        """
        if k % 2 != 0 or k < 4:
            raise InvalidHenningYeoSpecException(k=k, message=f"Even quasi-complete blocks need even k >= 4, got {k}.")
        edges = [Edge(u=a, v=b) for a, b in quasi_complete_local_edges(k)]
        return QuasiCompleteGraph(k=k, graph=Graph(n=k + 1, edges=edges), distinguished=(0, 1))

    def build_quasi_complete_odd(self, k: int) -> QuasiCompleteGraph:
        """
        Builds K_{k+2} minus {w_1w_2, w_3w_4, ..., w_{k-2}w_{k-1}, w_k w_{k+2}, w_{k+1}w_{k+2}}.

        Vertex w_i has local index i - 1, so w_{k+2} is k + 1.

        Args:
            k (int): Odd degree, at least 3.

        Returns:
            QuasiCompleteGraph: The block and its distinguished vertex (w_{k+2},).

        Raises:
            InvalidHenningYeoSpecException: If k is even or below 3.
        """
        if k % 2 != 1 or k < 3:
            raise InvalidHenningYeoSpecException(k=k, message=f"Odd quasi-complete blocks need odd k >= 3, got {k}.")
        edges = [Edge(u=a, v=b) for a, b in quasi_complete_local_edges(k)]
        return QuasiCompleteGraph(k=k, graph=Graph(n=k + 2, edges=edges), distinguished=(k + 1,))

    def base_pairs(self, spec: HYSpec) -> List[Tuple[int, int]]:
        """
        Returns the base multigraph X_p of an even instance as pairs with repetition.

        Raises:
            BaseGraphUnavailableException: For p = 1, where no loop-free k-regular multigraph exists.
        """
        if spec.p < 2:
            raise BaseGraphUnavailableException(k=spec.k, p=spec.p)
        if spec.base_seed is None:
            return circulant_base_pairs(spec.k, spec.p)
        return random_base_pairs(spec.k, spec.p, spec.base_seed)

    def build_even(self, spec: HYSpec) -> HenningYeoInstance:
        """
        Builds the even Henning-Yeo graph: every base edge uv is replaced by u-x, y-v and a copy of K_{k+1} minus xy.

        Args:
            spec (HYSpec): Parameters with even k.

        Returns:
            HenningYeoInstance: The k-regular graph of order p(k^2 + k + 2) / 2 with its edge classes.

        Raises:
            InvalidHenningYeoSpecException: If k is odd.
            BaseGraphUnavailableException: If no base multigraph exists for (k, p).
        """
        k, p = spec.k, spec.p
        if not spec.is_even:
            raise InvalidHenningYeoSpecException(k=k, p=p, message=f"build_even needs an even degree, got {k}.")
        logger.info(f"Building even Henning-Yeo graph k={k}, p={p}, base_seed={spec.base_seed}")
        local_edges = quasi_complete_local_edges(k)
        labels = [f"b{vertex + 1}" for vertex in range(p)]
        edges: List[Edge] = []
        tags: List[EdgeClassTag] = []
        blocks: List[QuasiCompleteBlock] = []
        for copy, (u, v) in enumerate(self.base_pairs(spec)):
            offset = len(labels)
            vertices = list(range(offset, offset + k + 1))
            labels.extend([f"q{copy + 1}.x", f"q{copy + 1}.y"] + [f"q{copy + 1}.u{i}" for i in range(1, k)])
            for a, b in local_edges:
                edges.append(Edge(u=offset + a, v=offset + b))
                tags.append(EdgeClassTag.INTERNAL_QUASI_COMPLETE)
            edges.append(Edge(u=u, v=offset))
            edges.append(Edge(u=v, v=offset + 1))
            tags.extend([EdgeClassTag.EXTERNAL_ATTACHMENT] * 2)
            blocks.append(QuasiCompleteBlock(vertices=vertices, attachments=[(offset, u), (offset + 1, v)]))
        return self._finish(spec, len(labels), edges, tags, labels, list(range(p)), blocks)

    def bipartite_windows(self, k: int, p: int) -> List[List[int]]:
        """
        Returns N(u_i) as 0-based indices into V2 for i = 1..p.

        Window i covers v_{(k-1)(i-1)+1} .. v_{(k-1)(i-1)+k}; consecutive windows share one vertex.
        Indices are clamped to |V2| = p(k-1) + 1, which the last window reaches exactly.
        """
        size = p * (k - 1) + 1
        windows = []
        for i in range(1, p + 1):
            start = (k - 1) * (i - 1)
            windows.append([min(index, size - 1) for index in range(start, start + k)])
        return windows

    def build_odd(self, spec: HYSpec) -> HenningYeoInstance:
        """
        Builds the odd Henning-Yeo graph from the bipartite graph on V1 + V2 and k - d_v quasi-complete
        blocks per vertex v of V2, each joined to v through its vertex w_{k+2}.

        Args:
            spec (HYSpec): Parameters with odd k.

        Returns:
            HenningYeoInstance: The k-regular graph of order p(k^3 - 3k) + k^2 + 2k + 1 with its edge classes.

        Raises:
            InvalidHenningYeoSpecException: If k is even.
        """
        k, p = spec.k, spec.p
        if spec.is_even:
            raise InvalidHenningYeoSpecException(k=k, p=p, message=f"build_odd needs an odd degree, got {k}.")
        logger.info(f"Building odd Henning-Yeo graph k={k}, p={p}")
        v2_size = p * (k - 1) + 1
        labels = [f"u{i + 1}" for i in range(p)] + [f"v{j + 1}" for j in range(v2_size)]
        edges: List[Edge] = []
        tags: List[EdgeClassTag] = []
        v2_degree: Dict[int, int] = {j: 0 for j in range(v2_size)}
        for i, window in enumerate(self.bipartite_windows(k, p)):
            for j in sorted(set(window)):
                edges.append(Edge(u=i, v=p + j))
                tags.append(EdgeClassTag.OTHER_EXTERNAL)
                v2_degree[j] += 1
        local_edges = quasi_complete_local_edges(k)
        blocks: List[QuasiCompleteBlock] = []
        for j in range(v2_size):
            v = p + j
            for _ in range(k - v2_degree[j]):
                copy = len(blocks) + 1
                offset = len(labels)
                labels.extend(f"q{copy}.w{i + 1}" for i in range(k + 2))
                for a, b in local_edges:
                    edges.append(Edge(u=offset + a, v=offset + b))
                    tags.append(EdgeClassTag.INTERNAL_QUASI_COMPLETE)
                edges.append(Edge(u=v, v=offset + k + 1))
                tags.append(EdgeClassTag.EXTERNAL_ATTACHMENT)
                blocks.append(
                    QuasiCompleteBlock(vertices=list(range(offset, offset + k + 2)), attachments=[(offset + k + 1, v)])
                )
        barrier = list(range(p, p + v2_size))
        return self._finish(spec, len(labels), edges, tags, labels, barrier, blocks)

    def build(self, spec: HYSpec) -> HenningYeoInstance:
        """
        Builds the instance for either parity and applies the HYSpec weights when present.
        """
        instance = self.build_even(spec) if spec.is_even else self.build_odd(spec)
        if spec.weighted:
            weighted = self.apply_weights(instance.graph, instance.tags, spec.w_internal, spec.w_external)
            instance = instance.model_copy(update={"graph": weighted})
        return instance

    def apply_weights(self, g: Graph, tags: List[EdgeClassTag], w_internal: float, w_external: float) -> Graph:
        """
        Assigns w_internal to quasi-complete internal edges and w_external to every other edge.

        Args:
            g (Graph): The graph to reweight; topology is kept.
            tags (List[EdgeClassTag]): Edge class per edge id.
            w_internal (float): Weight of internal edges.
            w_external (float): Weight of attachment and bipartite edges.

        Returns:
            Graph: The reweighted graph.

        Raises:
            UntaggedEdgeException: If the tags do not cover every edge exactly once.
            InvalidHenningYeoSpecException: If a weight is not positive.
        """
        if len(tags) != g.m or any(tag is None for tag in tags):
            raise UntaggedEdgeException(message=f"{g.m} edges but {len(tags)} tags.")
        if w_internal <= 0 or w_external <= 0:
            raise InvalidHenningYeoSpecException(
                k=0, message=f"Weights must be positive, got ({w_internal}, {w_external})."
            )
        weights = [w_internal if tag == EdgeClassTag.INTERNAL_QUASI_COMPLETE else w_external for tag in tags]
        return g.with_weights(weights)

    def barrier_components(self, instance: HenningYeoInstance) -> List[List[int]]:
        """
        Removes the barrier set and returns the vertex sets of the remaining connected components.

        For even k every component is one quasi-complete copy (k + 1 vertices). For odd k the
        components are the copies (k + 2 vertices) and the V1 vertices as singletons.
        """
        nx_graph = nx.Graph()
        barrier = set(instance.barrier)
        nx_graph.add_nodes_from(v for v in range(instance.n) if v not in barrier)
        nx_graph.add_edges_from(
            (e.u, e.v) for e in instance.graph.edges if e.u not in barrier and e.v not in barrier
        )
        return sorted(sorted(component) for component in nx.connected_components(nx_graph))

    def edge_kinds(self, instance: HenningYeoInstance) -> List[Optional[QuasiCompleteEdgeKind]]:
        """
        Returns the closed-form kind of every internal edge, oriented as stored, and None for other edges.
        """
        kinds: List[Optional[QuasiCompleteEdgeKind]] = [None] * instance.graph.m
        for block in instance.blocks:
            local = {vertex: index for index, vertex in enumerate(block.vertices)}
            for vertex in block.vertices:
                for edge_id in instance.graph.incident_edges(vertex):
                    edge = instance.graph.edges[edge_id]
                    if edge.u in local and edge.v in local:
                        a, b = sorted((local[edge.u], local[edge.v]))
                        kinds[edge_id] = classify_quasi_complete_edge(instance.k, a, b)
        return kinds

    def _finish(
        self,
        spec: HYSpec,
        n: int,
        edges: List[Edge],
        tags: List[EdgeClassTag],
        labels: List[str],
        barrier: List[int],
        blocks: List[QuasiCompleteBlock],
    ) -> HenningYeoInstance:
        graph = Graph(n=n, edges=edges)
        expected = henning_yeo_order(spec.k, spec.p)
        if graph.n != expected:
            logger.warning(f"Order {graph.n} differs from the closed form {expected} for k={spec.k}, p={spec.p}")
        logger.info(f"Built Henning-Yeo graph k={spec.k}, p={spec.p}: order {graph.n}, {graph.m} edges")
        return HenningYeoInstance(spec=spec, graph=graph, tags=tags, labels=labels, barrier=barrier, blocks=blocks)
