import math
from typing import Dict, List, Tuple

from pydantic import BaseModel, Field, PrivateAttr

from apsbench.exc.graphs import (
    EdgeNotFoundException,
    InvalidGraphException,
    MultigraphNotSupportedException,
    VertexOutOfRangeException,
)


class Edge(BaseModel):
    """
    Schema of a stored edge: a vertex pair with a multiplicity and a per-copy weight.

    Attributes:
        u (int): First endpoint.
        v (int): Second endpoint.
        mult (int): Number of parallel copies between u and v.
        w (float): Weight of each copy.
    """

    u: int = Field(ge=0)
    v: int = Field(ge=0)
    mult: int = Field(default=1, ge=1)
    w: float = Field(default=1.0, gt=0)

    class Config:
        frozen = True

    @property
    def pair(self) -> Tuple[int, int]:
        """The endpoints as (min, max), the key of the edge in the pair index."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    @property
    def total_weight(self) -> float:
        """Weight of all parallel copies, mult * w."""
        return self.mult * self.w


class NeighborPartition(BaseModel):
    """
    Neighbourhood split around an edge (i, j) of a simple graph.

    Attributes:
        i (int): First endpoint of the edge.
        j (int): Second endpoint of the edge.
        common (Tuple[int, ...]): Vertices adjacent to both i and j (the set T).
        exclusive_i (Tuple[int, ...]): Neighbours of i other than j that are not adjacent to j.
        exclusive_j (Tuple[int, ...]): Neighbours of j other than i that are not adjacent to i.
    """

    i: int
    j: int
    common: Tuple[int, ...]
    exclusive_i: Tuple[int, ...]
    exclusive_j: Tuple[int, ...]

    class Config:
        frozen = True

    @property
    def t(self) -> int:
        return len(self.common)

    @property
    def others_of_i(self) -> Tuple[int, ...]:
        """Every neighbour of i except j (the set K)."""
        return tuple(sorted(self.common + self.exclusive_i))

    @property
    def others_of_j(self) -> Tuple[int, ...]:
        """Every neighbour of j except i (the set L)."""
        return tuple(sorted(self.common + self.exclusive_j))


class Graph(BaseModel):
    """
    Immutable weighted multigraph on the dense vertex set 0..n-1.

    Each unordered vertex pair is stored at most once; parallel edges are expressed through
    the multiplicity of that single entry. The position of an edge in `edges` is its id, which
    every downstream computation uses for deterministic ordering.

    Attributes:
        n (int): Number of vertices.
        edges (List[Edge]): Edge list in insertion order.
    """

    n: int = Field(ge=0)
    edges: List[Edge] = []

    _adjacency: List[Dict[int, int]] = PrivateAttr(default_factory=list)
    _pair_index: Dict[Tuple[int, int], int] = PrivateAttr(default_factory=dict)
    _degrees: List[int] = PrivateAttr(default_factory=list)

    class Config:
        frozen = True

    def model_post_init(self, __context) -> None:
        """
        Builds the adjacency, pair index and degree caches.

        Raises:
            InvalidGraphException: On a self-loop or a pair stored twice.
            VertexOutOfRangeException: If an endpoint is outside 0..n-1.
        """
        adjacency: List[Dict[int, int]] = [{} for _ in range(self.n)]
        pair_index: Dict[Tuple[int, int], int] = {}
        degrees = [0] * self.n
        for edge_id, edge in enumerate(self.edges):
            if edge.u == edge.v:
                raise InvalidGraphException(message=f"Self-loop at vertex {edge.u} (edge {edge_id}).")
            for vertex in (edge.u, edge.v):
                if vertex >= self.n:
                    raise VertexOutOfRangeException(vertex=vertex, n=self.n)
            if edge.pair in pair_index:
                raise InvalidGraphException(
                    message=f"Pair {edge.pair} is stored twice; use the multiplicity field for parallel edges."
                )
            pair_index[edge.pair] = edge_id
            adjacency[edge.u][edge.v] = edge_id
            adjacency[edge.v][edge.u] = edge_id
            degrees[edge.u] += edge.mult
            degrees[edge.v] += edge.mult
        self._adjacency = adjacency
        self._pair_index = pair_index
        self._degrees = degrees

    @property
    def m(self) -> int:
        """Number of stored vertex pairs (edge ids)."""
        return len(self.edges)

    @property
    def is_simple(self) -> bool:
        """True when no edge carries a multiplicity above one."""
        return all(edge.mult == 1 for edge in self.edges)

    @property
    def max_degree(self) -> int:
        """Largest vertex degree, 0 on an edgeless graph."""
        return max(self._degrees, default=0)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise VertexOutOfRangeException(vertex=v, n=self.n)

    def edge(self, edge_id: int) -> Edge:
        """
        Returns the edge with the given id.

        Args:
            edge_id (int): Position of the edge in the edge list.

        Returns:
            Edge: The stored edge.

        Raises:
            EdgeNotFoundException: If the id is not an edge id of this graph.
        """
        if not (0 <= edge_id < len(self.edges)):
            raise EdgeNotFoundException(edge=edge_id)
        return self.edges[edge_id]

    def edge_id(self, u: int, v: int) -> int:
        """
        Looks up the id of the edge joining u and v.

        Args:
            u (int): First endpoint.
            v (int): Second endpoint.

        Returns:
            int: The edge id.

        Raises:
            VertexOutOfRangeException: If an endpoint is outside 0..n-1.
            EdgeNotFoundException: If u and v are not adjacent.
        """
        self._check_vertex(u)
        self._check_vertex(v)
        try:
            return self._adjacency[u][v]
        except KeyError:
            raise EdgeNotFoundException(edge=(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        """True when the pair (u, v) is stored; out-of-range vertices give False."""
        return 0 <= u < self.n and v in self._adjacency[u]

    def degree(self, v: int) -> int:
        """
        Returns the degree of v, counting parallel edges with their multiplicity.

        Args:
            v (int): The vertex.

        Returns:
            int: Sum of the multiplicities of the edges incident to v.

        Raises:
            VertexOutOfRangeException: If v is outside 0..n-1.
        """
        self._check_vertex(v)
        return self._degrees[v]

    def degrees(self) -> List[int]:
        """
        Returns the degree of every vertex, multiplicities included.

        Returns:
            List[int]: Degree per vertex id.
        """
        return list(self._degrees)

    def neighbors(self, v: int) -> List[int]:
        """
        Returns the distinct neighbours of v in ascending order.

        Args:
            v (int): The vertex.

        Returns:
            List[int]: Adjacent vertices, each listed once even across parallel copies.

        Raises:
            VertexOutOfRangeException: If v is outside 0..n-1.
        """
        self._check_vertex(v)
        return sorted(self._adjacency[v])

    def incident_edges(self, v: int) -> List[int]:
        """
        Returns the ids of the edges incident to v in ascending order.

        Args:
            v (int): The vertex.

        Returns:
            List[int]: Edge ids touching v.

        Raises:
            VertexOutOfRangeException: If v is outside 0..n-1.
        """
        self._check_vertex(v)
        return sorted(self._adjacency[v].values())

    def edge_degree(self, edge_id: int) -> int:
        """
        Returns the edge degree, the larger of the two endpoint degrees.

        Args:
            edge_id (int): The edge id.

        Returns:
            int: max(degree(u), degree(v)).

        Raises:
            EdgeNotFoundException: If the edge does not exist.
        """
        edge = self.edge(edge_id)
        return max(self._degrees[edge.u], self._degrees[edge.v])

    def neighbor_partition(self, edge_id: int) -> NeighborPartition:
        """
        Splits the neighbourhood of an edge into common and exclusive parts.

        The edge is oriented as stored (i = u, j = v); all sets are sorted.

        Args:
            edge_id (int): The edge id.

        Returns:
            NeighborPartition: The sets T, K minus T and L minus T.

        Raises:
            EdgeNotFoundException: If the edge does not exist.
            MultigraphNotSupportedException: If an edge incident to i or j has multiplicity above one.
        """
        edge = self.edge(edge_id)
        i, j = edge.u, edge.v
        for vertex in (i, j):
            for incident in self._adjacency[vertex].values():
                if self.edges[incident].mult != 1:
                    raise MultigraphNotSupportedException(edge=edge_id)
        others_i = set(self._adjacency[i]) - {j}
        others_j = set(self._adjacency[j]) - {i}
        common = others_i & others_j
        return NeighborPartition(
            i=i,
            j=j,
            common=tuple(sorted(common)),
            exclusive_i=tuple(sorted(others_i - common)),
            exclusive_j=tuple(sorted(others_j - common)),
        )

    def total_weight(self) -> float:
        """Total weight w(G): the sum over edges of multiplicity times weight."""
        return math.fsum(edge.total_weight for edge in self.edges)

    def collapsed(self) -> "Graph":
        """
        Folds every multi-edge into a single edge carrying the summed weight.

        Edge ids are preserved, so angle assignments made for this graph stay valid.
        """
        if self.is_simple:
            return self
        return Graph(n=self.n, edges=[Edge(u=e.u, v=e.v, mult=1, w=e.total_weight) for e in self.edges])

    def with_weights(self, weights: List[float]) -> "Graph":
        """
        Returns a copy with new per-copy weights, indexed by edge id.

        Raises:
            InvalidGraphException: If the number of weights differs from m.
        """
        if len(weights) != len(self.edges):
            raise InvalidGraphException(message=f"Expected {len(self.edges)} weights, received {len(weights)}.")
        return Graph(n=self.n, edges=[Edge(u=e.u, v=e.v, mult=e.mult, w=w) for e, w in zip(self.edges, weights)])
