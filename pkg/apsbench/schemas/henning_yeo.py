from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from apsbench.enums.edge_class import EdgeClassTag
from apsbench.exc.henning_yeo import InvalidHenningYeoSpecException, UntaggedEdgeException
from apsbench.schemas.graphs import Graph


class HYSpec(BaseModel):
    """
    Parameters of a Henning-Yeo instance.

    Attributes:
        k (int): Degree of the regular graph.
        p (int): Replication parameter (base-graph order for even k, |V1| for odd k).
        w_internal (Optional[float]): Weight of the edges inside quasi-complete blocks.
        w_external (Optional[float]): Weight of every other edge.
        base_seed (Optional[int]): Seed of a random loop-free base multigraph (even k only).
            The canonical circulant base is used when omitted.
    """

    k: int = Field(ge=3)
    p: int = Field(ge=1)
    w_internal: Optional[float] = Field(default=None, gt=0)
    w_external: Optional[float] = Field(default=None, gt=0)
    base_seed: Optional[int] = None

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_weights(self) -> "HYSpec":
        if (self.w_internal is None) != (self.w_external is None):
            raise InvalidHenningYeoSpecException(
                k=self.k, p=self.p, message="Internal and external weights must be given together."
            )
        return self

    @property
    def is_even(self) -> bool:
        """True for the even construction."""
        return self.k % 2 == 0

    @property
    def weighted(self) -> bool:
        return self.w_internal is not None

    @property
    def d_w(self) -> Optional[float]:
        """Ratio between internal and external weights, None when unweighted."""
        if not self.weighted:
            return None
        return self.w_internal / self.w_external


class QuasiCompleteGraph(BaseModel):
    """
    A quasi-complete building block on its own.

    Attributes:
        k (int): Target degree.
        graph (Graph): The block (K_{k+1} minus xy for even k, K_{k+2} minus the deletion set for odd k).
        distinguished (Tuple[int, ...]): (x, y) for even k, (w_{k+2},) for odd k.
    """

    k: int
    graph: Graph
    distinguished: Tuple[int, ...]


class QuasiCompleteBlock(BaseModel):
    """
    Placement of one quasi-complete copy inside an instance.

    Attributes:
        vertices (List[int]): Global vertex ids in block-local order.
        attachments (List[Tuple[int, int]]): (block vertex, outside vertex) pairs of the attachment edges.
    """

    vertices: List[int]
    attachments: List[Tuple[int, int]]


class HenningYeoInstance(BaseModel):
    """
    A constructed Henning-Yeo graph with its edge classes and layout.

    Attributes:
        spec (HYSpec): Construction parameters.
        graph (Graph): The k-regular graph.
        tags (List[EdgeClassTag]): Edge class of every edge, indexed by edge id.
        labels (List[str]): Human-readable vertex labels, indexed by vertex.
        barrier (List[int]): Base vertices (even k) or V2 (odd k); removing them leaves only odd components.
        blocks (List[QuasiCompleteBlock]): Placement of every quasi-complete copy.
    """

    spec: HYSpec
    graph: Graph
    tags: List[EdgeClassTag]
    labels: List[str]
    barrier: List[int]
    blocks: List[QuasiCompleteBlock]

    @model_validator(mode="after")
    def check_tags(self) -> "HenningYeoInstance":
        if len(self.tags) != self.graph.m:
            raise UntaggedEdgeException(message=f"{self.graph.m} edges but {len(self.tags)} tags.")
        return self

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def n(self) -> int:
        return self.graph.n

    def edges_with_tag(self, tag: EdgeClassTag) -> List[int]:
        """Edge ids carrying the given class tag."""
        return [edge_id for edge_id, edge_tag in enumerate(self.tags) if edge_tag == tag]
