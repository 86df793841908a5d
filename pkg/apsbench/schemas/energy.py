import math
from typing import List

from pydantic import BaseModel, field_validator

from apsbench.exc.energy import AngleOutOfRangeException


class AngleAssignment(BaseModel):
    """
    Rotation angles of a magic graph state, one per edge id.

    Attributes:
        thetas (List[float]): Angle of every edge in radians, each in [0, pi/4].
    """

    thetas: List[float]

    @field_validator("thetas")
    @classmethod
    def check_range(cls, thetas: List[float]) -> List[float]:
        for edge_id, theta in enumerate(thetas):
            if not (0.0 <= theta <= math.pi / 4 + 1e-15):
                raise AngleOutOfRangeException(edge_id=edge_id, theta=theta)
        return thetas

    @classmethod
    def uniform(cls, m: int, theta: float) -> "AngleAssignment":
        """One angle shared by m edges."""
        return cls(thetas=[theta] * m)

    def __getitem__(self, edge_id: int) -> float:
        return self.thetas[edge_id]

    def __len__(self) -> int:
        return len(self.thetas)


class EdgeExpectation(BaseModel):
    """
    Closed-form expectations of one edge term.

    Attributes:
        edge (int): Edge id.
        qp (float): <Q_i P_j>.
        pq (float): <P_i Q_j>.
        zz (float): <Z_i Z_j>.
        g (float): <g_ij> = (1 + qp + pq + zz) / 2.
        weight (float): Weight of the edge term.
    """

    edge: int = -1
    qp: float
    pq: float
    zz: float
    g: float
    weight: float = 1.0

    @classmethod
    def from_terms(cls, qp: float, pq: float, zz: float, edge: int = -1, weight: float = 1.0) -> "EdgeExpectation":
        return cls(edge=edge, qp=qp, pq=pq, zz=zz, g=0.5 * (1.0 + qp + pq + zz), weight=weight)


class EdgeEnergyBreakdown(BaseModel):
    """
    Per-edge expectations and the weighted total energy.

    Attributes:
        edges (List[EdgeExpectation]): One record per edge id.
        total (float): sum(w_e * <g_e>).
    """

    edges: List[EdgeExpectation]
    total: float
