from typing import List, Optional

from pydantic import BaseModel, Field

from apsbench.core.settings import settings


class FedConfig(BaseModel):
    """
    Parameters of the FED optimisation.

    Attributes:
        kappa (Optional[float]): Fixed decay parameter; the optimiser chooses it when omitted.
        tolerance (float): Tolerance on the parameter axis of every scalar search.
        kappa_upper (float): Upper end of the decay-parameter search interval.
        grid_points (int): Size of the dense seeding grids.
        max_sweeps (int): Maximum number of coordinate sweeps in multi-angle optimisation.
    """

    kappa: Optional[float] = Field(default=None, gt=0)
    tolerance: float = Field(default=settings.OPTIMIZER_TOLERANCE, gt=0)
    kappa_upper: float = Field(default=settings.KAPPA_UPPER, gt=0)
    grid_points: int = Field(default=settings.GRID_POINTS, ge=16)
    max_sweeps: int = Field(default=settings.MAX_SWEEPS, ge=1)


class MaxMinResult(BaseModel):
    """
    Attributes:
        ratio (float): max over kappa of the min over the fraction interval of R.
        kappa (float): Maximising decay parameter.
    """

    ratio: float
    kappa: float


class ImprovedRatio(BaseModel):
    """
    Exact single-angle FED optimum on one instance.

    Attributes:
        r_hat (float): energy / (w(G) + w(FM_G)).
        theta (float): Optimal uniform angle.
        kappa (float): Decay parameter reproducing theta for fraction 1/k.
        energy (float): Optimal exact energy.
        denominator (float): w(G) + w(FM_G).
    """

    r_hat: float
    theta: float
    kappa: float
    energy: float
    denominator: float


class WeightedFedResult(BaseModel):
    """
    Multi-angle FED optimum on a weighted instance.

    Attributes:
        r_hat_w (float): energy / (w(G) + w(FM^w)).
        thetas (List[float]): Optimal angle per edge class (internal, attachment[, other external]).
        seed_thetas (List[float]): Angles of the edge-degree seeding before optimisation.
        seed_kappa (float): Decay parameter of the seeding.
        energy (float): Optimal exact energy.
        denominator (float): w(G) + w(FM^w).
        sweeps (int): Coordinate sweeps performed.
    """

    r_hat_w: float
    thetas: List[float]
    seed_thetas: List[float]
    seed_kappa: float
    energy: float
    denominator: float
    sweeps: int


class RatioReport(BaseModel):
    """
    One table row of ratios for a degree k.

    Attributes:
        k (int): Degree.
        p (Optional[int]): Replication parameter of the instance.
        n (Optional[int]): Order of the instance.
        d_w (Optional[float]): Weight ratio of the weighted instance.
        r_k (Optional[float]): Leading-term FED ratio.
        kappa_k (Optional[float]): Decay parameter of r_k.
        r_hat_k (Optional[float]): Exact single-angle ratio on the instance.
        r_hat_min (Optional[float]): Smallest r_hat_k over the sampled base graphs.
        r_hat_max (Optional[float]): Largest r_hat_k over the sampled base graphs.
        m_k (Optional[float]): Matching ratio.
        m_hat_k (Optional[float]): Shifted matching ratio.
        gap (Optional[float]): m_hat_k - r_hat_k.
        r_hat_w (Optional[float]): Weighted multi-angle ratio.
        m_hat_w (Optional[float]): Weighted shifted matching ratio.
        gap_w (Optional[float]): m_hat_w - r_hat_w.
        violation_candidate (bool): True when a computed gap is negative.
    """

    k: int
    p: Optional[int] = None
    n: Optional[int] = None
    d_w: Optional[float] = None
    r_k: Optional[float] = None
    kappa_k: Optional[float] = None
    r_hat_k: Optional[float] = None
    r_hat_min: Optional[float] = None
    r_hat_max: Optional[float] = None
    m_k: Optional[float] = None
    m_hat_k: Optional[float] = None
    gap: Optional[float] = None
    r_hat_w: Optional[float] = None
    m_hat_w: Optional[float] = None
    gap_w: Optional[float] = None
    violation_candidate: bool = False
