from fractions import Fraction
from typing import List

from pydantic import BaseModel


class Matching(BaseModel):
    """
    Integral matching of a graph.

    Attributes:
        edges (List[int]): Chosen edge ids, ascending.
        value_numerator (int): Numerator of the exact value w(M).
        value_denominator (int): Denominator of the exact value w(M).
    """

    edges: List[int]
    value_numerator: int
    value_denominator: int = 1

    @property
    def exact_value(self) -> Fraction:
        return Fraction(self.value_numerator, self.value_denominator)

    @property
    def value(self) -> float:
        return float(self.exact_value)

    def export(self) -> dict:
        """JSON document of the matching."""
        return {"edges": list(self.edges), "value": self.value}


class EdgeFraction(BaseModel):
    """
    Attributes:
        edge (int): Edge id.
        frac (float): Matching fraction of the edge.
    """

    edge: int
    frac: float


class FractionalMatching(BaseModel):
    """
    Fractional matching given as one fraction per edge id.

    Attributes:
        fractions (List[float]): Fraction of every edge, indexed by edge id.
        value (float): Weighted value sum(w_e * m_e).
        value_numerator (int): Numerator of the exact value, when known.
        value_denominator (int): Denominator of the exact value, when known.
    """

    fractions: List[float]
    value: float
    value_numerator: int = 0
    value_denominator: int = 0

    @property
    def exact_value(self) -> Fraction:
        if self.value_denominator == 0:
            return Fraction(self.value)
        return Fraction(self.value_numerator, self.value_denominator)

    def support(self) -> List[EdgeFraction]:
        """Edges with a positive fraction."""
        return [EdgeFraction(edge=edge_id, frac=frac) for edge_id, frac in enumerate(self.fractions) if frac > 0]

    def export(self) -> dict:
        """JSON document listing the positive fractions and the value."""
        return {"fractions": [item.model_dump() for item in self.support()], "value": self.value}
