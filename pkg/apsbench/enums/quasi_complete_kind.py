from apsbench.enums._compat import StrEnum


class QuasiCompleteEdgeKind(StrEnum):
    """
    Enum class of the internal edge shapes of quasi-complete blocks with closed-form expectations.

    Attributes:
        EVEN_XU (str): Even-k block edge incident to a distinguished vertex x or y.
        EVEN_UV (str): Even-k block edge between two ordinary vertices.
        ODD_UX (str): Odd-k block edge incident to the distinguished vertex w_{k+2}.
        ODD_UV (str): Odd-k block edge between two ordinary vertices, apart from the top pair.
        ODD_TOP_PAIR (str): Odd-k block edge w_k w_{k+1}, whose endpoints both miss w_{k+2}.
    """

    EVEN_XU = "even_xu"
    EVEN_UV = "even_uv"
    ODD_UX = "odd_ux"
    ODD_UV = "odd_uv"
    ODD_TOP_PAIR = "odd_top_pair"

    @property
    def is_even(self) -> bool:
        return self in {QuasiCompleteEdgeKind.EVEN_XU, QuasiCompleteEdgeKind.EVEN_UV}
