from apsbench.enums._compat import StrEnum


class EdgeClassTag(StrEnum):
    """
    Enum class labelling the edges of a Henning-Yeo graph.

    Attributes:
        INTERNAL_QUASI_COMPLETE (str): Edge inside a quasi-complete block.
        EXTERNAL_ATTACHMENT (str): Edge joining a block's distinguished vertex to the outside.
        OTHER_EXTERNAL (str): Edge of the odd-case bipartite scaffold.
    """

    INTERNAL_QUASI_COMPLETE = "internal_quasi_complete"
    EXTERNAL_ATTACHMENT = "external_attachment"
    OTHER_EXTERNAL = "other_external"
