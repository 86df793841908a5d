from apsbench.enums._compat import StrEnum


class TableId(StrEnum):
    """
    Enum class of the reproducible ratio tables.

    Attributes:
        I (str): FED ratios r_k and decay parameters on k-regular graphs.
        II (str): Matching ratios m_k and shifted ratios from the tight bounds.
        III (str): Leading-term and exact FED ratios against shifted matching ratios.
        IV (str): Unweighted against two-weight-class ratios.
    """

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"


class OutputFormat(StrEnum):
    """
    Enum class of report output formats.

    Attributes:
        CSV (str): Comma separated, header row, '.' decimal separator.
        JSON (str): Full-precision JSON document.
    """

    CSV = "csv"
    JSON = "json"
