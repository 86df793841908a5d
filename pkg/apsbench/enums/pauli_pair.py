from apsbench.enums._compat import StrEnum


class PauliPair(StrEnum):
    """
    Enum class of the two-qubit Pauli products the oracle can measure.

    Attributes:
        QP (str): Q on the first qubit, P on the second.
        PQ (str): P on the first qubit, Q on the second.
        ZZ (str): Z on both qubits.
        XX (str): X on both qubits.
        YY (str): Y on both qubits.
    """

    QP = "QP"
    PQ = "PQ"
    ZZ = "ZZ"
    XX = "XX"
    YY = "YY"
