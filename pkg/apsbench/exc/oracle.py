from apsbench.exc.base import ApsBenchException


class QubitCapExceededException(ApsBenchException):
    """
    Exception raised when a dense oracle computation is requested for too many qubits.

    Attributes:
        n (int): The requested number of qubits.
        cap (int): The configured cap.
        message (str): The error message to be displayed.
    """

    def __init__(self, n: int, cap: int, message: str = None):
        self.n = n
        self.cap = cap
        if message is None:
            message = f"Graph order {n} exceeds the dense oracle cap of {cap} qubits."
        super().__init__(message)


class StateNormException(ApsBenchException):
    """
    Exception raised when a state vector drifts away from unit norm.
    """

    def __init__(self, norm: float, message: str = None):
        if message is None:
            message = f"State norm drifted to {norm!r}."
        super().__init__(message)


class ImaginaryExpectationException(ApsBenchException):
    """
    Exception raised when a Hermitian expectation value has a non-negligible imaginary part.
    """

    def __init__(self, value: complex, message: str = None):
        if message is None:
            message = f"Expectation value {value!r} is not real."
        super().__init__(message)
