from apsbench.exc.base import ApsBenchException


class InvalidIntervalException(ApsBenchException):
    """
    Exception raised when a fraction interval is inverted or leaves [0, 1].

    Attributes:
        lower (float): Lower end of the interval.
        upper (float): Upper end of the interval.
        message (str): The error message to be displayed.
    """

    def __init__(self, lower: float, upper: float, message: str = None):
        self.lower = lower
        self.upper = upper
        if message is None:
            message = f"Invalid fraction interval [{lower}, {upper}]; need 0 <= lower <= upper <= 1."
        super().__init__(message)


class InvalidFedParameterException(ApsBenchException):
    """
    Exception raised when a decay parameter or matching fraction is outside its domain.
    """

    default_message = "Decay parameter must be non-negative and matching fraction must lie in [0, 1]."


class AngleClassMismatchException(ApsBenchException):
    """
    Exception raised when the edge classes of a weighted instance do not match its degree parity.
    """

    def __init__(self, k: int, classes: list, message: str = None):
        if message is None:
            message = f"Degree {k} does not admit the edge classes {classes}."
        super().__init__(message)
