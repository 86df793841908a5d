from apsbench.exc.base import ApsBenchException


class InvalidDegreeException(ApsBenchException):
    """
    Exception raised when a degree has no tight matching bound (even k < 4, odd k < 3).

    Attributes:
        k (int): The offending degree.
        message (str): The error message to be displayed.
    """

    def __init__(self, k: int, message: str = None):
        """
        Initializes the exception with the offending degree.

        Args:
            k (int): The offending degree.
            message (str, optional): Custom error message. Defaults to "No tight matching bound for k={k}.".
        """
        self.k = k
        if message is None:
            message = f"No tight matching bound for k={k}."
        super().__init__(message)


class InfeasibleFractionalMatchingException(ApsBenchException):
    """
    Exception raised when a fractional matching violates a vertex constraint or a fraction range.
    """

    default_message = "Fractional matching is infeasible."
