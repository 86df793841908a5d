from apsbench.exc.base import ApsBenchException


class UnknownFaultException(ApsBenchException):
    """
    Exception raised when the verification suites are asked to inject a fault they do not know.

    Attributes:
        fault (str): The requested fault name.
        message (str): The error message to be displayed.
    """

    def __init__(self, fault: str, known: tuple, message: str = None):
        self.fault = fault
        if message is None:
            message = f"Unknown fault '{fault}', expected one of {known}."
        super().__init__(message)


class InvalidSuiteSizeException(ApsBenchException):
    """
    Exception raised when a verification suite is sized with a non-positive count or order.
    """

    def __init__(self, name: str, value: int, minimum: int, message: str = None):
        if message is None:
            message = f"{name} must be at least {minimum}, got {value}."
        super().__init__(message)
