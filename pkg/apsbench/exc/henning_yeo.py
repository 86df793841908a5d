from apsbench.exc.base import ApsBenchException


class InvalidHenningYeoSpecException(ApsBenchException):
    """
    Exception raised when the degree/replication parameters do not describe a Henning-Yeo graph.

    Attributes:
        k (int): The requested degree.
        p (int): The requested replication parameter.
        message (str): The error message to be displayed.
    """

    def __init__(self, k: int, p: int = None, message: str = None):
        """
        Initializes the exception with the offending parameters.

        Args:
            k (int): The requested degree.
            p (int, optional): The requested replication parameter.
            message (str, optional): Custom error message.
        """
        self.k = k
        self.p = p
        if message is None:
            message = f"No Henning-Yeo construction for k={k}, p={p}."
        super().__init__(message)


class BaseGraphUnavailableException(InvalidHenningYeoSpecException):
    """
    Exception raised when no loop-free k-regular base multigraph on p vertices exists or can be sampled.
    """

    def __init__(self, k: int, p: int, message: str = None):
        if message is None:
            message = f"No loop-free {k}-regular base multigraph on {p} vertices."
        super().__init__(k=k, p=p, message=message)


class UntaggedEdgeException(ApsBenchException):
    """
    Exception raised when an edge carries no class tag or the tags do not match the edge list.
    """

    default_message = "Every edge needs exactly one class tag."
