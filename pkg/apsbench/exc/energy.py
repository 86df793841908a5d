from apsbench.exc.base import ApsBenchException


class AngleOutOfRangeException(ApsBenchException):
    """
    Exception raised when a rotation angle lies outside [0, pi/4].

    Attributes:
        edge_id (int): The edge carrying the angle.
        theta (float): The offending angle.
        message (str): The error message to be displayed.
    """

    def __init__(self, edge_id: int, theta: float, message: str = None):
        self.edge_id = edge_id
        self.theta = theta
        if message is None:
            message = f"Angle {theta} on edge {edge_id} is outside [0, pi/4]."
        super().__init__(message)


class AngleAssignmentMismatchException(ApsBenchException):
    """
    Exception raised when an angle assignment does not cover exactly the edges of a graph.
    """

    def __init__(self, expected: int, received: int, message: str = None):
        if message is None:
            message = f"Angle assignment has {received} angles, graph has {expected} edges."
        super().__init__(message)


class UniformAnglePreconditionException(ApsBenchException):
    """
    Exception raised when the simplified ZZ formula is used while T-incident angles differ.
    """

    def __init__(self, edge_id: int, message: str = None):
        if message is None:
            message = f"Edges incident to the common neighbourhood of edge {edge_id} carry different angles."
        super().__init__(message)


class CommonNeighborhoodTooLargeException(ApsBenchException):
    """
    Exception raised when the literal even-subset enumeration would exceed its size cap.
    """

    def __init__(self, t: int, cap: int, message: str = None):
        if message is None:
            message = f"Common neighbourhood of size {t} exceeds the enumeration cap {cap}; use the factorised sum."
        super().__init__(message)


class EdgeKindParityMismatchException(ApsBenchException):
    """
    Exception raised when a quasi-complete edge kind is requested for a degree of the wrong parity.
    """

    def __init__(self, kind: str, k: int, message: str = None):
        if message is None:
            message = f"Edge kind '{kind}' does not exist in blocks of degree {k}."
        super().__init__(message)


class AngleClassException(ApsBenchException):
    """
    Exception raised when edge angle classes are inconsistent with the class-angle energy model.
    """

    default_message = "Edge angle classes are inconsistent."
