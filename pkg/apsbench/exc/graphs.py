from apsbench.exc.base import ApsBenchException


class InvalidGraphException(ApsBenchException):
    """
    Exception raised when a graph violates a structural invariant (self-loop, duplicate pair, bad weight).
    """

    default_message = "Invalid graph."


class VertexOutOfRangeException(ApsBenchException):
    """
    Exception raised when a vertex index is outside 0..n-1.

    Attributes:
        vertex (int): The offending vertex index.
        message (str): The error message to be displayed.
    """

    def __init__(self, vertex: int, n: int, message: str = None):
        """
        Initializes the exception with the offending vertex and the graph order.

        Args:
            vertex (int): The offending vertex index.
            n (int): The order of the graph.
            message (str, optional): Custom error message. Defaults to "Vertex {vertex} is outside 0..{n-1}.".
        """
        self.vertex = vertex
        if message is None:
            message = f"Vertex {vertex} is outside 0..{n - 1}."
        super().__init__(message)


class EdgeNotFoundException(ApsBenchException):
    """
    Exception raised when an edge id or vertex pair does not name an edge of the graph.

    Attributes:
        edge (object): The edge id or pair that was looked up.
        message (str): The error message to be displayed.
    """

    def __init__(self, edge: object, message: str = None):
        """
        Initializes the exception with the edge that was not found.

        Args:
            edge (object): The edge id or vertex pair.
            message (str, optional): Custom error message. Defaults to "Edge {edge} was not found.".
        """
        self.edge = edge
        if message is None:
            message = f"Edge {edge} was not found."
        super().__init__(message)


class MultigraphNotSupportedException(ApsBenchException):
    """
    Exception raised when an operation defined on simple graphs meets a multi-edge.
    """

    default_message = "Simple graph required."

    def __init__(self, edge: object = None, message: str = None):
        """
        Initializes the exception with the offending edge and an optional message.

        Args:
            edge (object, optional): The edge id or pair where the multi-edge was met.
            message (str, optional): Custom error message. Defaults to a message naming the edge.
        """
        if message is None and edge is not None:
            message = f"Operation requires a simple graph around edge {edge}."
        super().__init__(message)


class GraphFormatException(ApsBenchException):
    """
    Exception raised when a graph file cannot be parsed.

    Attributes:
        source (str): The file or line that failed to parse.
        message (str): The error message to be displayed.
    """

    def __init__(self, source: str, message: str = None):
        """
        Initializes the exception with the failing source.

        Args:
            source (str): The file name or line content.
            message (str, optional): Custom error message. Defaults to "Malformed graph input: {source}.".
        """
        self.source = source
        if message is None:
            message = f"Malformed graph input: {source}."
        super().__init__(message)
