class ApsBenchException(Exception):
    """
    Base class of all domain exceptions raised by the library.

    Attributes:
        message (str): The error message to be displayed.
    """

    default_message = "Benchmark error."

    def __init__(self, message: str = None):
        """
        Initializes the exception with an optional message.

        Args:
            message (str, optional): Custom error message. Defaults to the class default message.
        """
        if message is None:
            message = self.default_message
        self.message = message
        super().__init__(self.message)
