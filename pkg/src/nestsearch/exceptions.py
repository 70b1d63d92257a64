class InvalidParameterError(ValueError):
    """Raised when an argument or configuration value is out of its valid range."""


class NotFoundError(KeyError):
    """Raised when a named benchmark function or algorithm is not registered."""

    def __str__(self):
        # KeyError quotes its argument; keep the message readable.
        return str(self.args[0]) if self.args else ""
