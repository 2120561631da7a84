class McwaveError(Exception):
    """Represents the base class for all errors raised by this package."""
    pass

class ArgumentError(McwaveError, ValueError):
    """Represents an invalid scalar argument, such as a probability outside of [0, 1]."""
    pass

class DimensionError(McwaveError, ValueError):
    """Represents a length or shape mismatch between vectors, matrices and frame geometries."""
    pass

class DegenerateFitError(McwaveError, ArithmeticError):
    """Represents an auxiliary channel fit against a reference vector without energy."""
    pass

class ConfigError(McwaveError):
    """
    Represents an invalid run configuration.

    The message always names the offending configuration key.
    """
    key: str | None

    def __init__(self, message: str, key: str = None) -> None:
        """
        Initializes an instance using the provided message and configuration key.

        Parameters
        ----------
        message : str
            A human readable description of the problem.
        key : str, optional
            The dotted configuration key the problem relates to.
        """
        super().__init__(f'{key}: {message}' if key else message)

        self.key = key

class EmissionError(McwaveError, OSError):
    """Represents a failure to write or read a result or fixture file."""
    pass
