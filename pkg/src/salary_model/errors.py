class ValidationError(ValueError):
    """An input value is outside its admissible domain."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DomainError(ValueError):
    """A numerical operation was asked for something it cannot compute."""


class CalibrationError(ValueError):
    """Anchors cannot determine the requested parameters."""

    def __init__(self, message: str, free_parameters=()):
        self.free_parameters = tuple(free_parameters)
        super().__init__(message)
