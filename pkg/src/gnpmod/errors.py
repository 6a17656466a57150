"""Exceptions shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class CapExceeded(ValidationError):
    """An exact/exhaustive routine was asked to run beyond its size cap."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}={value} exceeds cap {cap}")
