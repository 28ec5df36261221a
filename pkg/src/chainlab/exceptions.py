class DomainError(ValueError):
    """A parameter lies outside the range where the quantity is defined."""


class ContractError(RuntimeError):
    """A documented precondition of an algorithm was violated by the caller."""


class FamilyFormatError(ValueError):
    """Malformed family text. ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
