class WidcError(Exception):
    """Root semua error WIDC."""


class DimensionError(WidcError, ValueError):
    """Panjang observasi / vektor tidak cocok dengan n atau c."""


class PreconditionError(WidcError, ValueError):
    """Argumen melanggar prasyarat operasi."""


class GuardError(WidcError, ValueError):
    """Instance terlalu besar untuk oracle brute force."""


class DataError(WidcError, ValueError):
    """File data / schema / label tidak valid."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"baris {line}: {message}"
        super().__init__(message)


class InternalConsistencyError(WidcError):
    """State internal tidak konsisten (mis. tally negatif)."""
