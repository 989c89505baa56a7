class PrecisionError(ValueError):
    """Raised when a truncation (q-precision or determinant cap) is too small.

    ``required`` carries the computed requirement when it is known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class VerificationError(ValueError):
    """A certificate or consistency check failed."""


class TableGap(KeyError):
    """A dimension-table lookup outside the ingested entries."""
