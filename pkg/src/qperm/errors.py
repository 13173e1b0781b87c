class DimensionError(ValueError):
    """Raised when array shapes do not fit together."""


class StructuralError(ValueError):
    """Raised when an input is malformed or a precondition fails.

    Distinct from a failed relation check, which is reported through a
    :class:`~qperm.report.CheckReport` instead.
    """
