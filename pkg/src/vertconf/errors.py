"""Exception hierarchy.

Every rejection raised by the library derives from :class:`VertconfError`, so
callers (and the CLI) can catch one type and still read a structured message.
"""


class VertconfError(ValueError):
    """Base class for all validation and guard failures."""


# ray partitions
class NotAPartition(VertconfError):
    pass


class R1Violation(VertconfError):
    pass


class R2Violation(VertconfError):
    pass


class IndexOutOfShape(VertconfError):
    pass


class TotalMismatch(VertconfError):
    pass


# enumeration
class ComponentMeaningless(VertconfError):
    pass


class SizeGuard(VertconfError):
    pass


# geometry
class VerticalityViolation(VertconfError):
    pass


class CollisionError(VertconfError):
    pass


class DimensionMismatch(VertconfError):
    pass


class ShapeMismatch(VertconfError):
    pass


class UnsupportedQ(VertconfError):
    pass


# cluster partitions
class WrongParameterCount(VertconfError):
    pass


class DiscViolation(VertconfError):
    pass


class ReduciblePartitionError(VertconfError):
    pass


class SupportMismatch(VertconfError):
    pass
