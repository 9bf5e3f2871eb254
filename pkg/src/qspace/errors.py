"""Exception hierarchy shared by every module."""


class QSpaceError(Exception):
    """Base class for all errors raised by qspace."""


class FieldError(QSpaceError, ValueError):
    """Bad field descriptor, field mismatch, or an impossible field operation."""


class ParseError(QSpaceError, ValueError):
    pass


class ValidationError(QSpaceError, ValueError):
    """A parameter matrix violates q_ii = 1 or q_ij * q_ji = 1.

    ``position`` holds the offending 1-based ``(i, j)`` when there is one.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class SchemaError(QSpaceError, ValueError):
    pass


class CapExceededError(QSpaceError):
    """A search or enumeration would exceed its configured resource cap."""


class NotInvertibleError(QSpaceError, ValueError):
    pass


class PreconditionError(QSpaceError, ValueError):
    pass


class GroupError(QSpaceError):
    """An explicit element list is not a group, or a subgroup is not normal."""
