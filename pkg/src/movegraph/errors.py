"""Exception hierarchy shared by every module."""


class MoveGraphError(Exception):
    pass


class DomainError(MoveGraphError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ContractError(MoveGraphError, ValueError):
    """Mismatched dimensions or moduli, or a violated precondition."""


class CapacityError(MoveGraphError):
    """Requested object would exceed the configured size budget."""


class InvariantError(MoveGraphError, RuntimeError):
    """An internal consistency check failed. Never expected to fire."""
