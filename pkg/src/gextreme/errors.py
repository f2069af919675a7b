"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(ValueError):
    """The result of an operation would be infinite or unrepresentable."""


class ContractError(ValueError):
    """A caller violated a documented precondition (e.g. a non-canonical set)."""
