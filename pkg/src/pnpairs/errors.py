"""Shared exception types."""


class PnpairsError(Exception):
    """Base class for all package errors."""


class IncompleteFactorization(PnpairsError):
    """An exact value was requested from a factorization with an unfactored cofactor."""


class NotPrime(PnpairsError):
    pass


class DegreeZero(PnpairsError):
    pass


class DivisionByZero(PnpairsError):
    pass


class IndexOutOfRange(PnpairsError):
    pass


class TowerTooLarge(PnpairsError):
    """Enumeration feature requested on a tower above its size cap."""


class NotCoprime(PnpairsError):
    pass


class NotDividing(PnpairsError):
    pass


class HypothesisViolated(PnpairsError):
    """A character-sum bound was requested for a function excluded by the bound's hypotheses."""


class InvalidSubset(PnpairsError):
    pass


class NotReduced(PnpairsError):
    pass


class PreconditionViolated(PnpairsError):
    pass
