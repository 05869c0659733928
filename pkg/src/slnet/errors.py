"""Exception hierarchy shared by all modules."""


class NetworkError(Exception):
    """Base class for all errors raised by slnet."""


class InvalidNetwork(NetworkError):
    pass


class ParseError(NetworkError):
    pass


class NotPendant(NetworkError):
    pass


class UnrecognizedShape(NetworkError):
    pass


class TaxaMismatch(NetworkError):
    pass


class IsTree(NetworkError):
    pass


class LevelTooHigh(NetworkError):
    pass


class TooLarge(NetworkError):
    pass


class NotACherry(NetworkError):
    pass


class TaxonCollision(NetworkError):
    pass


class CherriesPresent(NetworkError):
    pass


class EmptySide(NetworkError):
    pass


class TooLargeForExhaustive(NetworkError):
    pass


class NoNontrivialSplit(NetworkError):
    pass


class NoConsistentForm(NetworkError):
    pass


class UnknownLeaf(NetworkError):
    pass


class NotGenSideCovered(NetworkError):
    pass


class BranchBudgetExceeded(NetworkError):
    pass


class InvalidColoring(NetworkError):
    pass


class InvalidEmbedding(NetworkError):
    pass


class InfeasibleParams(NetworkError):
    pass
