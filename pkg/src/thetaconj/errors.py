"""Exception hierarchy shared by every module.

Class names double as the diagnostic token printed by the CLI, so they are
kept exactly as listed in the module contracts (no ``Error`` suffix).
"""


class ThetaConjError(Exception):
    """Base class for all domain errors raised by the toolkit."""


class NonInvolutive(ThetaConjError):
    pass


class UnknownLetter(ThetaConjError):
    pass


class ConflictingPair(ThetaConjError):
    pass


class AlphabetMismatch(ThetaConjError):
    pass


class EmptyWord(ThetaConjError):
    pass


class SizeGuardExceeded(ThetaConjError):
    pass


class StateBudgetExceeded(ThetaConjError):
    pass


class FrontierBudgetExceeded(ThetaConjError):
    pass


class NonterminalClash(ThetaConjError):
    pass


class MarkerClash(ThetaConjError):
    pass


class ParseError(ThetaConjError):
    pass
