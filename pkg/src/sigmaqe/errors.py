"""Exception types shared across the toolkit."""


class SigmaQEError(Exception):
    """Base class for all toolkit errors."""


class InsufficientPrecision(SigmaQEError):
    """Interval data ran out before a sign could be resolved."""


class InvalidSpecies(SigmaQEError):
    pass


class NoSeparator(SigmaQEError):
    pass


class Unresolvable(SigmaQEError):
    """The available interval data cannot distinguish two species."""


class FormulaSyntaxError(SigmaQEError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class VocabularyError(SigmaQEError):
    pass


class QuantifierPresent(SigmaQEError):
    pass


class NotQuantifierFree(SigmaQEError):
    pass


class NotConjunctive(SigmaQEError):
    pass


class FreeVariables(SigmaQEError):
    pass


class UnsupportedVocabulary(SigmaQEError):
    pass


class InvalidPattern(SigmaQEError):
    pass


class IndexOutOfRange(SigmaQEError):
    pass


class NotReduced(SigmaQEError):
    pass


class NotModelComplete(SigmaQEError):
    pass


class AmbiguousTail(SigmaQEError):
    """The operator sign never stabilizes along the tail; cannot happen for
    a model-complete sum and indicates an internal error."""


class InvalidRho(SigmaQEError):
    pass


class UnsplittableAtom(SigmaQEError):
    pass
