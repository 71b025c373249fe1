"""Exception types shared across the package."""


class AlphabetError(ValueError):
    """A letter does not belong to the alphabet in use."""


class WordSyntaxError(ValueError):
    """Malformed word or graph-file text."""


class DegeneratePairError(ValueError):
    """Two letters with the same name were used where distinct names are required."""


class UnsupportedPresentation(ValueError):
    """The graph does not satisfy the hypotheses an algorithm needs (large, even, ...)."""


class SearchBudgetExceeded(RuntimeError):
    """A bounded search hit its cap before reaching an answer."""


class SoundnessAlarm(AssertionError):
    """An internal consistency check failed; this indicates a bug, not a mathematical fact."""
