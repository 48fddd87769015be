"""Exception hierarchy shared by every module of the package."""


class IaError(Exception):
    """Base class for all errors raised by iarefine."""


class InvalidAutomaton(IaError, ValueError):
    """An automaton violates one or more well-formedness rules.

    ``problems`` holds one message per violated invariant, so callers can
    report everything at once instead of fixing errors one by one.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class AlphabetOverlap(InvalidAutomaton):
    pass


class DanglingState(InvalidAutomaton):
    pass


class UndeclaredLabel(InvalidAutomaton):
    pass


class ForeignLabel(IaError, ValueError):
    """A trace mentions a label outside the automaton's alphabet."""


class AlphabetMismatch(IaError, ValueError):
    """Two automata compared by a relation do not share I and O."""


class DeltaNameClash(IaError, ValueError):
    """The quiescence label is already part of the alphabet."""


class NotInputEnabled(IaError, ValueError):
    """ioco needs an input-enabled implementation."""


class BudgetExceeded(IaError, RuntimeError):
    """A bounded search ran out of its node or profile budget."""


class FormatError(IaError, ValueError):
    """Malformed ``.ia`` text. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class MissingInitial(FormatError):
    pass


class DuplicateInitial(FormatError):
    pass


class InternalError(IaError, AssertionError):
    """Two independent decision routes disagreed. Always a bug."""
