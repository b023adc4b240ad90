"""Exception hierarchy shared by every module."""


class EsketchError(Exception):
    pass


class InvalidData(EsketchError):
    """A table or document does not describe the structure it claims to."""


class BoundaryMismatch(EsketchError):
    pass


class NonComposableCells(EsketchError):
    pass


class ShapeMismatch(EsketchError):
    pass


class SearchBudgetExceeded(EsketchError):
    def __init__(self, budget, what="search"):
        super().__init__(f"{what} exceeded budget of {budget} candidates")
        self.budget = budget


class UnknownGenerator(EsketchError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


class UnknownBuiltin(EsketchError):
    pass


class KindNotInCatalogue(EsketchError):
    pass


class NoUniqueCleavage(EsketchError):
    pass


class NotAPowerTheory(EsketchError):
    pass


class TargetLacksPowers(EsketchError):
    pass


class EskSyntaxError(EsketchError):
    def __init__(self, line, col, expected, found=""):
        self.line = line
        self.col = col
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected)) or "nothing"
        super().__init__(f"{line}:{col}: expected one of {{{exp}}}, found {found!r}")


class ElaborationError(EsketchError):
    def __init__(self, name, message, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{message}")
