"""Exception hierarchy shared by the whole tool.

Every error that can surface at the CLI or the HTTP API carries a stable
``code`` string so clients can dispatch on it without parsing messages.
"""


class EqProofError(Exception):
    """Base class for all tool errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class TermSyntaxError(EqProofError):
    """Concrete-syntax parse failure, with position and expectations."""

    code = "syntax"

    def __init__(self, message: str, line: int, column: int, expected=()):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = tuple(expected)

    def __str__(self):
        loc = f"line {self.line}, column {self.column}"
        if self.expected:
            return f"{self.message} at {loc} (expected {', '.join(self.expected)})"
        return f"{self.message} at {loc}"


class IncompleteBinding(EqProofError):
    code = "incomplete-binding"


class TermTypeError(EqProofError):
    """Type inference failure; ``path`` locates the conflicting subterm."""

    code = "type"

    def __init__(self, message: str, path=()):
        super().__init__(message)
        self.path = tuple(path)


class UnifyFail(TermTypeError):
    code = "unify-fail"


class OccursCheck(TermTypeError):
    code = "occurs-check"


class FocusError(EqProofError):
    code = "focus"


class NoSuchChild(FocusError):
    code = "no-such-child"


class AtRoot(FocusError):
    code = "at-root"


class NoSibling(FocusError):
    code = "no-sibling"


class UnknownTheory(EqProofError):
    code = "unknown-theory"


class DuplicateName(EqProofError):
    code = "duplicate-name"


class UnknownRow(EqProofError):
    code = "unknown-row"


class FormatError(EqProofError):
    code = "format"


class SideConditionViolated(EqProofError):
    code = "side-condition"


class UnknownConjecture(EqProofError):
    code = "unknown-conjecture"


class StrategyInapplicable(EqProofError):
    code = "strategy-inapplicable"


class ProofAlreadyComplete(EqProofError):
    code = "proof-complete"


class NothingToUndo(EqProofError):
    code = "nothing-to-undo"


class NotComplete(EqProofError):
    code = "not-complete"


class ReplayError(EqProofError):
    """A scripted proof step failed; ``step`` is the 1-based step index."""

    code = "replay"

    def __init__(self, step: int, message: str):
        super().__init__(message)
        self.step = step

    def __str__(self):
        return f"step {self.step}: {self.message}"
