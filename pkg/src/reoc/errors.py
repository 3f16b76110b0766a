"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class ReocError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatch(ReocError):
    """Two automata built over different data domains were combined."""


class UnknownPort(ReocError):
    """An operation referenced a port the automaton does not have."""


class PortMismatch(ReocError):
    """Behavioral comparison of automata with different port sets."""


class ConnectorSyntaxError(ReocError):
    """Connector source text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ReocError):
    """Structurally well-formed source describing an invalid connector."""


class InvalidSize(ReocError):
    """Family generator called with an out-of-range size."""


class TransitionBudgetExceeded(ReocError):
    """Internal signal: an automaton construction crossed the budget.

    Raised inside low-level operators; the compile pipeline catches it
    and re-raises BudgetExceeded with the fold-step log attached.
    """

    def __init__(self, size: int, budget: int):
        super().__init__(f"transition count {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class BudgetExceeded(ReocError):
    """Compilation crossed the transition budget (deterministic timeout)."""

    def __init__(self, unit: str, step: int, size: int, budget: int, fold_log):
        super().__init__(
            f"unit {unit!r}, fold step {step}: {size} transitions exceeds "
            f"budget {budget}"
        )
        self.unit = unit
        self.step = step
        self.size = size
        self.budget = budget
        self.fold_log = fold_log


class InvalidConnector(ReocError):
    """A pipeline operation received a connector it cannot handle."""
