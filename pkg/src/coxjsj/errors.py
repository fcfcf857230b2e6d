"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class CoxeterInputError(ValueError):
    """Malformed diagram, unknown generator, or a violated input precondition."""


class DiagramSyntaxError(CoxeterInputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class ContractViolation(RuntimeError):
    """An operation was called outside its contract, or produced an impossible state."""


class OrbifoldVerificationError(ContractViolation):
    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant
        self.detail = detail


class OracleRefusal(ValueError):
    """Brute-force oracles refuse inputs beyond their size limit."""
