"""Exception hierarchy shared by all modules.

Exit-code mapping used by the command line driver:
  InputError (incl. ParseError)  -> 1
  ComputationLimitError          -> 2
  HypothesisFailureError         -> 3
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed input: unknown variables, shape mismatches, bad germ data."""


class ParseError(InputError):
    """Syntax error in a problem file, with 1-based line/column position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None and column is not None:
            super().__init__(f"line {line}, column {column}: {message}")
        elif line is not None:
            super().__init__(f"line {line}: {message}")
        else:
            super().__init__(message)


class ComputationLimitError(RuntimeError):
    """A step or time budget was exhausted before the computation finished.

    ``diagnostics`` carries partial-state information (steps done, basis size,
    pending work) for the report layer.  A budget overrun is never silently
    interpreted as a mathematical answer.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class HypothesisFailureError(RuntimeError):
    """A mathematical hypothesis of the requested computation does not hold,
    e.g. the germ is not an isolated singularity where one is required."""


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree.

    This is a bug trap: it is raised for engine defects, never for bad input.
    """
