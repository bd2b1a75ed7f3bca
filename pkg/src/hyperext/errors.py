"""Exception types shared across the library."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(AlgebraError):
    """Operands belong to different rings or free modules of different shape."""


class HomogeneityError(AlgebraError):
    """An entry or element fails the required graded-degree constraint."""


class DegreeCapExceeded(AlgebraError):
    """A completion would need S-pairs above the configured degree cap.

    Raised loudly instead of silently truncating: a basis cut off below the
    cap is not a Groebner basis and every downstream answer would be wrong.
    """


class HypothesisViolation(AlgebraError):
    """Input data fails a finiteness or applicability hypothesis of an invariant."""


class InvalidComplexError(AlgebraError):
    """Consecutive maps fed to a homology computation do not compose to zero."""


class ShapingError(AlgebraError):
    """Random module generation exhausted its resample budget for a target shape."""


class EngineBug(AlgebraError):
    """An internal consistency check failed; indicates a defect, not bad input."""


class ParseError(AlgebraError):
    """Input-script syntax or binding error, with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
