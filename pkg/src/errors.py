"""
Exception hierarchy shared by every sticklab module.

Each class carries the process exit code that ``run.py`` reports for it.
"""
from typing import Optional


class SticklabError(Exception):
    """Base class for all sticklab failures."""

    exit_code: int = 1


class ValidationError(SticklabError, ValueError):
    """Bad user input: flags, polynomial literals, cover files, preconditions."""

    exit_code = 1


class TheoremViolation(SticklabError, ArithmeticError):
    """
    A statement that must hold exactly did not hold.

    Attributes
    ----------
        case (str): the theorem case whose hypothesis or conclusion failed,
            e.g. ``"type-2 division by (1-g) inexact"``.
    """

    exit_code = 2

    def __init__(self, message: str, case: Optional[str] = None):
        super().__init__(message)
        self.case = case or "unspecified"

    def __str__(self) -> str:
        return f"[{self.case}] {super().__str__()}"


class GuardrailError(SticklabError):
    """A desk-scale bound was exceeded."""

    exit_code = 3


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, SticklabError):
        return exc.exit_code
    return 1
