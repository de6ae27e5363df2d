"""Exact cochain-level phases of excitation-moving processes on simplices."""

from .simplicial import (
    Chain,
    Cochain,
    Phase,
    StandardComplex,
    boundary,
    coboundary,
    dualize,
    evaluate,
    integrate,
)

__all__ = [
    "Chain",
    "Cochain",
    "Phase",
    "StandardComplex",
    "boundary",
    "coboundary",
    "dualize",
    "evaluate",
    "integrate",
]

__version__ = "0.1.0"
