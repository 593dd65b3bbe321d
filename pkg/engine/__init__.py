"""
Numerical kernel for the Geometric Algebra Qubit Engine
"""

from . import ga3, spinor1, msta2, schmidt, oracle
from .exceptions import ConvergenceError, DomainError, EngineError, ParseError, UsageError

__all__ = [
    'ga3', 'spinor1', 'msta2', 'schmidt', 'oracle',
    'EngineError', 'UsageError', 'ParseError', 'DomainError', 'ConvergenceError',
]
