"""Partition refinement for systems of composite transition types."""

from ._partref import (
    Error,
    OverflowError,
    ParseError,
    UsageError,
    check,
    cross_check,
    generate,
    minimize,
    minimize_with_stats,
    oracle,
    quotient,
)

__all__ = [
    "Error",
    "OverflowError",
    "ParseError",
    "UsageError",
    "check",
    "cross_check",
    "generate",
    "minimize",
    "minimize_with_stats",
    "oracle",
    "quotient",
]
