"""Exact tooling for Z2-graded structures on truncated Grassmann algebras."""

from .exterior import (
    Element,
    Monomial,
    TruncationMismatch,
    commutator,
    generator,
    left_normed,
    mono_mul,
    monomials_up_to,
    parity_split,
    support,
    unit,
    word,
    zero,
)

__all__ = [
    "Element",
    "Monomial",
    "TruncationMismatch",
    "commutator",
    "generator",
    "left_normed",
    "mono_mul",
    "monomials_up_to",
    "parity_split",
    "support",
    "unit",
    "word",
    "zero",
]

__version__ = "0.1.0"
