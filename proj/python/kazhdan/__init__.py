"""Kazhdan-Lusztig data, Andersen filtration dimensions and Lefschetz audits
for finite Coxeter groups."""

from ._kazhdan import (
    CoxeterSystem,
    KazhdanError,
    KLEngine,
    monomial_count,
    __version__,
)

__all__ = ["CoxeterSystem", "KazhdanError", "KLEngine", "monomial_count", "__version__"]
