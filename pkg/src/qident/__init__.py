"""Exact-arithmetic workbench for q-series identities, Bailey-pair chains,
and the particle-motion insertion bijection."""

from .errors import QidentError
from .qfunctions import SignedMonomial
from .series import INF, QSeries, monomial, one, zero

__all__ = [
    "INF", "QSeries", "QidentError", "SignedMonomial", "monomial", "one",
    "zero",
]

__version__ = "0.1.0"
