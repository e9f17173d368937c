"""Quantum vertex algebra layer: X, Y, products, commutators and identities."""
from .core import QVA, TruncationSpec, as_velem
from .fields import Field, FieldDistribution, Fields, RouteMismatch
from .identities import Check, Identities
from .series import VSeries

__all__ = [
    "Check",
    "Field",
    "FieldDistribution",
    "Fields",
    "Identities",
    "QVA",
    "RouteMismatch",
    "TruncationSpec",
    "VSeries",
    "as_velem",
]
