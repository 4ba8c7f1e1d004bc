"""Exact computations with Coxeter groups, reflection factorizations and the Hurwitz action."""

from .scalar import Scalar, cos_from_label, parse_scalar
from .coxeter import (
    CoxeterMatrix,
    CoxeterSystem,
    Direction,
    Element,
    Root,
    build_system,
    coxeter_matrix,
)
from .errors import CapExceeded, CoxeterError, Indeterminate, UnsupportedSystem

__version__ = "0.1.0"
