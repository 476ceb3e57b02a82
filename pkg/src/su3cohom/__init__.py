"""Computational Lie theory for cohomogeneity-one actions of SU(3)."""

from .cartan import CircleSubgroup, CircleType, canonicalize, normalizer_components
from .classify import GluingCount, Reason, Tube, count_diffeo_classes, emit_tables
from .liealg import DEFAULT_TOL, Tolerances
from .reps import PrincipalStabilizer, principal_stabilizer

__all__ = [
    "CircleSubgroup",
    "CircleType",
    "DEFAULT_TOL",
    "GluingCount",
    "PrincipalStabilizer",
    "Reason",
    "Tolerances",
    "Tube",
    "canonicalize",
    "count_diffeo_classes",
    "emit_tables",
    "normalizer_components",
    "principal_stabilizer",
]
__version__ = "0.1.0"
