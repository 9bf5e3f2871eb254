"""Graded automorphism groups of quantum affine spaces, computed exactly."""

from .errors import (
    CapExceededError,
    FieldError,
    GroupError,
    NotInvertibleError,
    ParseError,
    PreconditionError,
    QSpaceError,
    SchemaError,
    ValidationError,
)
from .matrix import FieldMatrix
from .membership import decompose_member, first_violation, is_member, skeleton_all, skeleton_any
from .oq_algebra import SkewPoly, relations_preserved
from .perm import Permutation, PermGroup, compatible_group, identify_small_group, invariant_subgroup
from .qmatrix import BlockPartition, QMatrix
from .report import AutReport, CensusResult, analyze, census, gamma
from .scalar import QQ, Field, Scalar

__all__ = [
    "AutReport",
    "BlockPartition",
    "CapExceededError",
    "CensusResult",
    "Field",
    "FieldError",
    "FieldMatrix",
    "GroupError",
    "NotInvertibleError",
    "ParseError",
    "PermGroup",
    "Permutation",
    "PreconditionError",
    "QMatrix",
    "QQ",
    "QSpaceError",
    "Scalar",
    "SchemaError",
    "SkewPoly",
    "ValidationError",
    "analyze",
    "census",
    "compatible_group",
    "decompose_member",
    "first_violation",
    "gamma",
    "identify_small_group",
    "invariant_subgroup",
    "is_member",
    "relations_preserved",
    "skeleton_all",
    "skeleton_any",
]
