"""Asymmetric quantum codes from nested Xing-Ling evaluation codes."""

from __future__ import annotations

from .codes import DistanceResult, EnumBudget, LinearCode, dual, is_pure, is_subcode, min_distance, relative_weight
from .css import AqcRecord, BoundStatus, BqTable, aqc_for_spec, certify, derive_aqc, generate_table
from .gf import SUPPORTED_Q, canonical_points, make_field
from .xl import XlSpec, build_family, build_xl, designed_delta

__version__ = "0.1.0"

__all__ = [
    "AqcRecord",
    "BoundStatus",
    "BqTable",
    "DistanceResult",
    "EnumBudget",
    "LinearCode",
    "SUPPORTED_Q",
    "XlSpec",
    "aqc_for_spec",
    "build_family",
    "build_xl",
    "canonical_points",
    "certify",
    "derive_aqc",
    "designed_delta",
    "dual",
    "generate_table",
    "is_pure",
    "is_subcode",
    "make_field",
    "min_distance",
    "relative_weight",
]
