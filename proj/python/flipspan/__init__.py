"""Flip distances of plane spanning trees on convex point sets."""

from ._flipspan import (
    BudgetExceeded,
    InvariantViolation,
    all_trees,
    compatible_sequence,
    contract,
    count_trees,
    diameter_radius,
    distance,
    fpt,
    rotation_sequence,
    validate_tree,
    verify_strong_happy,
)

__all__ = [
    "BudgetExceeded",
    "InvariantViolation",
    "all_trees",
    "compatible_sequence",
    "contract",
    "count_trees",
    "diameter_radius",
    "distance",
    "fpt",
    "rotation_sequence",
    "validate_tree",
    "verify_strong_happy",
]
