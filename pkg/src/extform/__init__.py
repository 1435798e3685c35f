"""Exact polyhedral tools for comparing extended formulations."""
from .core import AffineMapSpec, HPoly, VarSpace, VPoly
from .ef import (AugmentationSpec, AugmentationStatus, EFVerdict, NotAnAugmentationError,
                 RelationClass, RelationTag, augmentation_status, check_augmentation, check_ef,
                 classify_relationship, construct_mutual_augmentation, independent_spaces,
                 overlap_augmentation_invariance)
from .lp import LinProgram, LpOutcome, Status, check_farkas, maximize, solve
from .polyhedron import (UnboundedError, contains, enumerate_vertices, generators, hull,
                         is_bounded, poly_equal)
from .projection import (Kind, ProjectionResult, project, project_degenerate_case,
                         pushforward_objective)
from .redundancy import (column_redundant, redundancy_report, remove_row_redundancy,
                         row_redundant)

__all__ = [
    "AffineMapSpec", "HPoly", "VarSpace", "VPoly",
    "AugmentationSpec", "AugmentationStatus", "EFVerdict", "NotAnAugmentationError",
    "RelationClass", "RelationTag", "augmentation_status", "check_augmentation", "check_ef",
    "classify_relationship", "construct_mutual_augmentation", "independent_spaces",
    "overlap_augmentation_invariance",
    "LinProgram", "LpOutcome", "Status", "check_farkas", "maximize", "solve",
    "UnboundedError", "contains", "enumerate_vertices", "generators", "hull", "is_bounded",
    "poly_equal",
    "Kind", "ProjectionResult", "project", "project_degenerate_case", "pushforward_objective",
    "column_redundant", "redundancy_report", "remove_row_redundancy", "row_redundant",
]
