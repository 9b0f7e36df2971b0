"""Exact GIT chamber decompositions for torus actions on affine space.

Everything is computed over the rationals with exact arithmetic: cones and
their duals, fans and their Cox weight matrices, the chamber decomposition
of the ample character cone, the induced birational wall crossings, and a
chamber count bookkeeping check for configurations of points on a line.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .cones import (
    Cone,
    SplitCell,
    cone_from_generators,
    cone_from_inequalities,
    dual,
    full_space,
    intersect,
    minkowski_sum,
    positive_orthant,
    split_by_hyperplanes,
    zero_cone,
)
from .errors import (
    DegenerateLinearizationError,
    DimensionMismatchError,
    EmptySemistableLocusError,
    InvalidFanError,
    InvariantViolationError,
    MdsgitError,
    RankDeficientWeightsError,
)
from .mori import (
    BoundaryContraction,
    Factorization,
    MoriChamberData,
    MovingConeResult,
    WallCrossing,
    classify_boundary_facet,
    classify_wall,
    effective_cone,
    enumerate_sqms,
    factor_contraction,
    mori_chamber_data,
    moving_cone,
    nef_chamber,
    picard_number,
)
from .npoints import (
    LineChamber,
    LineConfig,
    LineWall,
    RhoReport,
    build_config,
    crossing_delta,
    exceptional_count,
    quotient_picard,
    rho_constant,
    verify_rho_formula,
)
from .toric import (
    Fan,
    FanValidation,
    QuotientData,
    UnstableReport,
    WeightSystem,
    canonicalize_fan,
    cox_weights,
    g_ample_cone,
    gale_dual,
    is_complete,
    make_fan,
    quotient_fan,
    quotient_fan_data,
    unstable_locus,
    validate_fan,
    wall_hyperplanes,
    weight_system,
)
from .vgit import (
    BoundaryFacet,
    Chamber,
    ChamberComplex,
    ChamberLocation,
    CoverReport,
    Wall,
    chamber_of,
    enumerate_chambers,
    verify_disjoint_cover,
)

__all__ = [
    "__version__",
    "BoundaryContraction",
    "BoundaryFacet",
    "Chamber",
    "ChamberComplex",
    "ChamberLocation",
    "Cone",
    "CoverReport",
    "DegenerateLinearizationError",
    "DimensionMismatchError",
    "EmptySemistableLocusError",
    "Factorization",
    "Fan",
    "FanValidation",
    "InvalidFanError",
    "InvariantViolationError",
    "LineChamber",
    "LineConfig",
    "LineWall",
    "MdsgitError",
    "MoriChamberData",
    "MovingConeResult",
    "QuotientData",
    "RankDeficientWeightsError",
    "RhoReport",
    "SplitCell",
    "UnstableReport",
    "Wall",
    "WallCrossing",
    "WeightSystem",
    "build_config",
    "canonicalize_fan",
    "chamber_of",
    "classify_boundary_facet",
    "classify_wall",
    "cone_from_generators",
    "cone_from_inequalities",
    "cox_weights",
    "crossing_delta",
    "dual",
    "effective_cone",
    "enumerate_chambers",
    "enumerate_sqms",
    "exceptional_count",
    "factor_contraction",
    "full_space",
    "g_ample_cone",
    "gale_dual",
    "intersect",
    "is_complete",
    "make_fan",
    "minkowski_sum",
    "mori_chamber_data",
    "moving_cone",
    "nef_chamber",
    "picard_number",
    "positive_orthant",
    "quotient_fan",
    "quotient_fan_data",
    "quotient_picard",
    "rho_constant",
    "split_by_hyperplanes",
    "unstable_locus",
    "validate_fan",
    "verify_disjoint_cover",
    "verify_rho_formula",
    "wall_hyperplanes",
    "weight_system",
    "zero_cone",
]
