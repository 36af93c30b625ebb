"""Polygonal approximation of closed digital curves.

Builds minimum-error polygons on integer-lattice rings, scores
heuristic approximations against the optimal baseline, and compares
relative quality measures across a corpus.
"""

from .approx_error import (
    MomentTables,
    PolygonApprox,
    SegmentErrors,
    arc_sum_sq,
    compression_ratio,
    moment_tables,
    perpendicular_distance,
    polygon_errors,
    polygon_errors_points,
    segment_errors,
)
from .curve import (
    CurveGeometry,
    DigitalCurve,
    InertiaLine,
    centroid,
    chain_code_of,
    curve_geometry,
    inertia_line,
    load_curve,
    parse_chain_code,
    parse_point_list,
    point_set_geometry,
)
from .exceptions import (
    AllZero,
    ConstantSeries,
    DegenerateSegment,
    DuplicateConsecutive,
    InvalidCounts,
    InvalidDigit,
    InvalidGeometry,
    LengthMismatch,
    MalformedLine,
    NotClosed,
    OutOfRange,
    PolyApproxError,
    TooFewPoints,
    ZeroError,
)
from .measures import (
    MeasureRecord,
    RosinBreakdown,
    build_record,
    fg_measure,
    figure_of_merit,
    record_for_polygon,
    rosin_merit,
    rosin_merit_emax,
    theorem_identity_check,
    weighted_foms,
)
from .optimal import (
    CostKind,
    ErrorProfile,
    OptimalBaseline,
    SegmentCosts,
    baseline_from_profile,
    interpolate_m_optimal,
    optimal_baseline,
    optimal_polygon,
    optimal_profile,
    provisional_start_vertex,
    select_start_vertex,
)
from .schemes import (
    SchemeId,
    apply_scheme,
    auto_target_m,
    eliminate_stabilized_to_m,
    eliminate_to_m,
    split_to_m,
    stabilize,
)
from .study import (
    MeasureSeries,
    StudyReport,
    direction_agreement,
    emit_svg_line_diagram,
    pearson,
    run_study,
    scale_for_plot,
    study_series,
)

__version__ = "0.1.0"

__all__ = [
    "AllZero",
    "ConstantSeries",
    "CostKind",
    "CurveGeometry",
    "DegenerateSegment",
    "DigitalCurve",
    "DuplicateConsecutive",
    "ErrorProfile",
    "InertiaLine",
    "InvalidCounts",
    "InvalidDigit",
    "InvalidGeometry",
    "LengthMismatch",
    "MalformedLine",
    "MeasureRecord",
    "MeasureSeries",
    "MomentTables",
    "NotClosed",
    "OptimalBaseline",
    "OutOfRange",
    "PolyApproxError",
    "PolygonApprox",
    "RosinBreakdown",
    "SchemeId",
    "SegmentCosts",
    "SegmentErrors",
    "StudyReport",
    "TooFewPoints",
    "ZeroError",
    "apply_scheme",
    "arc_sum_sq",
    "auto_target_m",
    "baseline_from_profile",
    "build_record",
    "centroid",
    "chain_code_of",
    "compression_ratio",
    "curve_geometry",
    "direction_agreement",
    "eliminate_stabilized_to_m",
    "eliminate_to_m",
    "emit_svg_line_diagram",
    "fg_measure",
    "figure_of_merit",
    "inertia_line",
    "interpolate_m_optimal",
    "load_curve",
    "moment_tables",
    "optimal_baseline",
    "optimal_polygon",
    "optimal_profile",
    "parse_chain_code",
    "parse_point_list",
    "pearson",
    "perpendicular_distance",
    "point_set_geometry",
    "polygon_errors",
    "polygon_errors_points",
    "provisional_start_vertex",
    "record_for_polygon",
    "rosin_merit",
    "rosin_merit_emax",
    "run_study",
    "scale_for_plot",
    "segment_errors",
    "select_start_vertex",
    "split_to_m",
    "stabilize",
    "study_series",
    "theorem_identity_check",
    "weighted_foms",
]
