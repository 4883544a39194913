"""Spherical and planar antenna array beam focusing simulator."""

from __future__ import annotations

from .beamforming import (
    DB_FLOOR,
    BeamWeights,
    beam_response,
    conjugate_weights,
    normalize_pattern,
    to_db,
)
from .channel import ChannelVector, channel_energy, element_visible, los_channel
from .errors import (
    AllBeamsInfeasible,
    DegenerateGeometry,
    DegeneratePattern,
    DimensionMismatch,
    InvalidCount,
    InvalidRadius,
    InvalidRotation,
    InvalidSpacing,
    InvalidWavelength,
    NoVisibleElements,
    NotSquare,
    ParseError,
    SpherebeamError,
    TargetInsideArray,
    ValidationError,
)
from .geometry import (
    GOLDEN_ANGLE,
    ArrayGeometry,
    ArrayKind,
    Element,
    SphericalPoint,
    golden_spiral_saa,
    polyhedral_saa,
    ring_saa,
    rotate,
    rotate_point,
    spiral_curve_saa,
    upa,
)
from .metrics import (
    BeamMetrics,
    FocusMetrics,
    IsotropyReport,
    angular_metrics,
    focus_metrics,
    great_circle_angle,
    isotropy_report,
)
from .scenario import (
    Scenario,
    build_geometry,
    emit_scenario,
    geometry_from_fields,
    load_preset,
    parse_focal_text,
    parse_scenario,
    preset_names,
    run_scenario,
)
from .sweep import (
    AngularPatternGrid,
    AngularSweepSpec,
    DistancePattern,
    angular_sweep,
    distance_sweep,
    multi_focal_overlay,
)

__version__ = "0.1.0"

__all__ = [
    "DB_FLOOR",
    "GOLDEN_ANGLE",
    "AllBeamsInfeasible",
    "AngularPatternGrid",
    "AngularSweepSpec",
    "ArrayGeometry",
    "ArrayKind",
    "BeamMetrics",
    "BeamWeights",
    "ChannelVector",
    "DegenerateGeometry",
    "DegeneratePattern",
    "DimensionMismatch",
    "DistancePattern",
    "Element",
    "FocusMetrics",
    "InvalidCount",
    "InvalidRadius",
    "InvalidRotation",
    "InvalidSpacing",
    "InvalidWavelength",
    "IsotropyReport",
    "NoVisibleElements",
    "NotSquare",
    "ParseError",
    "Scenario",
    "SpherebeamError",
    "SphericalPoint",
    "TargetInsideArray",
    "ValidationError",
    "angular_metrics",
    "angular_sweep",
    "beam_response",
    "build_geometry",
    "channel_energy",
    "conjugate_weights",
    "distance_sweep",
    "element_visible",
    "emit_scenario",
    "focus_metrics",
    "geometry_from_fields",
    "golden_spiral_saa",
    "great_circle_angle",
    "isotropy_report",
    "load_preset",
    "los_channel",
    "multi_focal_overlay",
    "normalize_pattern",
    "parse_focal_text",
    "parse_scenario",
    "polyhedral_saa",
    "preset_names",
    "ring_saa",
    "rotate",
    "rotate_point",
    "run_scenario",
    "spiral_curve_saa",
    "to_db",
    "upa",
    "__version__",
]
