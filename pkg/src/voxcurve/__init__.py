"""Voxelization of parametric space curves into 26-connected voxel sequences."""
from voxcurve.advance import StepMatrix, build_step_matrix, candidates
from voxcurve.curve import (
    CylCurveParams,
    ParametricCurve,
    Tangent,
    cylinder_curve,
    eval_point,
    project_param_cyl,
    segment_curve,
    tangent_analytic,
    tangent_fd,
)
from voxcurve.distance import (
    DistanceConfig,
    DistanceResult,
    Variant,
    dist_v1,
    dist_v2,
    dist_v3,
    oracle_nearest,
)
from voxcurve.grid import Grid, VoxelIndex, is_neighbor, manhattan, point_to_voxel, voxel_center
from voxcurve.tracer import (
    TangentMode,
    TraceConfig,
    TraceResult,
    adjacency_audit,
    error_metrics,
    trace,
    verify_against_oracle,
)

__version__ = "0.1.0"
