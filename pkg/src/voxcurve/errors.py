"""Exception hierarchy for voxcurve."""


class VoxcurveError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(VoxcurveError, ValueError):
    """Invalid curve, grid, distance or trace configuration."""


class ParameterOutOfRange(VoxcurveError, ValueError):
    pass


class NoAnalyticTangent(VoxcurveError):
    pass


class OnAxis(VoxcurveError, ValueError):
    """The query point lies on the cylinder axis, so its angle is undefined."""


class ProjectionUnavailable(VoxcurveError):
    pass


class OutOfVolume(VoxcurveError, ValueError):
    pass


class StartOutOfVolume(OutOfVolume):
    pass


class EndOutOfVolume(OutOfVolume):
    pass


class DegenerateTangent(VoxcurveError):
    """No admissible candidate voxel survives (zero tangent or blocked by the grid)."""


class EmptyWindow(VoxcurveError):
    pass


class EmptySequence(VoxcurveError, ValueError):
    pass


class VoxelizationDiverged(VoxcurveError):
    """The trace exhausted its step budget or started revisiting voxels."""
