"""Geometry of quantum evolution.

Distances and geodesics between state rays, the speed of Schrödinger
evolution, and its curvature and torsion coefficients computed from
Hamiltonian moments, together with brute-force oracles that re-derive every
closed form geometrically.
"""

from .core import (
    DEFAULT_CONSTANTS,
    MomentSet,
    PhysicalConstants,
    SpectralDecomposition,
    as_hermitian,
    as_state,
    central_moment,
    evolve,
    expectation,
    inner_product,
    moment_set,
    operator_norm,
    propagate,
    spectral,
)
from .curvature import (
    DegeneratePlane,
    EvolutionPlane,
    GeometryReport,
    OrthogonalStates,
    StationaryState,
    ZeroProjection,
    curvature,
    curvature_dimensionless,
    curvature_radius,
    distance_to_plane,
    evolution_plane,
    geometry_report,
    plane_deviation_sq,
    plane_overlap,
    torsion,
    torsion_dimensionless,
)
from .geodesics import (
    GeodesicFamily,
    OrthogonalEndpoints,
    distance_to_geodesic,
    geodesic_between,
    geodesic_length,
    numeric_arc_length,
    point_theta,
    point_xi,
)
from .geometry import (
    ParamFamily,
    bloch_family,
    evolution_speed,
    fubini_study_distance,
    metric_tensor,
    ray_deviation_sq,
    wootters_distance,
)
from .oracles import (
    FlatCurve,
    NonPositiveValues,
    ScalingFit,
    classical_moments,
    curvature_deviation_curve,
    default_dt_window,
    fit_power_law,
    geodesic_eigencondition_residual,
    make_geodesic_state,
    torsion_deviation_curve,
    two_level_hamiltonian,
)
from .verify import CheckOutcome, DEFAULT_SEED, run_check, run_checks

__version__ = "0.1.0"
