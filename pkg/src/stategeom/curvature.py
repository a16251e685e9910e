"""Curvature and torsion of Schrödinger evolution, from Hamiltonian moments.

Two numbers summarize how an evolving ray bends.  The curvature coefficient

    κ = ⟨(ΔH)⁴⟩ − ⟨(ΔH)²⟩²          (the variance of (ΔH)²)

measures how fast the state peels away from the geodesic through nearby
points of its own trajectory: that squared deviation grows as
(γ²/4)·κ·Δt⁴/ħ⁴.  The torsion coefficient

    τ = κ − ⟨(ΔH)³⟩²/⟨(ΔH)²⟩

measures how fast it escapes the two-dimensional plane spanned by two nearby
trajectory points.  Dividing by ⟨(ΔH)²⟩² makes both dimensionless; κ̄ fixes
the curvature radius via 1/R² = κ̄/γ².  Stationary states (eigenstates) have
⟨(ΔH)²⟩ = 0, so their dimensionless coefficients are 0/0: the operations
raise ``StationaryState`` instead of manufacturing numbers, and
``geometry_report`` encodes them as not-available rather than zero, because
κ̄ = 0 means geodesic motion, which is a different statement entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_CONSTANTS,
    MomentSet,
    PhysicalConstants,
    as_hermitian,
    as_state,
    inner_product,
    moment_set,
    operator_norm,
)
from .geometry import fubini_study_distance

__all__ = [
    "DegeneratePlane",
    "EvolutionPlane",
    "GEODESIC_KAPPA_TOL",
    "GeometryReport",
    "OrthogonalStates",
    "PLANE_TOL",
    "StationaryState",
    "VAR_FLOOR",
    "ZeroProjection",
    "curvature",
    "curvature_dimensionless",
    "curvature_radius",
    "distance_to_plane",
    "evolution_plane",
    "geometry_report",
    "plane_deviation_sq",
    "plane_overlap",
    "torsion",
    "torsion_dimensionless",
]

#: variances at or below VAR_FLOOR·‖H‖² count as stationary
VAR_FLOOR = 1e-12

#: κ̄ at or below this is geodesic motion: the curvature radius is infinite
GEODESIC_KAPPA_TOL = 1e-12

#: overlap gates for the plane construction
PLANE_TOL = 1e-12


class StationaryState(ValueError):
    """⟨(ΔH)²⟩ is at rounding level, so the dimensionless coefficients are 0/0."""


class DegeneratePlane(ValueError):
    """The two states coincide as rays and span a line, not a plane."""


class OrthogonalStates(ValueError):
    """The two states are orthogonal, so the basis construction degenerates."""


class ZeroProjection(ValueError):
    """The state has no component in the plane; its normalized projection does not exist."""


@dataclass(frozen=True)
class EvolutionPlane:
    """Orthonormal basis of the plane spanned by a state ψ₀ and its evolved ψ'.

    With ⟨ψ₀|ψ'⟩ = a·e^{iα}, the basis vectors are

        φ₁ = (ψ₀ + e^{−iα}ψ') / sqrt(2(1+a))
        φ₂ = (ψ₀ − e^{−iα}ψ') / sqrt(2(1−a))

    The two denominators differ: ‖ψ₀ ± e^{−iα}ψ'‖² = 2(1±a), which is what
    makes the pair orthonormal.
    """

    phi1: np.ndarray
    phi2: np.ndarray
    alpha: float
    a: float


@dataclass(frozen=True)
class GeometryReport:
    """Point-in-time geometric summary of one evolution.

    ``kappa_bar``, ``tau``, ``tau_bar`` and ``radius`` are ``None`` for a
    stationary state (they are 0/0 there); ``radius`` is ``math.inf`` for
    geodesic motion.
    """

    speed: float
    kappa: float
    kappa_bar: float | None
    tau: float | None
    tau_bar: float | None
    radius: float | None
    moments: MomentSet


def _stationary_tol(h) -> float:
    return VAR_FLOOR * operator_norm(h) ** 2


def _require_moving(h, var: float) -> None:
    if var <= _stationary_tol(h):
        raise StationaryState(
            f"state is stationary: variance {var:.3e} is at rounding level"
        )


def curvature(h, psi) -> float:
    """κ = ⟨(ΔH)⁴⟩ − ⟨(ΔH)²⟩²; nonnegative up to rounding.

    Zero exactly for geodesic motion, i.e. for equal superpositions of two
    energy eigenstates (and trivially for eigenstates themselves).
    """
    m = moment_set(h, psi)
    return m.central4 - m.var**2


def curvature_dimensionless(h, psi) -> float:
    """κ̄ = κ/⟨(ΔH)²⟩²; raises ``StationaryState`` when the variance is at floor."""
    m = moment_set(h, psi)
    _require_moving(h, m.var)
    return (m.central4 - m.var**2) / m.var**2


def curvature_radius(h, psi, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Curvature radius R = γ/sqrt(κ̄), from 1/R² = κ̄/γ².

    ``math.inf`` when κ̄ is at rounding level (straight-line motion).
    """
    kappa_bar = curvature_dimensionless(h, psi)
    if kappa_bar <= GEODESIC_KAPPA_TOL:
        return math.inf
    return constants.gamma / math.sqrt(kappa_bar)


def torsion(h, psi) -> float:
    """τ = κ − ⟨(ΔH)³⟩²/⟨(ΔH)²⟩; satisfies 0 ≤ τ ≤ κ up to rounding.

    Identically zero in dimension two and for geodesic motion.
    """
    m = moment_set(h, psi)
    _require_moving(h, m.var)
    return m.central4 - m.var**2 - m.central3**2 / m.var


def torsion_dimensionless(h, psi) -> float:
    """τ̄ = τ/⟨(ΔH)²⟩² = κ̄ − ⟨(ΔH)³⟩²/⟨(ΔH)²⟩³."""
    m = moment_set(h, psi)
    _require_moving(h, m.var)
    return (m.central4 - m.var**2 - m.central3**2 / m.var) / m.var**2


def evolution_plane(psi0, psi_prime) -> EvolutionPlane:
    """Orthonormal basis (φ₁, φ₂) of the plane spanned by ψ₀ and ψ'.

    Requires 1e-12 < |⟨ψ₀|ψ'⟩| < 1 − 1e-12: coincident rays leave no plane
    to span (``DegeneratePlane``) and orthogonal ones have no canonical
    rotation e^{−iα} (``OrthogonalStates``).
    """
    psi0 = as_state(psi0)
    psi_prime = as_state(psi_prime)
    if psi0.size != psi_prime.size:
        raise ValueError(f"dimension mismatch: {psi0.size} vs {psi_prime.size}")
    overlap = inner_product(psi0, psi_prime)
    a = abs(overlap)
    if a <= PLANE_TOL:
        raise OrthogonalStates("states are orthogonal; the plane basis degenerates")
    if a >= 1.0 - PLANE_TOL:
        raise DegeneratePlane("states coincide as rays; they span a line, not a plane")
    rotated = (overlap.conjugate() / a) * psi_prime
    phi1 = (psi0 + rotated) / math.sqrt(2.0 * (1.0 + a))
    phi2 = (psi0 - rotated) / math.sqrt(2.0 * (1.0 - a))
    return EvolutionPlane(phi1, phi2, float(np.angle(complex(overlap))), a)


def plane_overlap(plane: EvolutionPlane, psi1) -> float:
    """I₂ = |⟨φ₁|ψ₁⟩|² + |⟨φ₂|ψ₁⟩|², the squared projection weight in the plane."""
    psi1 = as_state(psi1)
    if psi1.size != plane.phi1.size:
        raise ValueError(f"dimension mismatch: {psi1.size} vs {plane.phi1.size}")
    s1 = np.vdot(plane.phi1, psi1)
    s2 = np.vdot(plane.phi2, psi1)
    return float(abs(s1) ** 2 + abs(s2) ** 2)


def plane_deviation_sq(plane: EvolutionPlane, psi1) -> float:
    """1 − I₂ evaluated as the squared norm of the out-of-plane rejection.

    Equal to ``1 - plane_overlap(...)`` in exact arithmetic; this form keeps
    its relative accuracy when ψ₁ sits within ~1e-8 of the plane, which the
    finite-step deviation scans depend on.
    """
    psi1 = np.asarray(psi1, dtype=complex).reshape(-1)
    if psi1.size != plane.phi1.size:
        raise ValueError(f"dimension mismatch: {psi1.size} vs {plane.phi1.size}")
    rejection = psi1 - np.vdot(plane.phi1, psi1) * plane.phi1 \
        - np.vdot(plane.phi2, psi1) * plane.phi2
    return float(np.vdot(rejection, rejection).real / np.vdot(psi1, psi1).real)


def distance_to_plane(plane: EvolutionPlane, psi1,
                      constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """γ·sqrt(1 − I₂): the Fubini-Study distance from ψ₁ to its normalized
    projection onto the plane.

    Raises ``ZeroProjection`` when I₂ ≤ 1e-14 (no normalized projection).
    """
    i2 = plane_overlap(plane, psi1)
    if i2 <= 1e-14:
        raise ZeroProjection("state has no in-plane component to project onto")
    return constants.gamma * math.sqrt(max(0.0, 1.0 - min(i2, 1.0)))


def geometry_report(h, psi, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> GeometryReport:
    """Speed, curvature, torsion and curvature radius at one point of an evolution."""
    h = as_hermitian(h)
    m = moment_set(h, psi)
    speed = constants.gamma * math.sqrt(max(m.var, 0.0)) / constants.hbar
    kappa = m.central4 - m.var**2
    if m.var <= _stationary_tol(h):
        return GeometryReport(speed, kappa, None, None, None, None, m)
    kappa_bar = kappa / m.var**2
    tau = kappa - m.central3**2 / m.var
    tau_bar = tau / m.var**2
    if kappa_bar <= GEODESIC_KAPPA_TOL:
        radius = math.inf
    else:
        radius = constants.gamma / math.sqrt(kappa_bar)
    return GeometryReport(speed, kappa, kappa_bar, tau, tau_bar, radius, m)


def projection_distance_check(plane: EvolutionPlane, psi1,
                              constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Distance recomputed through the explicit normalized projection.

    Independent route used by the tests: project ψ₁ onto the plane, normalize,
    and take the Fubini-Study distance to ψ₁.
    """
    psi1 = as_state(psi1)
    projection = (
        np.vdot(plane.phi1, psi1) * plane.phi1 + np.vdot(plane.phi2, psi1) * plane.phi2
    )
    norm = float(np.linalg.norm(projection))
    if norm <= 1e-7:
        raise ZeroProjection("state has no in-plane component to project onto")
    return fubini_study_distance(psi1, projection / norm, constants)
