"""Minimum-length families of rays joining two non-orthogonal states.

The family through ψ₀ and ψ₁ is the normalized linear interpolation

    ψ(ξ) = C·[(1−ξ)·ψ₀ + ξ·e^{iφ}·ψ₁],        0 ≤ ξ ≤ 1,

with the relative phase fixed canonically to e^{iφ} = ⟨ψ₁|ψ₀⟩/|⟨ψ₁|ψ₀⟩|.
That choice makes the family depend only on the rays of its endpoints, and
among all phases it is the one of minimal length.  The same set of rays in
the angle parametrization

    ψ(θ) = C·[sin(θ/2)·ψ₀ + cos(θ/2)·e^{iφ}·ψ₁],   0 ≤ θ ≤ π,

has the closed-form line element integrated by ``numeric_arc_length``; the
total length equals the Wootters distance γ·arccos|⟨ψ₁|ψ₀⟩| of the
endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_CONSTANTS, PhysicalConstants, as_state, inner_product
from .geometry import ray_deviation_sq

__all__ = [
    "GeodesicFamily",
    "ORTHOGONAL_TOL",
    "OrthogonalEndpoints",
    "arc_length_integrand",
    "distance_to_geodesic",
    "geodesic_between",
    "geodesic_length",
    "numeric_arc_length",
    "point_theta",
    "point_xi",
    "simpson_uniform",
]

#: endpoint overlaps at or below this leave the canonical phase undefined
ORTHOGONAL_TOL = 1e-12

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class OrthogonalEndpoints(ValueError):
    """The canonical relative phase e^{iφ} is undefined for orthogonal endpoints."""


@dataclass(frozen=True)
class GeodesicFamily:
    """Endpoints, canonical phase, and endpoint overlap modulus of one family."""

    psi0: np.ndarray
    psi1: np.ndarray
    phase: complex
    overlap_mod: float


def geodesic_between(psi0, psi1) -> GeodesicFamily:
    """Build the canonical-phase family joining the rays of ψ₀ and ψ₁.

    Raises ``OrthogonalEndpoints`` when |⟨ψ₁|ψ₀⟩| ≤ 1e-12: the phase formula
    divides by that modulus, so callers wanting a geodesic through orthogonal
    rays must perturb an endpoint or pick a phase themselves.
    """
    psi0 = as_state(psi0)
    psi1 = as_state(psi1)
    if psi0.size != psi1.size:
        raise ValueError(f"dimension mismatch: {psi0.size} vs {psi1.size}")
    overlap = inner_product(psi1, psi0)
    modulus = abs(overlap)
    if modulus <= ORTHOGONAL_TOL:
        raise OrthogonalEndpoints(
            "endpoint rays are orthogonal; the canonical phase is undefined"
        )
    return GeodesicFamily(psi0, psi1, overlap / modulus, min(modulus, 1.0))


def point_xi(family: GeodesicFamily, xi: float) -> np.ndarray:
    """State at ξ ∈ [0, 1]; ξ=0 gives ψ₀ and ξ=1 gives e^{iφ}·ψ₁."""
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    c = 1.0 / math.sqrt(1.0 - 2.0 * xi * (1.0 - xi) * (1.0 - family.overlap_mod))
    return c * ((1.0 - xi) * family.psi0 + (xi * family.phase) * family.psi1)


def point_theta(family: GeodesicFamily, theta: float) -> np.ndarray:
    """State at θ ∈ [0, π]; θ=π gives ψ₀ and θ=0 gives e^{iφ}·ψ₁.

    Same set of rays as ``point_xi``, reparametrized.
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    c = 1.0 / math.sqrt(1.0 + family.overlap_mod * math.sin(theta))
    return c * (
        math.sin(theta / 2.0) * family.psi0
        + (math.cos(theta / 2.0) * family.phase) * family.psi1
    )


def geodesic_length(family: GeodesicFamily,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Closed-form length γ·arccos|⟨ψ₁|ψ₀⟩| (the Wootters distance of the endpoints)."""
    return constants.gamma * math.acos(min(family.overlap_mod, 1.0))


def arc_length_integrand(family: GeodesicFamily, theta,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Line element dl/dθ = (γ/2)·sqrt(1−a²)/(1 + a·sinθ), a = |⟨ψ₁|ψ₀⟩|."""
    a = family.overlap_mod
    return 0.5 * constants.gamma * math.sqrt(max(0.0, 1.0 - a * a)) / (1.0 + a * np.sin(theta))


def simpson_uniform(values: np.ndarray, h: float) -> float:
    """Composite Simpson rule over a uniform grid with an odd number of nodes."""
    values = np.asarray(values, dtype=float)
    if values.size < 3 or values.size % 2 == 0:
        raise ValueError(f"need an odd number of nodes >= 3, got {values.size}")
    weights = np.ones(values.size)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(h / 3.0 * (weights @ values))


def numeric_arc_length(family: GeodesicFamily,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS,
                       panels: int = 256) -> float:
    """Quadrature of the line element over θ ∈ [0, π].

    ``panels`` counts Simpson panels (two grid steps each); the integrand is
    smooth, so the error falls off as panels⁻⁴ toward ``geodesic_length``.
    """
    if panels < 16:
        raise ValueError(f"at least 16 panels required, got {panels}")
    thetas = np.linspace(0.0, math.pi, 2 * panels + 1)
    values = arc_length_integrand(family, thetas, constants)
    return simpson_uniform(values, math.pi / (2 * panels))


def distance_to_geodesic(probe, family: GeodesicFamily,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS,
                         xi_tol: float = 1e-9) -> tuple[float, float]:
    """Minimum Fubini-Study distance from ``probe`` to the family, with its minimizer.

    Returns ``(distance, xi_star)``.  A 64-point scan first localizes the
    basin (the squared-overlap profile is a smooth rational function of ξ
    whose minimum may sit on the boundary), then golden-section search
    narrows ξ* below ``xi_tol``.
    """
    probe = as_state(probe)
    if probe.size != family.psi0.size:
        raise ValueError(f"dimension mismatch: {probe.size} vs {family.psi0.size}")

    def deviation(xi: float) -> float:
        return ray_deviation_sq(point_xi(family, xi), probe)

    grid = np.linspace(0.0, 1.0, 64)
    coarse = [deviation(x) for x in grid]
    j = int(np.argmin(coarse))
    lo = float(grid[max(j - 1, 0)])
    hi = float(grid[min(j + 1, grid.size - 1)])

    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = deviation(x1), deviation(x2)
    while hi - lo > xi_tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = deviation(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = deviation(x2)
    xi_star = 0.5 * (lo + hi)
    dev = deviation(xi_star)
    return constants.gamma * math.sqrt(max(dev, 0.0)), xi_star
