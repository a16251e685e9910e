"""Distances between state rays, the metric on parametrized state families,
and the speed of Schrödinger evolution.

Everything here lives on rays: global phases of the inputs never change a
result.  Distances between rays ``a`` and ``b`` come in two flavors,

* Fubini-Study (chordal):  γ·sqrt(1 − |⟨a|b⟩|²)
* Wootters (angular):      γ·arccos|⟨a|b⟩|

which agree to second order for nearby rays.  The same γ scales the metric
pulled back onto a parametrized family of states and the ray speed of an
evolving state, γ·sqrt(⟨(ΔH)²⟩)/ħ.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DEFAULT_CONSTANTS, PhysicalConstants, as_state, central_moment

__all__ = [
    "DEFAULT_FD_STEP",
    "ParamFamily",
    "bloch_family",
    "evolution_speed",
    "fubini_study_distance",
    "metric_tensor",
    "ray_deviation_sq",
    "validate_family",
    "wootters_distance",
]

#: default central-difference step for family derivatives
DEFAULT_FD_STEP = 1e-5


def _sine_of_angle(a, b) -> float:
    # sqrt(1 - |<a|b>|^2) through the rejection norm: exact 0 for coincident
    # rays, and the clamp absorbs the ~1e-16 overshoot that would otherwise
    # leak into arcsin
    return min(math.sqrt(ray_deviation_sq(as_state(a), as_state(b))), 1.0)


def fubini_study_distance(a, b, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Chordal ray distance γ·sqrt(1 − |⟨a|b⟩|²), in [0, γ]."""
    return constants.gamma * _sine_of_angle(a, b)


def wootters_distance(a, b, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Angular ray distance γ·arccos|⟨a|b⟩|, in [0, γπ/2]."""
    return constants.gamma * math.asin(_sine_of_angle(a, b))


def ray_deviation_sq(a, b) -> float:
    """1 − |⟨â|b̂⟩|² for the unit rays of ``a`` and ``b``.

    Evaluated as the squared norm of the component of ``b`` orthogonal to
    ``a`` (normalized by both input norms).  Identical to the direct formula
    in exact arithmetic, but the relative accuracy survives separations far
    below sqrt(eps), where 1 − |⟨a|b⟩|² loses everything to cancellation.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    rejection = b - a * (np.vdot(a, b) / np.vdot(a, a).real)
    return float(np.vdot(rejection, rejection).real / np.vdot(b, b).real)


@dataclass(frozen=True)
class ParamFamily:
    """Differentiable map from k real parameters to normalized states.

    ``map`` takes a length-k parameter vector and returns a normalized state;
    it must be smooth inside ``domain`` (one closed interval per parameter)
    and safe to invoke concurrently.
    """

    map: Callable[[np.ndarray], np.ndarray]
    k: int
    domain: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"parameter count must be positive, got {self.k}")
        if len(self.domain) != self.k:
            raise ValueError(f"domain needs {self.k} intervals, got {len(self.domain)}")
        for lo, hi in self.domain:
            if not lo < hi:
                raise ValueError(f"empty domain interval ({lo}, {hi})")


def bloch_family() -> ParamFamily:
    """The qubit family (θ, φ) ↦ (cos(θ/2), e^{iφ}·sin(θ/2)).

    With γ = 2 its pullback metric is that of the unit sphere,
    diag(1, sin²θ).
    """

    def _map(point: np.ndarray) -> np.ndarray:
        theta, phi = float(point[0]), float(point[1])
        return np.array(
            [math.cos(theta / 2.0), cmath.exp(1j * phi) * math.sin(theta / 2.0)],
            dtype=complex,
        )

    return ParamFamily(_map, 2, ((0.0, math.pi), (0.0, 2.0 * math.pi)))


def validate_family(family: ParamFamily, rng: np.random.Generator, samples: int = 32,
                    tol: float = 1e-9) -> None:
    """Spot-check that ``family.map`` returns normalized states in-domain."""
    lows = np.array([lo for lo, _ in family.domain])
    highs = np.array([hi for _, hi in family.domain])
    for _ in range(samples):
        point = rng.uniform(lows, highs)
        psi = np.asarray(family.map(point), dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(psi))
        if abs(norm - 1.0) > tol:
            raise ValueError(f"family map returned norm {norm!r} at {point!r}")


def metric_tensor(
    family: ParamFamily,
    point,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    step: float = DEFAULT_FD_STEP,
) -> np.ndarray:
    """Pullback ray metric g_ij = γ²·Re(⟨∂iψ|∂jψ⟩ − ⟨∂iψ|ψ⟩⟨ψ|∂jψ⟩).

    Parameter derivatives are central differences of width ``step`` (O(step²)
    accurate).  The gauge term is built from the same difference vectors, so
    the discretization stays consistent and smooth reparametrizations of the
    global phase drop out.
    """
    point = np.asarray(point, dtype=float).reshape(-1)
    if point.size != family.k:
        raise ValueError(f"point has {point.size} coordinates, family expects {family.k}")
    if not (step > 0 and np.isfinite(step)):
        raise ValueError(f"step must be a positive finite number, got {step}")
    for x, (lo, hi) in zip(point, family.domain):
        if not (lo + step <= x <= hi - step):
            raise ValueError(
                f"point coordinate {x} sits within one step of the domain ({lo}, {hi})"
            )

    psi = np.asarray(family.map(point), dtype=complex).reshape(-1)
    derivatives = []
    for i in range(family.k):
        offset = np.zeros(family.k)
        offset[i] = step
        plus = np.asarray(family.map(point + offset), dtype=complex).reshape(-1)
        minus = np.asarray(family.map(point - offset), dtype=complex).reshape(-1)
        d = (plus - minus) / (2.0 * step)
        if not np.all(np.isfinite(d.view(float))):
            raise ValueError(f"non-finite derivative along parameter {i} at {point!r}")
        derivatives.append(d)

    gamma_sq = constants.gamma**2
    g = np.empty((family.k, family.k))
    for i in range(family.k):
        for j in range(i, family.k):
            value = np.vdot(derivatives[i], derivatives[j])
            gauge = np.vdot(derivatives[i], psi) * np.vdot(psi, derivatives[j])
            g[i, j] = g[j, i] = gamma_sq * (value - gauge).real
    return g


def evolution_speed(h, psi, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Ray speed γ·sqrt(⟨(ΔH)²⟩)/ħ of Schrödinger evolution.

    Zero exactly when ψ is an eigenstate of H (a stationary ray).
    """
    var = max(central_moment(h, psi, 2), 0.0)
    return constants.gamma * math.sqrt(var) / constants.hbar
