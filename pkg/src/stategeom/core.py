"""State-vector and Hermitian-operator primitives.

A pure state is a normalized 1-D complex ``numpy`` array, an observable a
Hermitian 2-D complex array; the helpers here validate and build both.  On
top of those sit expectation values, central moments up to fourth order,
spectral decomposition, and exact unitary time evolution for a
time-independent Hamiltonian.  Every function is pure and never mutates its
arguments, so the whole module is safe to call from concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_CONSTANTS",
    "HERMITICITY_TOL",
    "MomentSet",
    "PhysicalConstants",
    "SpectralDecomposition",
    "as_hermitian",
    "as_state",
    "central_moment",
    "evolve",
    "expectation",
    "inner_product",
    "moment_set",
    "operator_norm",
    "propagate",
    "spectral",
]

#: asymmetry beyond this (times max(1, |H|_max)) is rejected instead of repaired
HERMITICITY_TOL = 1e-12

# Renormalization is skipped when the norm is already this close to one, so
# parsing an already-normalized vector is bit-stable across round trips.
_NORM_SKIP_TOL = 1e-13


@dataclass(frozen=True)
class PhysicalConstants:
    """``hbar`` sets the time scale of evolution, ``gamma`` the length scale of distances."""

    hbar: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError(f"hbar must be a positive finite number, got {self.hbar!r}")
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be a positive finite number, got {self.gamma!r}")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigensystem of a Hermitian operator.

    ``eigenvalues`` are ascending and column ``eigenvectors[:, k]`` is the
    unit eigenvector belonging to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)


@dataclass(frozen=True)
class MomentSet:
    """Mean energy and the central moments ⟨(H−⟨H⟩)^k⟩ for k = 2, 3, 4."""

    mean: float
    var: float
    central3: float
    central4: float


def as_state(amplitudes) -> np.ndarray:
    """Coerce ``amplitudes`` to a normalized complex state vector (dim >= 2)."""
    psi = np.array(amplitudes, dtype=complex).reshape(-1)
    if psi.size < 2:
        raise ValueError(f"state dimension must be at least 2, got {psi.size}")
    norm = float(np.linalg.norm(psi))
    if not np.isfinite(norm) or norm == 0.0:
        raise ValueError("state vector must have a finite nonzero norm")
    if abs(norm - 1.0) > _NORM_SKIP_TOL:
        psi = psi / norm
    return psi


def as_hermitian(entries) -> np.ndarray:
    """Validate a square complex matrix as Hermitian.

    Rounding-level asymmetry (within ``HERMITICITY_TOL`` of the entry scale)
    is folded away by averaging with the conjugate transpose; anything larger
    is rejected so genuinely bad input never gets silently repaired.
    """
    h = np.array(entries, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {h.shape}")
    if h.shape[0] < 2:
        raise ValueError(f"operator dimension must be at least 2, got {h.shape[0]}")
    scale = max(1.0, float(np.abs(h).max()))
    asymmetry = float(np.abs(h - h.conj().T).max())
    if asymmetry > HERMITICITY_TOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds "
            f"{HERMITICITY_TOL * scale:.3e}"
        )
    return (h + h.conj().T) / 2.0


def inner_product(a, b) -> complex:
    """⟨a|b⟩ with the conjugation on the first argument."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def operator_norm(h) -> float:
    """Spectral norm (largest singular value) of an operator."""
    return float(np.linalg.norm(np.asarray(h), 2))


def _real_part(value: complex, scale: float) -> float:
    residue = abs(value.imag)
    if residue > 1e-10 * max(1.0, scale):
        raise ArithmeticError(f"expected a real value, got imaginary residue {residue:.3e}")
    return value.real


def expectation(h, psi) -> float:
    """⟨ψ|H|ψ⟩ for Hermitian ``h``; the rounding-level imaginary residue is dropped."""
    h = as_hermitian(h)
    psi = as_state(psi)
    if h.shape[0] != psi.size:
        raise ValueError(f"dimension mismatch: operator {h.shape[0]} vs state {psi.size}")
    value = complex(np.vdot(psi, h @ psi))
    return _real_part(value, abs(value))


def central_moment(h, psi, k: int) -> float:
    """⟨ψ|(H − ⟨H⟩)^k|ψ⟩ for k in {1, 2, 3, 4}.

    Computed by k repeated applications of (H − ⟨H⟩·Id) to |ψ⟩ followed by a
    single inner product: O(k·n²) work and better conditioned than forming
    matrix powers.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError(f"moment order must be one of 1, 2, 3, 4, got {k}")
    moments = _central_moments(h, psi)
    return moments[k - 1]


def moment_set(h, psi) -> MomentSet:
    """Mean plus the second, third and fourth central moments in one pass."""
    h = as_hermitian(h)
    psi = as_state(psi)
    mean, moments = _central_moments_validated(h, psi)
    return MomentSet(mean, moments[1], moments[2], moments[3])


def _central_moments(h, psi) -> list[float]:
    h = as_hermitian(h)
    psi = as_state(psi)
    _, moments = _central_moments_validated(h, psi)
    return moments


def _central_moments_validated(h: np.ndarray, psi: np.ndarray) -> tuple[float, list[float]]:
    if h.shape[0] != psi.size:
        raise ValueError(f"dimension mismatch: operator {h.shape[0]} vs state {psi.size}")
    mean = _real_part(complex(np.vdot(psi, h @ psi)), float(np.abs(h).max()))
    moments = []
    w = psi
    for _ in range(4):
        w = h @ w - mean * w
        value = complex(np.vdot(psi, w))
        moments.append(_real_part(value, abs(value)))
    return mean, moments


def spectral(h) -> SpectralDecomposition:
    """Ascending eigenvalues and an orthonormal eigenbasis of a Hermitian operator."""
    h = as_hermitian(h)
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    return SpectralDecomposition(eigenvalues, eigenvectors)


def propagate(
    decomposition: SpectralDecomposition,
    psi0,
    t: float,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> np.ndarray:
    """Apply exp(−iHt/ħ) through a precomputed spectral decomposition."""
    psi0 = np.asarray(psi0, dtype=complex).reshape(-1)
    v = decomposition.eigenvectors
    if v.shape[0] != psi0.size:
        raise ValueError(f"dimension mismatch: operator {v.shape[0]} vs state {psi0.size}")
    phases = np.exp(decomposition.eigenvalues * (-1j * t / constants.hbar))
    return v @ (phases * (v.conj().T @ psi0))


def evolve(h, psi0, t: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Evolve |ψ₀⟩ for a time ``t`` under a time-independent Hamiltonian.

    The propagator is assembled from the spectral decomposition, so it is
    exact up to rounding and unitarity does not degrade with |t|.
    """
    return propagate(spectral(h), psi0, t, constants)
