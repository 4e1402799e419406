"""Tunable-strength measurement operators on one and two qubits.

A measurement direction is a point on the Bloch sphere; a strength is either
a finite coupling y >= 0 (tanh(y) < 1, a weak measurement for small y) or the
projective limit, kept as its own variant so that limits are exact rather
than approximated with a large y. Single-qubit operators

    M(sigma | n, s) = a(+sigma, s) P(+1 | n) + a(-sigma, s) P(-1 | n),
    a(sign, s) = sqrt((1 + sign * tanh_value(s)) / 2),

combine into two-qubit Kraus operators sqrt(prior) * M_A (x) M_B which
resolve the identity when summed over directions and outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import (
    adjoint,
    as_complex_matrix,
    hermiticity_defect,
    max_norm_diff,
    min_eigenvalue,
    real_trace,
    tensor_product,
)
from .states import TwoQubitState

__all__ = [
    "OUTCOMES",
    "BlochVector",
    "Strength",
    "ZeroProbabilityOutcome",
    "projector",
    "weight",
    "measurement_op",
    "kraus",
    "completeness_defect",
    "post_measurement_state",
    "tensor_product",
    "adjoint",
    "max_norm_diff",
    "hermiticity_defect",
    "min_eigenvalue",
]

TWO_PI = 2.0 * math.pi

#: Valid single-qubit measurement outcomes.
OUTCOMES = (+1, -1)

#: Post-selecting on an outcome below this probability is rejected as impossible.
ZERO_PROBABILITY_TOL = 1e-14


class ZeroProbabilityOutcome(ValueError):
    """Raised when post-selecting on an outcome of numerically zero probability."""


def _check_outcome(sigma: int) -> int:
    if sigma not in OUTCOMES:
        raise ValueError(f"outcome must be +1 or -1, got {sigma!r}")
    return sigma


@dataclass(frozen=True)
class BlochVector:
    """Measurement direction on the unit sphere, canonicalized at construction.

    theta is folded into [0, pi] (with phi shifted by pi when folding) and phi
    is reduced mod 2*pi, so equal directions compare equal.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("Bloch angles must be finite")
        theta = theta % TWO_PI
        if theta > math.pi:
            theta = TWO_PI - theta
            phi = phi + math.pi
        phi = phi % TWO_PI
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def unit_vector(self) -> tuple[float, float, float]:
        """Cartesian components (nx, ny, nz) of the direction."""
        st = math.sin(self.theta)
        return (st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta))


@dataclass(frozen=True)
class Strength:
    """Measurement strength: finite coupling y >= 0, or the projective limit.

    ``y is None`` encodes the projective limit, where tanh_value is exactly 1.
    """

    y: float | None = None

    def __post_init__(self) -> None:
        if self.y is not None:
            y = float(self.y)
            if not math.isfinite(y) or y < 0.0:
                raise ValueError(f"finite strength requires 0 <= y < inf, got {self.y!r}")
            object.__setattr__(self, "y", y)

    @classmethod
    def finite(cls, y: float) -> "Strength":
        return cls(float(y))

    @classmethod
    def projective(cls) -> "Strength":
        return cls(None)

    @property
    def is_projective(self) -> bool:
        return self.y is None

    @property
    def tanh_value(self) -> float:
        """tanh(y) for finite strength, exactly 1.0 in the projective limit."""
        return 1.0 if self.y is None else math.tanh(self.y)

    def __str__(self) -> str:
        return "projective" if self.y is None else f"{self.y:g}"


def projector(sigma: int, direction: BlochVector) -> np.ndarray:
    """Rank-1 projector (1/2)(I + sigma n.pauli) onto the sigma-eigenstate along n."""
    _check_outcome(sigma)
    nx, ny, nz = direction.unit_vector()
    return 0.5 * np.array(
        [
            [1.0 + sigma * nz, sigma * (nx - 1j * ny)],
            [sigma * (nx + 1j * ny), 1.0 - sigma * nz],
        ],
        dtype=complex,
    )


def weight(sign: int, s: Strength) -> float:
    """Amplitude a(sign, s) = sqrt((1 + sign*tanh_value)/2); the two squares sum to 1."""
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return math.sqrt((1.0 + sign * s.tanh_value) / 2.0)


def measurement_op(sigma: int, direction: BlochVector, s: Strength) -> np.ndarray:
    """Single-qubit measurement operator for outcome sigma along a direction.

    Hermitian by construction; at zero strength it is I/sqrt(2) (no
    measurement) and in the projective limit it collapses to the bare
    projector. The two outcomes satisfy sum_sigma M^2 = I.
    """
    _check_outcome(sigma)
    return weight(sigma, s) * projector(+1, direction) + weight(-sigma, s) * projector(
        -1, direction
    )


def kraus(
    dir_a: BlochVector,
    dir_b: BlochVector,
    sigma_a: int,
    sigma_b: int,
    y: Strength,
    z: Strength,
    prior: float,
) -> np.ndarray:
    """Two-qubit Kraus operator sqrt(prior) * M(sigma_a|dir_a, y) (x) M(sigma_b|dir_b, z)."""
    prior = float(prior)
    if not (0.0 <= prior <= 1.0):
        raise ValueError(f"prior must lie in [0, 1], got {prior!r}")
    return math.sqrt(prior) * tensor_product(
        measurement_op(sigma_a, dir_a, y), measurement_op(sigma_b, dir_b, z)
    )


def completeness_defect(
    dirs_a: tuple[BlochVector, BlochVector],
    dirs_b: tuple[BlochVector, BlochVector],
    y: Strength,
    z: Strength,
    prior,
) -> float:
    """Max-norm of sum K^dagger K - I over all directions and outcomes.

    ``prior`` is a 2x2 array-like over the four direction pairs (rows follow
    dirs_a, columns dirs_b); it must sum to 1 within 1e-12.
    """
    p = np.asarray(prior, dtype=float).reshape(2, 2)
    if abs(float(p.sum()) - 1.0) > 1e-12:
        raise ValueError(f"prior must sum to 1 within 1e-12, got sum {p.sum()!r}")
    acc = np.zeros((4, 4), dtype=complex)
    for i, da in enumerate(dirs_a):
        for j, db in enumerate(dirs_b):
            for sa in OUTCOMES:
                for sb in OUTCOMES:
                    k = kraus(da, db, sa, sb, y, z, p[i, j])
                    acc += adjoint(k) @ k
    return max_norm_diff(acc, np.eye(4))


def post_measurement_state(state: TwoQubitState, k: np.ndarray) -> TwoQubitState:
    """State update K rho K^dagger / Tr[K rho K^dagger] after observing K's outcome.

    Raises ZeroProbabilityOutcome when the outcome probability is below
    1e-14, i.e. post-selection on an impossible branch.
    """
    k = as_complex_matrix(k, 4, "Kraus operator")
    updated = k @ state.rho @ adjoint(k)
    norm = real_trace(updated)
    if norm <= ZERO_PROBABILITY_TOL:
        raise ZeroProbabilityOutcome(
            f"outcome probability {norm:.3e} is below {ZERO_PROBABILITY_TOL:.0e}"
        )
    return TwoQubitState(updated / norm, label=f"{state.label}|post-measurement")
