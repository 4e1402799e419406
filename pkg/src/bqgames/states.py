"""Two-qubit density matrices used by the games, with validation.

Basis order is the computational product basis |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import as_complex_matrix, frozen, hermiticity_defect, min_eigenvalue, real_trace

__all__ = [
    "TwoQubitState",
    "StateValidationError",
    "NotHermitian",
    "NotUnitTrace",
    "NotPSD",
    "bell_state",
    "discorded_state",
    "werner_state",
    "custom_state",
    "state_to_json",
    "state_from_json",
]

TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
#: Eigenvalues down to this floor are accepted as rounding noise.
EIGENVALUE_FLOOR = -1e-10


class StateValidationError(ValueError):
    """A density-matrix invariant failed; ``defect`` is the measured violation."""

    def __init__(self, message: str, defect: float):
        super().__init__(message)
        self.defect = defect


class NotHermitian(StateValidationError):
    pass


class NotUnitTrace(StateValidationError):
    pass


class NotPSD(StateValidationError):
    pass


@dataclass(frozen=True)
class TwoQubitState:
    """Validated 4x4 density matrix: unit trace, Hermitian, positive semidefinite.

    ``kind`` and ``param`` record which constructor family produced the state
    ("bell", "discorded", "werner" or "custom") so downstream sweeps and
    optimizers can rebuild it at a different parameter value.
    """

    rho: np.ndarray
    label: str = "state"
    kind: str = "custom"
    param: float | None = None

    def __post_init__(self) -> None:
        rho = as_complex_matrix(self.rho, 4, "density matrix")
        herm = hermiticity_defect(rho)
        if herm > HERMITICITY_TOL:
            raise NotHermitian(f"density matrix is not Hermitian (defect {herm:.3e})", herm)
        trace_defect = abs(real_trace(rho) - 1.0)
        if trace_defect > TRACE_TOL:
            raise NotUnitTrace(
                f"density matrix trace deviates from 1 by {trace_defect:.3e}", trace_defect
            )
        lo = min_eigenvalue(rho)
        if lo < EIGENVALUE_FLOOR:
            raise NotPSD(f"density matrix has negative eigenvalue {lo:.3e}", -lo)
        object.__setattr__(self, "rho", frozen(rho))

    @property
    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)

    def min_eigenvalue(self) -> float:
        return min_eigenvalue(self.rho)

    def clamped_eigenvalues(self) -> np.ndarray:
        """Eigenvalues with rounding-level negatives clamped to zero."""
        return np.clip(np.linalg.eigvalsh(self.rho), 0.0, None)


def _pure(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, ket.conj())


def bell_state() -> TwoQubitState:
    """Maximally entangled state (|00> + |11>)/sqrt(2), as a density matrix."""
    ket = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / math.sqrt(2.0)
    return TwoQubitState(_pure(ket), label="bell", kind="bell")


def discorded_state(x: float) -> TwoQubitState:
    """Equal mixture of |00><00| and |xx><xx| with |x> = cos(x/2)|0> + sin(x/2)|1>.

    Separable but discordant for generic x; x is unrestricted and enters
    through trig functions only.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("correlation parameter x must be finite")
    single = np.array([math.cos(x / 2.0), math.sin(x / 2.0)], dtype=complex)
    ket_xx = np.kron(single, single)
    ket_00 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    rho = 0.5 * (_pure(ket_00) + _pure(ket_xx))
    return TwoQubitState(rho, label=f"discorded(x={x:g})", kind="discorded", param=x)


def werner_state(eta: float) -> TwoQubitState:
    """Singlet fraction eta mixed with white noise: (1-eta)/4 I + eta |psi-><psi-|."""
    eta = float(eta)
    if not (0.0 <= eta <= 1.0):
        raise ValueError(f"werner parameter must lie in [0, 1], got {eta!r}")
    singlet = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
    rho = (1.0 - eta) / 4.0 * np.eye(4, dtype=complex) + eta * _pure(singlet)
    return TwoQubitState(rho, label=f"werner(eta={eta:g})", kind="werner", param=eta)


def custom_state(rho_entries, label: str = "custom") -> TwoQubitState:
    """Validate 16 complex entries (row-major 4x4) as a density matrix.

    Raises NotHermitian / NotUnitTrace / NotPSD naming the violated invariant
    and the measured defect.
    """
    return TwoQubitState(as_complex_matrix(rho_entries, 4, "custom state"), label=label)


def state_to_json(state: TwoQubitState) -> dict:
    """Serialize to the state schema consumed by the CLI."""
    if state.kind == "bell":
        return {"type": "bell"}
    if state.kind == "werner":
        return {"type": "werner", "eta": state.param}
    if state.kind == "discorded":
        return {"type": "discorded", "x": state.param}
    flat = state.rho.reshape(-1)
    return {"type": "custom", "rho": [[float(v.real), float(v.imag)] for v in flat]}


def state_from_json(obj) -> TwoQubitState:
    """Build a state from the JSON schema; raises SchemaError on malformed input."""
    from .schema import SchemaError, require_mapping, require_number

    require_mapping(obj, "state")
    kind = obj.get("type")
    if kind == "bell":
        return bell_state()
    if kind == "werner":
        return werner_state(require_number(obj, "eta", "state.eta"))
    if kind == "discorded":
        return discorded_state(require_number(obj, "x", "state.x"))
    if kind == "custom":
        entries = obj.get("rho")
        if not isinstance(entries, list) or len(entries) != 16:
            raise SchemaError("state.rho", "expected a list of 16 [re, im] pairs")
        values = []
        for idx, pair in enumerate(entries):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"state.rho[{idx}]", "expected an [re, im] pair")
            values.append(complex(float(pair[0]), float(pair[1])))
        return custom_state(np.array(values).reshape(4, 4))
    raise SchemaError("state.type", f"unknown state type {kind!r}")
