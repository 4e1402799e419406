"""Bayesian two-player games on a shared two-qubit state.

A game fixes two measurement directions per player, a strength per player, a
prior over the four direction pairs and a 16-cell payoff table. The payoff
engine evaluates outcome probabilities directly from the measurement
operators; closed-form evaluators for the built-in tables cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ._linalg import adjoint, tensor_product
from .quantum_core import OUTCOMES, BlochVector, Strength, measurement_op
from .states import TwoQubitState, bell_state, discorded_state, state_from_json, state_to_json, werner_state

__all__ = [
    "A_LABELS",
    "B_LABELS",
    "LABEL_PAIRS",
    "OUTCOME_PAIRS",
    "UnknownTable",
    "PayoffTable",
    "Prior",
    "GameSpec",
    "builtin_table",
    "conditional_probability",
    "outcome_distribution",
    "expected_payoff",
    "pd_closed",
    "pd_weak",
    "chsh_closed",
    "modchsh_closed",
    "closed_form_payoffs",
    "state_correlators",
    "payoff_weights",
    "gamespec_to_json",
    "gamespec_from_json",
]

#: Player A chooses between directions labelled "a" and "ap" (a-prime); B between "b"/"bp".
A_LABELS = ("a", "ap")
B_LABELS = ("b", "bp")
LABEL_PAIRS = tuple((a, b) for a in A_LABELS for b in B_LABELS)
OUTCOME_PAIRS = ((+1, +1), (+1, -1), (-1, +1), (-1, -1))

BUILTIN_TABLES = ("prisoners_dilemma", "chsh", "modified_chsh")


class UnknownTable(ValueError):
    pass


@dataclass(frozen=True)
class PayoffTable:
    """Payoff pairs (u_A, u_B) for each (A direction, B direction, outcome pair)."""

    name: str
    cells: Mapping[tuple[str, str, int, int], tuple[float, float]]

    def __post_init__(self) -> None:
        cells = {}
        for alpha in A_LABELS:
            for beta in B_LABELS:
                for sa, sb in OUTCOME_PAIRS:
                    key = (alpha, beta, sa, sb)
                    if key not in self.cells:
                        raise ValueError(f"payoff table is missing cell {key}")
                    ua, ub = self.cells[key]
                    ua, ub = float(ua), float(ub)
                    if not (math.isfinite(ua) and math.isfinite(ub)):
                        raise ValueError(f"payoff cell {key} has non-finite entries")
                    cells[key] = (ua, ub)
        if len(self.cells) != 16:
            raise ValueError(f"payoff table must have exactly 16 cells, got {len(self.cells)}")
        object.__setattr__(self, "cells", MappingProxyType(cells))

    def payoff(self, alpha: str, beta: str, sigma_a: int, sigma_b: int) -> tuple[float, float]:
        return self.cells[(alpha, beta, sigma_a, sigma_b)]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Payoffs as (u_A, u_B) arrays of shape (4, 4): label pair x outcome pair."""
        ua = np.empty((4, 4))
        ub = np.empty((4, 4))
        for li, (alpha, beta) in enumerate(LABEL_PAIRS):
            for oi, (sa, sb) in enumerate(OUTCOME_PAIRS):
                ua[li, oi], ub[li, oi] = self.cells[(alpha, beta, sa, sb)]
        return ua, ub

    def is_zero_sum(self) -> bool:
        return all(ua + ub == 0.0 for ua, ub in self.cells.values())


def _table_from_blocks(name: str, blocks: dict) -> PayoffTable:
    cells = {}
    for (alpha, beta), rows in blocks.items():
        # rows: [[QQ, QT], [TQ, TT]] with row index = A outcome, column = B outcome
        for i, sa in enumerate(OUTCOMES):
            for j, sb in enumerate(OUTCOMES):
                cells[(alpha, beta, sa, sb)] = rows[i][j]
    return PayoffTable(name, cells)


# Incomplete-information Prisoner's dilemma: each prisoner is interviewed by an
# officer who is either honest (direction a / b) or corrupt (a' / b'); outcome
# +1 = stay quiet, -1 = tell. A corrupt officer pays out for telling.
_PD_BLOCKS = {
    ("a", "b"): [[(2, 2), (0, 3)], [(3, 0), (1, 1)]],  # honest / honest
    ("a", "bp"): [[(2, 1), (0, 0)], [(3, 2), (1, 3)]],  # honest / corrupt
    ("ap", "b"): [[(1, 2), (2, 3)], [(0, 0), (3, 1)]],  # corrupt / honest
    ("ap", "bp"): [[(1, 1), (2, 0)], [(0, 2), (3, 3)]],  # corrupt / corrupt
}

# Zero-sum CHSH game: A wins (1, -1) on matching outcomes except on the
# (a', b') pair, where anti-matching wins.
_CHSH_BLOCKS = {
    ("a", "b"): [[(1, -1), (0, 0)], [(0, 0), (1, -1)]],
    ("a", "bp"): [[(1, -1), (0, 0)], [(0, 0), (1, -1)]],
    ("ap", "b"): [[(1, -1), (0, 0)], [(0, 0), (1, -1)]],
    ("ap", "bp"): [[(0, 0), (1, -1)], [(1, -1), (0, 0)]],
}

# Modified combative CHSH game: payoffs follow A's outcome alone on three
# direction pairs, and anti-correlation on (a', b'); still zero-sum but no
# longer symmetric across the diagonal of each block.
_MODIFIED_CHSH_BLOCKS = {
    ("a", "b"): [[(1, -1), (1, -1)], [(-1, 1), (-1, 1)]],
    ("a", "bp"): [[(1, -1), (1, -1)], [(-1, 1), (-1, 1)]],
    ("ap", "b"): [[(1, -1), (1, -1)], [(-1, 1), (-1, 1)]],
    ("ap", "bp"): [[(-1, 1), (1, -1)], [(1, -1), (-1, 1)]],
}


def builtin_table(name: str) -> PayoffTable:
    """One of the built-in payoff tables: prisoners_dilemma, chsh, modified_chsh."""
    if name == "prisoners_dilemma":
        return _table_from_blocks(name, _PD_BLOCKS)
    if name == "chsh":
        return _table_from_blocks(name, _CHSH_BLOCKS)
    if name == "modified_chsh":
        return _table_from_blocks(name, _MODIFIED_CHSH_BLOCKS)
    raise UnknownTable(f"unknown table {name!r}; expected one of {BUILTIN_TABLES}")


PRIOR_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Prior:
    """Probability of each (A direction, B direction) pair; sums to 1."""

    p: np.ndarray  # shape (2, 2), rows follow A_LABELS, columns B_LABELS

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float).reshape(2, 2)
        if np.any(p < 0.0) or not np.all(np.isfinite(p)):
            raise ValueError("prior entries must be finite and nonnegative")
        total = float(p.sum())
        if abs(total - 1.0) > PRIOR_SUM_TOL:
            raise ValueError(f"prior must sum to 1 within {PRIOR_SUM_TOL:g}, got {total!r}")
        flat = p.copy()
        flat.setflags(write=False)
        object.__setattr__(self, "p", flat)

    @classmethod
    def uniform(cls) -> "Prior":
        return cls(np.full((2, 2), 0.25))

    @classmethod
    def from_flat(cls, values) -> "Prior":
        """Four probabilities in LABEL_PAIRS order: (a,b), (a,bp), (ap,b), (ap,bp)."""
        arr = np.asarray(values, dtype=float)
        if arr.shape != (4,):
            raise ValueError("prior must have exactly 4 entries")
        return cls(arr.reshape(2, 2))

    def prob(self, alpha: str, beta: str) -> float:
        return float(self.p[A_LABELS.index(alpha), B_LABELS.index(beta)])

    def as_flat(self) -> np.ndarray:
        return self.p.reshape(-1).copy()


@dataclass(frozen=True)
class GameSpec:
    """Complete game definition: directions, strengths, prior, payoffs and state."""

    dirs_a: tuple[BlochVector, BlochVector]
    dirs_b: tuple[BlochVector, BlochVector]
    y: Strength
    z: Strength
    prior: Prior
    table: PayoffTable
    state: TwoQubitState

    def __post_init__(self) -> None:
        if len(self.dirs_a) != 2 or len(self.dirs_b) != 2:
            raise ValueError("each player has exactly two measurement directions")

    def direction(self, label: str) -> BlochVector:
        if label == "a":
            return self.dirs_a[0]
        if label == "ap":
            return self.dirs_a[1]
        if label == "b":
            return self.dirs_b[0]
        if label == "bp":
            return self.dirs_b[1]
        raise ValueError(f"unknown direction label {label!r}")

    def all_phi_zero(self, tol: float = 0.0) -> bool:
        return all(
            abs(d.phi) <= tol or abs(d.phi - 2.0 * math.pi) <= tol
            for d in (*self.dirs_a, *self.dirs_b)
        )


def conditional_probability(
    g: GameSpec, labels: tuple[str, str], sigma_a: int, sigma_b: int
) -> float:
    """Probability of outcomes (sigma_a, sigma_b) given direction labels (alpha, beta).

    Computed as Tr[(M_A (x) M_B) rho (M_A (x) M_B)^dagger]; nonnegative and
    normalized over the four outcome pairs.
    """
    alpha, beta = labels
    m_a = measurement_op(sigma_a, g.direction(alpha), g.y)
    m_b = measurement_op(sigma_b, g.direction(beta), g.z)
    k = tensor_product(m_a, m_b)
    p = float(np.trace(k @ g.state.rho @ adjoint(k)).real)
    if p < -1e-12:
        raise ValueError(f"conditional probability {p!r} is significantly negative")
    return max(p, 0.0)


def outcome_distribution(g: GameSpec, labels: tuple[str, str]) -> np.ndarray:
    """The four outcome-pair probabilities for one label pair, in OUTCOME_PAIRS order."""
    return np.array([conditional_probability(g, labels, sa, sb) for sa, sb in OUTCOME_PAIRS])


def expected_payoff(g: GameSpec) -> tuple[float, float]:
    """Prior- and outcome-averaged payoffs (u_A, u_B).

    Same trace computation as conditional_probability, with the eight
    measurement operators hoisted out of the 16-cell loop.
    """
    ops_a = {
        (label, s): measurement_op(s, g.direction(label), g.y)
        for label in A_LABELS
        for s in OUTCOMES
    }
    ops_b = {
        (label, s): measurement_op(s, g.direction(label), g.z)
        for label in B_LABELS
        for s in OUTCOMES
    }
    rho = g.state.rho
    total_a = 0.0
    total_b = 0.0
    for alpha, beta in LABEL_PAIRS:
        weight_ab = g.prior.prob(alpha, beta)
        if weight_ab == 0.0:
            continue
        for sa, sb in OUTCOME_PAIRS:
            k = tensor_product(ops_a[(alpha, sa)], ops_b[(beta, sb)])
            p = float(np.trace(k @ rho @ k.conj().T).real)
            ua, ub = g.table.payoff(alpha, beta, sa, sb)
            total_a += weight_ab * p * ua
            total_b += weight_ab * p * ub
    return total_a, total_b


# ---------------------------------------------------------------------------
# Closed forms for the built-in tables (all derived with every phi = 0; the
# numeric engine above is the general path and doubles as their cross-check).
# ---------------------------------------------------------------------------


def _check_player(player: str) -> str:
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    return player


def pd_closed(
    player: str,
    y: Strength,
    z: Strength,
    x: float,
    theta_a: float,
    theta_b: float,
    theta_ap: float,
    theta_bp: float,
) -> float:
    """Prisoner's-dilemma payoff on the discorded state, uniform prior, phi = 0.

    Player A's payoff carries an overall tanh(y) factor and player B's an
    overall tanh(z): the player who does not measure pins their own payoff at
    3/2 regardless of everything else.
    """
    _check_player(player)
    ty, tz = y.tanh_value, z.tanh_value
    if player == "A":
        lead, other = ty, tz
        t_own, t_opp = theta_a, theta_ap
        s_half = (theta_b - theta_bp) / 2.0
        s_mean = (theta_b + theta_bp) / 2.0
    else:
        lead, other = tz, ty
        t_own, t_opp = theta_b, theta_bp
        s_half = (theta_a - theta_ap) / 2.0
        s_mean = (theta_a + theta_ap) / 2.0
    brace = (
        math.cos(t_own)
        + math.cos(t_own - x)
        - math.cos(s_half)
        * (math.cos(t_opp - s_mean) + math.cos(t_opp - x + s_mean) * math.cos(x))
        * other
    )
    return 1.5 - lead * brace / 8.0


def pd_weak(
    player: str,
    y_small: float,
    x: float,
    theta_a: float,
    theta_b: float,
    theta_ap: float,
    theta_bp: float,
) -> float:
    """First order in A's strength around y = 0, with B projective: tanh(y) -> y, tanh(z) -> 1."""
    _check_player(player)
    y_small = float(y_small)
    if not math.isfinite(y_small):
        raise ValueError("y_small must be finite")
    if player == "A":
        brace = (
            math.cos(theta_a)
            + math.cos(theta_a - x)
            - math.cos((theta_b - theta_bp) / 2.0)
            * (
                math.cos(theta_ap - (theta_b + theta_bp) / 2.0)
                + math.cos(theta_ap - x + (theta_b + theta_bp) / 2.0) * math.cos(x)
            )
        )
        return 1.5 - y_small * brace / 8.0
    brace = (
        math.cos(theta_b)
        + math.cos(theta_b - x)
        - math.cos((theta_a - theta_ap) / 2.0)
        * (
            math.cos(theta_bp - (theta_a + theta_ap) / 2.0)
            + math.cos(theta_bp - x + (theta_a + theta_ap) / 2.0) * math.cos(x)
        )
        * y_small
    )
    return 1.5 - brace / 8.0


def _chsh_combo(theta_a: float, theta_b: float, theta_ap: float, theta_bp: float) -> float:
    return (
        math.cos(theta_a - theta_b)
        + math.cos(theta_ap - theta_b)
        + math.cos(theta_a - theta_bp)
        - math.cos(theta_ap - theta_bp)
    )


def _state_param(state_kind: str, x: float | None, eta: float | None) -> float:
    if state_kind == "discorded":
        if x is None:
            raise ValueError("discorded closed form requires x")
        return float(x)
    if state_kind == "werner":
        if eta is None:
            raise ValueError("werner closed form requires eta")
        return float(eta)
    if state_kind != "bell":
        raise ValueError(f"unknown state kind {state_kind!r}")
    return 0.0


def chsh_closed(
    state_kind: str,
    y: Strength,
    z: Strength,
    theta_a: float,
    theta_b: float,
    theta_ap: float,
    theta_bp: float,
    *,
    x: float | None = None,
    eta: float | None = None,
) -> float:
    """Player A's CHSH payoff (phi = 0) on the bell, discorded or werner state.

    The game is zero-sum, so player B's payoff is the negation.
    """
    param = _state_param(state_kind, x, eta)
    ty_tz = y.tanh_value * z.tanh_value
    if state_kind == "bell":
        return (4.0 + _chsh_combo(theta_a, theta_b, theta_ap, theta_bp) * ty_tz) / 8.0
    if state_kind == "werner":
        return (4.0 - param * _chsh_combo(theta_a, theta_b, theta_ap, theta_bp) * ty_tz) / 8.0

    def signed_sum(f) -> float:
        return f(theta_a, theta_b) + f(theta_ap, theta_b) + f(theta_a, theta_bp) - f(theta_ap, theta_bp)

    bracket = (
        2.0 * signed_sum(lambda u, v: math.cos(u - v))
        + signed_sum(lambda u, v: math.cos(u + v))
        + signed_sum(lambda u, v: math.cos(u + v - 2.0 * param))
    )
    return (16.0 + bracket * ty_tz) / 32.0


def modchsh_closed(
    state_kind: str,
    y: Strength,
    z: Strength,
    theta_a: float,
    theta_b: float,
    theta_ap: float,
    theta_bp: float,
    *,
    x: float | None = None,
    eta: float | None = None,
) -> float:
    """Player A's modified-CHSH payoff (phi = 0); player B's is the negation.

    On the discorded state the whole expression is proportional to tanh(y),
    so player A alone can cancel both payoffs by not measuring.
    """
    param = _state_param(state_kind, x, eta)
    ty, tz = y.tanh_value, z.tanh_value
    if state_kind == "bell":
        return -math.cos(theta_ap - theta_bp) * ty * tz / 4.0
    if state_kind == "werner":
        return param * math.cos(theta_ap - theta_bp) * ty * tz / 4.0
    brace = (
        2.0 * (math.cos(theta_a) + math.cos(theta_a - param))
        + math.cos(theta_ap)
        + math.cos(theta_ap - param)
        - (
            math.cos(theta_ap - theta_bp)
            + math.cos(theta_ap + theta_bp - param) * math.cos(param)
        )
        * tz
    )
    return ty * brace / 8.0


def _planar_angle(d: BlochVector) -> float | None:
    """Signed angle in the x-z plane, or None for out-of-plane directions.

    Canonicalization stores a negative planar angle as (theta, phi=pi), so
    both phi = 0 and phi = pi are in plane; the latter flips the sign.
    """
    if d.phi == 0.0:
        return d.theta
    if d.phi == math.pi:
        return -d.theta
    return None


def closed_form_payoffs(g: GameSpec) -> tuple[float, float] | None:
    """Closed-form (u_A, u_B) for ``g`` when one applies, else None.

    A closed form exists for the built-in tables on their supported state
    families, with all measurement directions in the x-z plane (the phi = 0
    convention) and the uniform prior.
    """
    planar = [_planar_angle(d) for d in (*g.dirs_a, *g.dirs_b)]
    if any(v is None for v in planar):
        return None
    if np.max(np.abs(g.prior.p - 0.25)) > 0.0:
        return None
    theta_a, theta_ap, theta_b, theta_bp = planar
    kind, param = g.state.kind, g.state.param
    kw = {"x": param} if kind == "discorded" else {"eta": param} if kind == "werner" else {}
    if g.table.name == "prisoners_dilemma" and kind == "discorded":
        args = (g.y, g.z, param, theta_a, theta_b, theta_ap, theta_bp)
        return pd_closed("A", *args), pd_closed("B", *args)
    if g.table.name == "chsh" and kind in ("bell", "discorded", "werner"):
        ua = chsh_closed(kind, g.y, g.z, theta_a, theta_b, theta_ap, theta_bp, **kw)
        return ua, -ua
    if g.table.name == "modified_chsh" and kind in ("bell", "discorded", "werner"):
        ua = modchsh_closed(kind, g.y, g.z, theta_a, theta_b, theta_ap, theta_bp, **kw)
        return ua, -ua
    return None


# ---------------------------------------------------------------------------
# Bloch-correlator reduction used by the batch kernels: every payoff is an
# affine function of the single-qubit means and the two-qubit correlator.
# ---------------------------------------------------------------------------

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def state_correlators(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Single-qubit Bloch means r_A, r_B and the 3x3 correlation matrix of rho."""
    eye = np.eye(2, dtype=complex)
    r_a = np.array([np.trace(np.kron(p, eye) @ rho).real for p in _PAULI])
    r_b = np.array([np.trace(np.kron(eye, p) @ rho).real for p in _PAULI])
    tmat = np.array(
        [[np.trace(np.kron(pa, pb) @ rho).real for pb in _PAULI] for pa in _PAULI]
    )
    return r_a, r_b, tmat


def payoff_weights(table: PayoffTable, player: str) -> tuple[np.ndarray, ...]:
    """Outcome-moment weights (w0, w1, w2, w3), each shape (2, 2) over label pairs.

    w0 sums payoffs over outcomes, w1 weights by sigma_A, w2 by sigma_B and
    w3 by their product; together with the Bloch correlators they determine
    the expected payoff without building any matrices.
    """
    _check_player(player)
    idx = 0 if player == "A" else 1
    w = [np.zeros((2, 2)) for _ in range(4)]
    for i, alpha in enumerate(A_LABELS):
        for j, beta in enumerate(B_LABELS):
            for sa, sb in OUTCOME_PAIRS:
                u = table.payoff(alpha, beta, sa, sb)[idx]
                w[0][i, j] += u
                w[1][i, j] += sa * u
                w[2][i, j] += sb * u
                w[3][i, j] += sa * sb * u
    return tuple(w)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def _strength_to_json(s: Strength):
    return "projective" if s.is_projective else {"finite": s.y}


def _strength_from_json(obj, path: str) -> Strength:
    from .schema import SchemaError

    if obj == "projective":
        return Strength.projective()
    if isinstance(obj, dict) and set(obj) == {"finite"}:
        value = obj["finite"]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{path}.finite", f"expected a number, got {value!r}")
        try:
            return Strength.finite(value)
        except ValueError as exc:
            raise SchemaError(f"{path}.finite", str(exc)) from exc
    raise SchemaError(path, 'expected "projective" or {"finite": y}')


def _table_to_json(table: PayoffTable):
    if table.name in BUILTIN_TABLES:
        return table.name
    cells = []
    for alpha, beta in LABEL_PAIRS:
        for sa, sb in OUTCOME_PAIRS:
            ua, ub = table.payoff(alpha, beta, sa, sb)
            cells.append(
                {"alpha": alpha, "beta": beta, "sA": sa, "sB": sb, "uA": ua, "uB": ub}
            )
    return {"custom": cells}


def _table_from_json(obj, path: str) -> PayoffTable:
    from .schema import SchemaError

    if isinstance(obj, str):
        try:
            return builtin_table(obj)
        except UnknownTable as exc:
            raise SchemaError(path, str(exc)) from exc
    if isinstance(obj, dict) and set(obj) == {"custom"}:
        cells_json = obj["custom"]
        if not isinstance(cells_json, list) or len(cells_json) != 16:
            raise SchemaError(f"{path}.custom", "expected a list of 16 cells")
        cells = {}
        for idx, cell in enumerate(cells_json):
            cell_path = f"{path}.custom[{idx}]"
            if not isinstance(cell, dict):
                raise SchemaError(cell_path, "expected an object")
            try:
                key = (cell["alpha"], cell["beta"], int(cell["sA"]), int(cell["sB"]))
                value = (float(cell["uA"]), float(cell["uB"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError(cell_path, f"malformed cell: {exc}") from exc
            if key in cells:
                raise SchemaError(cell_path, f"duplicate cell {key}")
            cells[key] = value
        try:
            return PayoffTable("custom", cells)
        except ValueError as exc:
            raise SchemaError(f"{path}.custom", str(exc)) from exc
    raise SchemaError(path, 'expected a builtin table name or {"custom": [16 cells]}')


_ANGLE_KEYS = (
    ("theta_a", "phi_a"),
    ("theta_ap", "phi_ap"),
    ("theta_b", "phi_b"),
    ("theta_bp", "phi_bp"),
)


def gamespec_to_json(g: GameSpec) -> dict:
    """Serialize a GameSpec to {"game": ..., "state": ...}."""
    angles = {}
    for (theta_key, phi_key), d in zip(_ANGLE_KEYS, (*g.dirs_a, *g.dirs_b)):
        angles[theta_key] = d.theta
        angles[phi_key] = d.phi
    return {
        "game": {
            "table": _table_to_json(g.table),
            "prior": [float(v) for v in g.prior.as_flat()],
            "angles": angles,
            "y": _strength_to_json(g.y),
            "z": _strength_to_json(g.z),
        },
        "state": state_to_json(g.state),
    }


def gamespec_from_json(obj) -> GameSpec:
    """Load a GameSpec from {"game": ..., "state": ...}; raises SchemaError."""
    from .schema import SchemaError, require_mapping

    require_mapping(obj, "spec")
    game = require_mapping(obj.get("game"), "game")
    state = state_from_json(obj.get("state"))

    table = _table_from_json(game.get("table"), "game.table")
    prior_json = game.get("prior", [0.25, 0.25, 0.25, 0.25])
    if not isinstance(prior_json, list) or len(prior_json) != 4:
        raise SchemaError("game.prior", "expected a list of 4 probabilities")
    try:
        prior = Prior.from_flat([float(v) for v in prior_json])
    except (TypeError, ValueError) as exc:
        raise SchemaError("game.prior", str(exc)) from exc

    angles = game.get("angles", {})
    require_mapping(angles, "game.angles")
    dirs = []
    for theta_key, phi_key in _ANGLE_KEYS:
        theta = angles.get(theta_key, 0.0)
        phi = angles.get(phi_key, 0.0)
        for key, value in ((theta_key, theta), (phi_key, phi)):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"game.angles.{key}", f"expected a number, got {value!r}")
        dirs.append(BlochVector(float(theta), float(phi)))

    y = _strength_from_json(game.get("y", "projective"), "game.y")
    z = _strength_from_json(game.get("z", "projective"), "game.z")
    return GameSpec(
        dirs_a=(dirs[0], dirs[1]),
        dirs_b=(dirs[2], dirs[3]),
        y=y,
        z=z,
        prior=prior,
        table=table,
        state=state,
    )


def make_state(kind: str, *, x: float = 0.0, eta: float = 1.0) -> TwoQubitState:
    """Convenience constructor used by the CLI and tests."""
    if kind == "bell":
        return bell_state()
    if kind == "discorded":
        return discorded_state(x)
    if kind == "werner":
        return werner_state(eta)
    raise ValueError(f"unknown state kind {kind!r}")
