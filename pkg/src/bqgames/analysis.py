"""Optimization over detector settings, max-payoff sweeps and Monte Carlo play.

The optimizer is derivative-free: a coarse product grid locates the global
basin, then cyclic coordinate descent rescans each free parameter at full
grid resolution and polishes it with golden-section search. Objectives are
smooth trig polynomials in at most five parameters, so this is reliable and
deterministic. Full product grids are capped at MAX_GRID_EVALS points (the
per-axis count is thinned when the cap would be exceeded); the per-coordinate
rescans always run at the requested resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .game import (
    LABEL_PAIRS,
    GameSpec,
    outcome_distribution,
    payoff_weights,
    pd_closed,
    state_correlators,
)
from .quantum_core import Strength
from .states import discorded_state, werner_state

__all__ = [
    "FREE_PARAMETERS",
    "MAX_FREE_DIMS",
    "OptimizationProblem",
    "SweepRow",
    "SweepResult",
    "SampleEstimate",
    "maximize",
    "sweep_fig1",
    "sample_rounds",
]

TWO_PI = 2.0 * math.pi

FREE_PARAMETERS = ("theta_a", "theta_ap", "theta_b", "theta_bp", "x", "eta")
_ANGLE_ROW = {"theta_a": 0, "theta_ap": 2, "theta_b": 4, "theta_bp": 6}

MAX_FREE_DIMS = 5
#: Full product grids are thinned per axis beyond this many evaluations.
MAX_GRID_EVALS = 1 << 21
_EVAL_CHUNK = 1 << 17
#: Grid values within this of the maximum tie-break to the smallest assignment.
TIE_TOL = 1e-12
#: Coordinate moves must improve by more than this, so rounding noise on flat
#: objectives cannot drive oscillation between equal-value points.
_IMPROVEMENT_GUARD = 1e-13
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
#: Probe offset for the parabolic polish; wide enough to see curvature above noise.
_POLISH_H = 1e-5

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class OptimizationProblem:
    """Maximize (or minimize) one player's expected payoff over free parameters.

    Free parameters are any distinct subset of FREE_PARAMETERS; angles and x
    range over [0, 2*pi), eta over [0, 1]. Freeing "x" requires a discorded
    base state and "eta" a werner one, since the state is rebuilt per value.
    """

    base: GameSpec
    free_params: tuple[str, ...]
    objective: str = "A"
    maximize: bool = True

    def __post_init__(self) -> None:
        params = tuple(self.free_params)
        if not params:
            raise ValueError("at least one free parameter is required")
        if len(params) > MAX_FREE_DIMS:
            raise ValueError(f"at most {MAX_FREE_DIMS} free parameters are supported")
        if len(set(params)) != len(params):
            raise ValueError("free parameters must be distinct")
        for p in params:
            if p not in FREE_PARAMETERS:
                raise ValueError(f"unknown free parameter {p!r}")
        if self.objective not in ("A", "B"):
            raise ValueError(f"objective must be 'A' or 'B', got {self.objective!r}")
        if "x" in params and self.base.state.kind != "discorded":
            raise ValueError("freeing x requires a discorded base state")
        if "eta" in params and self.base.state.kind != "werner":
            raise ValueError("freeing eta requires a werner base state")
        ordered = tuple(p for p in FREE_PARAMETERS if p in params)
        object.__setattr__(self, "free_params", ordered)


class _Objective:
    """Vectorized signed objective for one OptimizationProblem."""

    def __init__(self, problem: OptimizationProblem):
        g = problem.base
        self.sign = 1.0 if problem.maximize else -1.0
        self.t_y = g.y.tanh_value
        self.t_z = g.z.tanh_value
        self.prior = g.prior.p
        self.weights = payoff_weights(g.table, problem.objective)
        self.base_angles = np.empty(8)
        for label, row in (("a", 0), ("ap", 2), ("b", 4), ("bp", 6)):
            d = g.direction(label)
            self.base_angles[row] = d.theta
            self.base_angles[row + 1] = d.phi
        self.state_param = None
        for p in problem.free_params:
            if p in ("x", "eta"):
                self.state_param = p
        self.state_kind = g.state.kind
        self.base_correlators = state_correlators(g.state.rho)
        self._correlator_cache: dict[float, tuple] = {}

    def _correlators(self, value: float | None):
        if value is None:
            return self.base_correlators
        cached = self._correlator_cache.get(value)
        if cached is None:
            if self.state_param == "x":
                rho = discorded_state(value).rho
            else:
                rho = werner_state(value).rho
            cached = state_correlators(rho)
            if len(self._correlator_cache) < 4096:
                self._correlator_cache[value] = cached
        return cached

    def _grid(self, angles: np.ndarray, state_value: float | None) -> np.ndarray:
        r_a, r_b, tmat = self._correlators(state_value)
        return backend.payoff_grid(
            angles, self.t_y, self.t_z, self.prior, *self.weights, r_a, r_b, tmat
        )

    def values(self, assign: dict[str, np.ndarray], n: int) -> np.ndarray:
        """Signed objective at n parameter points given per-parameter value arrays."""
        angles = np.ascontiguousarray(
            np.broadcast_to(self.base_angles[:, None], (8, n)).copy()
        )
        state_values = None
        for param, arr in assign.items():
            if param in _ANGLE_ROW:
                angles[_ANGLE_ROW[param]] = arr
            else:
                state_values = np.asarray(arr, dtype=float)
        if state_values is None:
            return self.sign * self._grid(angles, None)
        out = np.empty(n)
        for value in np.unique(state_values):
            mask = state_values == value
            out[mask] = self._grid(np.ascontiguousarray(angles[:, mask]), float(value))
        return self.sign * out

    def value(self, assign: dict[str, float]) -> float:
        arrays = {k: np.array([v]) for k, v in assign.items()}
        return float(self.values(arrays, 1)[0])


def _axis_grid(param: str, points: int) -> np.ndarray:
    if param == "eta":
        return np.linspace(0.0, 1.0, points)
    return np.arange(points) * (TWO_PI / points)


def _axis_spacing(param: str, points: int) -> float:
    return 1.0 / (points - 1) if param == "eta" else TWO_PI / points


def _wrap(param: str, value: float) -> float:
    if param == "eta":
        return min(max(value, 0.0), 1.0)
    return value % TWO_PI


def _thinned_points(requested: int, dims: int) -> int:
    points = requested
    if points**dims > MAX_GRID_EVALS:
        points = max(8, int(round(MAX_GRID_EVALS ** (1.0 / dims))))
        while points > 8 and points**dims > MAX_GRID_EVALS:
            points -= 1
    return points


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; returns the best probed point."""
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    if fc >= fd:
        best_x, best_v = c, fc
    else:
        best_x, best_v = d, fd
    while (b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
            if fd > best_v:
                best_x, best_v = d, fd
        else:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
            if fc > best_v:
                best_x, best_v = c, fc
    return best_x, best_v


def _parabolic_polish(
    f, x0: float, v0: float, h: float, lo: float | None = None, hi: float | None = None
) -> tuple[float, float]:
    """Refine an interior maximum by fitting a parabola through x0 +- h.

    Near a smooth maximum the objective is flat to double precision over a
    width ~sqrt(eps), so value-only section search cannot localize the argmax
    further; the parabola uses curvature from outside that plateau and lands
    within ~1e-11. Plateau ties are accepted so the centered point wins.
    """
    x_best, v_best = x0, v0
    for _ in range(2):
        if lo is not None:
            h = min(h, x_best - lo, hi - x_best)
            if h <= 0.0:
                break
        f1, f3 = f(x_best - h), f(x_best + h)
        slope = (f3 - f1) / (2.0 * h)
        curve = (f3 - 2.0 * v_best + f1) / (h * h)
        if not (curve < 0.0):
            break
        step = -slope / curve
        if not math.isfinite(step) or abs(step) > h:
            break
        x_new = x_best + step
        v_new = f(x_new)
        if v_new >= v_best:
            x_best, v_best = x_new, v_new
        h = max(h * 0.25, 1e-7)
    return x_best, v_best


def _scan_argmax(values: np.ndarray) -> tuple[int, int]:
    """Indices of the exact maximum and of the first value within TIE_TOL of it."""
    exact = int(np.argmax(values))
    vmax = values[exact]
    window = int(np.argmax(values >= vmax - TIE_TOL))
    return exact, window


def maximize(
    problem: OptimizationProblem, grid_points: int = 361, tol: float = 1e-10
) -> tuple[dict[str, float], float]:
    """Best assignment of the free parameters and the corresponding payoff.

    Deterministic for fixed inputs: grid ties within TIE_TOL resolve to the
    lexicographically smallest assignment, and the result never falls below
    the best coarse-grid value.
    """
    if grid_points < 8:
        raise ValueError("grid_points must be at least 8")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    objective = _Objective(problem)
    free = problem.free_params
    dims = len(free)

    coarse_points = _thinned_points(grid_points, dims)
    axes = [_axis_grid(p, coarse_points) for p in free]
    shape = tuple(len(ax) for ax in axes)
    total = int(np.prod(shape))
    values = np.empty(total)
    for start in range(0, total, _EVAL_CHUNK):
        stop = min(start + _EVAL_CHUNK, total)
        flat = np.arange(start, stop)
        index_arrays = np.unravel_index(flat, shape)
        assign = {p: axes[k][index_arrays[k]] for k, p in enumerate(free)}
        values[start:stop] = objective.values(assign, stop - start)

    exact_idx, window_idx = _scan_argmax(values)
    grid_value = float(values[exact_idx])
    grid_assign = {
        p: float(axes[k][i]) for k, (p, i) in enumerate(zip(free, np.unravel_index(exact_idx, shape)))
    }
    current = {
        p: float(axes[k][i]) for k, (p, i) in enumerate(zip(free, np.unravel_index(window_idx, shape)))
    }
    current_value = float(values[window_idx])

    scan_axes = {p: _axis_grid(p, grid_points) for p in free}
    spacing = {p: _axis_spacing(p, grid_points) for p in free}
    for _ in range(60):
        moved = 0.0
        for param in free:
            xs = scan_axes[param]
            assign = {param: xs}
            for other, fixed in current.items():
                if other != param:
                    assign[other] = np.full(len(xs), fixed)
            vals = objective.values(assign, len(xs))
            _, scan_idx = _scan_argmax(vals)
            cand_x, cand_v = float(xs[scan_idx]), float(vals[scan_idx])

            h = spacing[param]
            lo, hi = cand_x - h, cand_x + h
            if param == "eta":
                lo, hi = max(lo, 0.0), min(hi, 1.0)

            def probe(v: float, _param=param) -> float:
                point = dict(current)
                point[_param] = v
                return objective.value(point)

            gold_x, gold_v = _golden_max(probe, lo, hi, tol)
            if gold_v > cand_v:
                cand_x, cand_v = gold_x, gold_v
            bounds = (0.0, 1.0) if param == "eta" else (None, None)
            cand_x, cand_v = _parabolic_polish(
                probe, cand_x, cand_v, _POLISH_H, bounds[0], bounds[1]
            )
            if cand_v > current_value + _IMPROVEMENT_GUARD:
                moved = max(moved, abs(cand_x - current[param]))
                current[param] = _wrap(param, cand_x)
                current_value = cand_v
        if moved < tol:
            break

    if grid_value > current_value:
        current, current_value = grid_assign, grid_value
    assignment = {p: current[p] for p in free}
    value = current_value if problem.maximize else -current_value
    return assignment, value


@dataclass(frozen=True)
class SweepRow:
    x: float
    theta_b_star: float
    u_a_max: float
    u_b_max: float


@dataclass(frozen=True)
class SweepResult:
    """Max payoffs per correlation value x; rows are strictly increasing in x."""

    rows: tuple[SweepRow, ...]

    def __post_init__(self) -> None:
        xs = [r.x for r in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("sweep values must be strictly increasing")


def sweep_fig1(
    x_from: float, x_to: float, steps: int, grid_points: int = 361
) -> SweepResult:
    """Max-over-theta_b payoff of player B at no measurement by A, projective B.

    For each x on the inclusive linear grid the closed-form payoff
    3/2 - (1/8)[cos(theta_b) + cos(theta_b - x)] is maximized over theta_b;
    player A's payoff is the constant 3/2. The resulting envelope is
    3/2 + (1/4)|cos(x/2)|, extremal exactly at multiples of pi.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if not (x_to > x_from):
        raise ValueError("x_to must exceed x_from")
    if grid_points < 8:
        raise ValueError("grid_points must be at least 8")
    no_meas = Strength.finite(0.0)
    projective = Strength.projective()
    xs_axis = _axis_grid("theta_b", grid_points)
    spacing = _axis_spacing("theta_b", grid_points)
    rows = []
    for x in np.linspace(x_from, x_to, steps):
        x = float(x)

        def u_b(theta_b: float) -> float:
            return pd_closed("B", no_meas, projective, x, 0.0, theta_b, 0.0, 0.0)

        vals = np.array([u_b(t) for t in xs_axis])
        _, idx = _scan_argmax(vals)
        best_x, best_v = float(xs_axis[idx]), float(vals[idx])
        gold_x, gold_v = _golden_max(u_b, best_x - spacing, best_x + spacing, 1e-12)
        if gold_v > best_v:
            best_x, best_v = gold_x, gold_v
        best_x, best_v = _parabolic_polish(u_b, best_x, best_v, _POLISH_H)
        rows.append(SweepRow(x=x, theta_b_star=best_x % TWO_PI, u_a_max=1.5, u_b_max=best_v))
    return SweepResult(tuple(rows))


@dataclass(frozen=True)
class SampleEstimate:
    """Monte Carlo payoff estimate; identical inputs give identical bits."""

    n_rounds: int
    mean_ua: float
    mean_ub: float
    std_error_ua: float
    std_error_ub: float
    seed: int

    def __post_init__(self) -> None:
        if self.n_rounds < 1:
            raise ValueError("n_rounds must be at least 1")
        if self.std_error_ua < 0.0 or self.std_error_ub < 0.0:
            raise ValueError("standard errors must be nonnegative")


def _mean_and_stderr(counts: np.ndarray, payoffs: np.ndarray, n: int) -> tuple[float, float]:
    total = float((counts * payoffs).sum())
    total_sq = float((counts * payoffs**2).sum())
    mean = total / n
    if n < 2:
        return mean, 0.0
    variance = max((total_sq - n * mean * mean) / (n - 1), 0.0)
    return mean, math.sqrt(variance / n)


def sample_rounds(g: GameSpec, n_rounds: int, seed: int) -> SampleEstimate:
    """Play n_rounds rounds of the game and report mean payoffs with standard errors.

    Each round draws a direction pair from the prior and an outcome pair from
    the conditional distribution, using a counter-based substream derived
    from (seed, round index): results are identical regardless of execution
    order or how rounds are partitioned across workers.
    """
    if n_rounds < 1:
        raise ValueError("n_rounds must be at least 1")
    prior_cdf = np.cumsum(g.prior.as_flat())
    prior_cdf[-1] = 1.0
    cond_cdf = np.empty((4, 4))
    for li, pair in enumerate(LABEL_PAIRS):
        dist = outcome_distribution(g, pair)
        total = float(dist.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(
                f"outcome distribution for {pair} deviates from 1 by {abs(total - 1.0):.3e}"
            )
        cdf = np.cumsum(dist / total)
        cdf[-1] = 1.0
        cond_cdf[li] = cdf
    base = backend.mix_seed(int(seed))
    counts = backend.mc_counts(prior_cdf, cond_cdf, int(n_rounds), base, 0)
    counts_f = counts.astype(np.float64)
    pay_a, pay_b = g.table.as_arrays()
    mean_a, se_a = _mean_and_stderr(counts_f, pay_a, int(n_rounds))
    mean_b, se_b = _mean_and_stderr(counts_f, pay_b, int(n_rounds))
    return SampleEstimate(
        n_rounds=int(n_rounds),
        mean_ua=mean_a,
        mean_ub=mean_b,
        std_error_ua=se_a,
        std_error_ub=se_b,
        seed=int(seed),
    )
