"""Runnable invariant suite behind the ``verify`` CLI command.

Each check draws randomized inputs from a seeded generator, measures the
worst defect against the contract tolerance and reports PASS/FAIL. An
optional game/state JSON object is validated as part of the run so callers
can gate their own inputs on the same tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .game import (
    GameSpec,
    LABEL_PAIRS,
    Prior,
    builtin_table,
    chsh_closed,
    expected_payoff,
    modchsh_closed,
    outcome_distribution,
    pd_closed,
)
from .quantum_core import (
    OUTCOMES,
    BlochVector,
    Strength,
    ZeroProbabilityOutcome,
    completeness_defect,
    kraus,
    max_norm_diff,
    measurement_op,
    post_measurement_state,
    projector,
    weight,
)
from .states import (
    StateValidationError,
    bell_state,
    discorded_state,
    state_from_json,
    werner_state,
)

__all__ = ["CheckResult", "run_verification"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    defect: float
    tol: float
    detail: str = field(default="")


def _random_strength(rng: np.random.Generator) -> Strength:
    if rng.random() < 0.2:
        return Strength.projective()
    return Strength.finite(float(rng.uniform(0.0, 4.0)))


def _random_direction(rng: np.random.Generator, phi_zero: bool = False) -> BlochVector:
    theta = float(rng.uniform(0.0, 2.0 * math.pi))
    phi = 0.0 if phi_zero else float(rng.uniform(0.0, 2.0 * math.pi))
    return BlochVector(theta, phi)


def _random_state(rng: np.random.Generator):
    kind = rng.integers(0, 3)
    if kind == 0:
        return bell_state()
    if kind == 1:
        return discorded_state(float(rng.uniform(-2.0 * math.pi, 2.0 * math.pi)))
    return werner_state(float(rng.uniform(0.0, 1.0)))


def _random_gamespec(rng: np.random.Generator, phi_zero: bool = False) -> GameSpec:
    table = builtin_table(("prisoners_dilemma", "chsh", "modified_chsh")[rng.integers(0, 3)])
    return GameSpec(
        dirs_a=(_random_direction(rng, phi_zero), _random_direction(rng, phi_zero)),
        dirs_b=(_random_direction(rng, phi_zero), _random_direction(rng, phi_zero)),
        y=_random_strength(rng),
        z=_random_strength(rng),
        prior=Prior(rng.dirichlet(np.ones(4)).reshape(2, 2)),
        table=table,
        state=_random_state(rng),
    )


def _check_weight_normalization(rng, draws):
    worst = 0.0
    for _ in range(draws):
        s = _random_strength(rng)
        worst = max(worst, abs(weight(+1, s) ** 2 + weight(-1, s) ** 2 - 1.0))
    return worst, 1e-15


def _check_projectors(rng, draws):
    worst = 0.0
    for _ in range(draws):
        d = _random_direction(rng)
        for sigma in OUTCOMES:
            p = projector(sigma, d)
            worst = max(worst, max_norm_diff(p @ p, p))
            worst = max(worst, max_norm_diff(p, p.conj().T))
        worst = max(
            worst, max_norm_diff(projector(+1, d) + projector(-1, d), np.eye(2))
        )
    return worst, 1e-14


def _check_measurement_completeness(rng, draws):
    worst = 0.0
    for _ in range(draws):
        d = _random_direction(rng)
        s = _random_strength(rng)
        acc = sum(
            measurement_op(sig, d, s).conj().T @ measurement_op(sig, d, s)
            for sig in OUTCOMES
        )
        worst = max(worst, max_norm_diff(acc, np.eye(2)))
    return worst, 1e-13


def _check_projective_limit(rng, draws):
    worst = 0.0
    proj = Strength.projective()
    for _ in range(draws):
        d = _random_direction(rng)
        for sigma in OUTCOMES:
            worst = max(
                worst, max_norm_diff(measurement_op(sigma, d, proj), projector(sigma, d))
            )
    return worst, 1e-15


def _check_kraus_completeness(rng, draws):
    worst = 0.0
    for _ in range(draws):
        dirs_a = (_random_direction(rng), _random_direction(rng))
        dirs_b = (_random_direction(rng), _random_direction(rng))
        prior = rng.dirichlet(np.ones(4)).reshape(2, 2)
        worst = max(
            worst,
            completeness_defect(dirs_a, dirs_b, _random_strength(rng), _random_strength(rng), prior),
        )
    return worst, 1e-12


def _check_outcome_normalization(rng, draws):
    worst = 0.0
    for _ in range(draws):
        g = _random_gamespec(rng)
        for pair in LABEL_PAIRS:
            worst = max(worst, abs(float(outcome_distribution(g, pair).sum()) - 1.0))
    return worst, 1e-12


def _check_post_measurement(rng, draws):
    # The state constructor enforces trace within 1e-12 and the eigenvalue
    # floor -1e-10; hitting either bound surfaces as a validation error.
    worst = 0.0
    for _ in range(draws):
        state = _random_state(rng)
        k = kraus(
            _random_direction(rng),
            _random_direction(rng),
            (+1, -1)[rng.integers(0, 2)],
            (+1, -1)[rng.integers(0, 2)],
            _random_strength(rng),
            _random_strength(rng),
            1.0,
        )
        try:
            post = post_measurement_state(state, k)
        except ZeroProbabilityOutcome:
            continue
        except StateValidationError as exc:
            return exc.defect, 1e-10
        worst = max(worst, abs(np.trace(post.rho).real - 1.0))
        worst = max(worst, max(0.0, -post.min_eigenvalue()))
    return worst, 1e-10


def _check_closed_forms(rng, draws):
    worst = 0.0
    uniform = Prior.uniform()
    for _ in range(draws):
        thetas = rng.uniform(0.0, 2.0 * math.pi, 4)
        dirs_a = (BlochVector(thetas[0]), BlochVector(thetas[1]))
        dirs_b = (BlochVector(thetas[2]), BlochVector(thetas[3]))
        y, z = _random_strength(rng), _random_strength(rng)
        x = float(rng.uniform(-2.0 * math.pi, 2.0 * math.pi))
        eta = float(rng.uniform(0.0, 1.0))
        args = (y, z, thetas[0], thetas[2], thetas[1], thetas[3])

        def payoff(table, state):
            return expected_payoff(
                GameSpec(dirs_a, dirs_b, y, z, uniform, builtin_table(table), state)
            )

        ua, ub = payoff("prisoners_dilemma", discorded_state(x))
        worst = max(worst, abs(ua - pd_closed("A", y, z, x, *args[2:])))
        worst = max(worst, abs(ub - pd_closed("B", y, z, x, *args[2:])))
        ua, _ = payoff("chsh", bell_state())
        worst = max(worst, abs(ua - chsh_closed("bell", *args)))
        ua, _ = payoff("chsh", discorded_state(x))
        worst = max(worst, abs(ua - chsh_closed("discorded", *args, x=x)))
        ua, _ = payoff("chsh", werner_state(eta))
        worst = max(worst, abs(ua - chsh_closed("werner", *args, eta=eta)))
        ua, _ = payoff("modified_chsh", bell_state())
        worst = max(worst, abs(ua - modchsh_closed("bell", *args)))
        ua, _ = payoff("modified_chsh", discorded_state(x))
        worst = max(worst, abs(ua - modchsh_closed("discorded", *args, x=x)))
        ua, _ = payoff("modified_chsh", werner_state(eta))
        worst = max(worst, abs(ua - modchsh_closed("werner", *args, eta=eta)))
    return worst, 1e-10


def _check_zero_sum(rng, draws):
    worst = 0.0
    for _ in range(draws):
        g = _random_gamespec(rng)
        if g.table.name == "prisoners_dilemma":
            g = GameSpec(
                g.dirs_a, g.dirs_b, g.y, g.z, g.prior, builtin_table("chsh"), g.state
            )
        ua, ub = expected_payoff(g)
        worst = max(worst, abs(ua + ub))
    return worst, 1e-12


def run_verification(
    draws: int = 200, seed: int = 0, spec_obj: dict | None = None
) -> list[CheckResult]:
    """Run every invariant check; returns one CheckResult per check."""
    rng = np.random.default_rng(seed)
    suite = [
        ("weight_normalization", _check_weight_normalization),
        ("projector_identities", _check_projectors),
        ("measurement_completeness", _check_measurement_completeness),
        ("projective_limit", _check_projective_limit),
        ("kraus_completeness", _check_kraus_completeness),
        ("outcome_normalization", _check_outcome_normalization),
        ("post_measurement_state", _check_post_measurement),
        ("closed_form_equivalence", _check_closed_forms),
        ("zero_sum_tables", _check_zero_sum),
    ]
    results = []
    for name, fn in suite:
        defect, tol = fn(rng, draws)
        results.append(CheckResult(name, defect <= tol, defect, tol))
    if spec_obj is not None:
        results.extend(_spec_checks(spec_obj))
    return results


def _spec_checks(spec_obj: dict) -> list[CheckResult]:
    results = []
    game = spec_obj.get("game")
    if isinstance(game, dict) and isinstance(game.get("prior"), list):
        try:
            total = sum(float(v) for v in game["prior"])
            defect = abs(total - 1.0)
        except (TypeError, ValueError):
            defect = math.inf
        results.append(
            CheckResult("spec_prior_normalization", defect <= 1e-12, defect, 1e-12)
        )
    state = spec_obj.get("state")
    if state is not None:
        try:
            state_from_json(state)
        except StateValidationError as exc:
            results.append(
                CheckResult(
                    "spec_state_valid",
                    False,
                    exc.defect,
                    0.0,
                    detail=type(exc).__name__,
                )
            )
        else:
            results.append(CheckResult("spec_state_valid", True, 0.0, 0.0))
    return results
