"""Bayesian two-player quantum games under tunable-strength measurements.

Library layout:

- :mod:`bqgames.quantum_core` -- measurement directions, strengths, projectors,
  measurement and Kraus operators, post-measurement state update.
- :mod:`bqgames.states` -- validated two-qubit density matrices.
- :mod:`bqgames.game` -- payoff tables, priors, the numeric payoff engine and
  the closed-form payoff expressions for every built-in game.
- :mod:`bqgames.analysis` -- derivative-free optimization, the max-payoff
  sweep and deterministic Monte Carlo sampling.
- :mod:`bqgames.cli` -- the ``bqgames`` command-line tool.

Hot kernels (batch payoff evaluation, Monte Carlo counting) run on a compiled
extension when it is built, with a numpy fallback selected at import; see
:func:`bqgames.backend.backend_name`.
"""

from .analysis import (
    OptimizationProblem,
    SampleEstimate,
    SweepResult,
    SweepRow,
    maximize,
    sample_rounds,
    sweep_fig1,
)
from .backend import backend_name
from .game import (
    GameSpec,
    PayoffTable,
    Prior,
    UnknownTable,
    builtin_table,
    chsh_closed,
    closed_form_payoffs,
    conditional_probability,
    expected_payoff,
    gamespec_from_json,
    gamespec_to_json,
    modchsh_closed,
    outcome_distribution,
    pd_closed,
    pd_weak,
)
from .quantum_core import (
    OUTCOMES,
    BlochVector,
    Strength,
    ZeroProbabilityOutcome,
    completeness_defect,
    kraus,
    measurement_op,
    post_measurement_state,
    projector,
    weight,
)
from .states import (
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    StateValidationError,
    TwoQubitState,
    bell_state,
    custom_state,
    discorded_state,
    state_from_json,
    state_to_json,
    werner_state,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # quantum_core
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
    # states
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
    # game
    "GameSpec",
    "PayoffTable",
    "Prior",
    "UnknownTable",
    "builtin_table",
    "conditional_probability",
    "outcome_distribution",
    "expected_payoff",
    "pd_closed",
    "pd_weak",
    "chsh_closed",
    "modchsh_closed",
    "closed_form_payoffs",
    "gamespec_to_json",
    "gamespec_from_json",
    # analysis
    "OptimizationProblem",
    "SweepRow",
    "SweepResult",
    "SampleEstimate",
    "maximize",
    "sweep_fig1",
    "sample_rounds",
]
