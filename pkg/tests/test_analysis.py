import itertools
import math

import numpy as np
import pytest

from bqgames.analysis import (
    OptimizationProblem,
    SampleEstimate,
    maximize,
    sample_rounds,
    sweep_fig1,
)
from bqgames.game import GameSpec, Prior, builtin_table, expected_payoff
from bqgames.quantum_core import BlochVector, Strength
from bqgames.states import bell_state, discorded_state, werner_state

NO_MEAS = Strength.finite(0.0)
PROJ = Strength.projective()
TSIRELSON = (4 + 2 * math.sqrt(2)) / 8


def game(table, state, thetas=(0.0, 0.0, 0.0, 0.0), y=PROJ, z=PROJ):
    return GameSpec(
        dirs_a=(BlochVector(thetas[0]), BlochVector(thetas[1])),
        dirs_b=(BlochVector(thetas[2]), BlochVector(thetas[3])),
        y=y,
        z=z,
        prior=Prior.uniform(),
        table=builtin_table(table),
        state=state,
    )


class TestOptimizationProblem:
    def test_orders_free_params_canonically(self):
        p = OptimizationProblem(
            base=game("chsh", discorded_state(0.0)),
            free_params=("x", "theta_b", "theta_a"),
        )
        assert p.free_params == ("theta_a", "theta_b", "x")

    def test_rejects_duplicates_and_unknowns(self):
        base = game("chsh", bell_state())
        with pytest.raises(ValueError):
            OptimizationProblem(base=base, free_params=("theta_a", "theta_a"))
        with pytest.raises(ValueError):
            OptimizationProblem(base=base, free_params=("theta_q",))
        with pytest.raises(ValueError):
            OptimizationProblem(base=base, free_params=())

    def test_state_family_constraints(self):
        with pytest.raises(ValueError):
            OptimizationProblem(base=game("chsh", bell_state()), free_params=("x",))
        with pytest.raises(ValueError):
            OptimizationProblem(base=game("chsh", discorded_state(0.2)), free_params=("eta",))
        OptimizationProblem(base=game("chsh", werner_state(0.5)), free_params=("eta",))


class TestMaximize:
    def test_chsh_bell_projective_optimum(self):
        problem = OptimizationProblem(
            base=game("chsh", bell_state()),
            free_params=("theta_a", "theta_ap", "theta_b", "theta_bp"),
        )
        _, value = maximize(problem)
        assert value == pytest.approx(TSIRELSON, abs=1e-6)

    def test_chsh_discorded_classical_limit(self):
        problem = OptimizationProblem(
            base=game("chsh", discorded_state(0.0)),
            free_params=("theta_a", "theta_ap", "theta_b", "theta_bp", "x"),
        )
        _, value = maximize(problem)
        assert value == pytest.approx(0.75, abs=1e-6)

    def test_pd_control_point(self):
        problem = OptimizationProblem(
            base=game("prisoners_dilemma", discorded_state(0.0), y=NO_MEAS, z=PROJ),
            free_params=("theta_b",),
            objective="B",
        )
        assignment, value = maximize(problem)
        assert value == pytest.approx(1.75, abs=1e-9)
        assert assignment["theta_b"] == pytest.approx(math.pi, abs=1e-9)

    def test_werner_eta_optimum(self):
        # at the Tsirelson angles u_B grows linearly in eta, so eta* = 1 and
        # the best value is -(4 - 2*sqrt(2))/8
        problem = OptimizationProblem(
            base=game("chsh", werner_state(0.2), thetas=(0.0, math.pi / 2, math.pi / 4, -math.pi / 4)),
            free_params=("eta",),
            objective="B",
        )
        assignment, value = maximize(problem)
        assert assignment["eta"] == pytest.approx(1.0, abs=1e-9)
        assert value == pytest.approx(-(4 - 2 * math.sqrt(2)) / 8, abs=1e-9)

    def test_minimize_flag(self):
        problem = OptimizationProblem(
            base=game("chsh", bell_state()),
            free_params=("theta_b",),
            maximize=False,
        )
        _, value = maximize(problem)
        ref = OptimizationProblem(
            base=game("chsh", bell_state()), free_params=("theta_b",), objective="B"
        )
        _, best_b = maximize(ref)
        assert value == pytest.approx(-best_b, abs=1e-12)

    def test_never_below_coarse_grid(self):
        base = game(
            "chsh",
            discorded_state(1.1),
            thetas=(0.3, 1.1, 2.0, 4.0),
            y=Strength.finite(0.9),
            z=Strength.finite(1.7),
        )
        problem = OptimizationProblem(base=base, free_params=("theta_a", "theta_bp"))
        points = 33
        assignment, value = maximize(problem, grid_points=points)
        axis = np.arange(points) * (2 * math.pi / points)
        grid_best = -math.inf
        for ta, tbp in itertools.product(axis, axis):
            g = game(
                "chsh",
                discorded_state(1.1),
                thetas=(float(ta), 1.1, 2.0, float(tbp)),
                y=Strength.finite(0.9),
                z=Strength.finite(1.7),
            )
            grid_best = max(grid_best, expected_payoff(g)[0])
        assert value >= grid_best - 1e-12

    def test_deterministic(self):
        problem = OptimizationProblem(
            base=game("chsh", bell_state()), free_params=("theta_b", "theta_bp")
        )
        first = maximize(problem, grid_points=61)
        second = maximize(problem, grid_points=61)
        assert first == second

    def test_constant_objective_ties_break_to_zero(self):
        # player A's payoff at zero strength is flat; lexicographic tie-break
        problem = OptimizationProblem(
            base=game("prisoners_dilemma", discorded_state(0.4), y=NO_MEAS, z=PROJ),
            free_params=("theta_b", "theta_bp"),
            objective="A",
        )
        assignment, value = maximize(problem, grid_points=41)
        assert value == pytest.approx(1.5, abs=1e-12)
        assert assignment == {"theta_b": 0.0, "theta_bp": 0.0}

    def test_rejects_bad_arguments(self):
        problem = OptimizationProblem(base=game("chsh", bell_state()), free_params=("theta_a",))
        with pytest.raises(ValueError):
            maximize(problem, grid_points=4)
        with pytest.raises(ValueError):
            maximize(problem, tol=0.0)


class TestSweep:
    def test_known_control_points(self):
        result = sweep_fig1(0.0, 2.0 * math.pi, steps=3)
        assert [r.x for r in result.rows] == pytest.approx([0.0, math.pi, 2.0 * math.pi])
        assert [r.u_b_max for r in result.rows] == pytest.approx([1.75, 1.5, 1.75], abs=1e-9)
        assert all(r.u_a_max == 1.5 for r in result.rows)
        assert result.rows[0].theta_b_star == pytest.approx(math.pi, abs=1e-6)

    def test_matches_envelope(self):
        result = sweep_fig1(0.0, 2.0 * math.pi, steps=201)
        for row in result.rows:
            envelope = 1.5 + 0.25 * abs(math.cos(row.x / 2.0))
            assert abs(row.u_b_max - envelope) <= 1e-6

    def test_even_in_x(self):
        result = sweep_fig1(-5.0, 5.0, steps=41)
        values = {round(r.x, 12): r.u_b_max for r in result.rows}
        for r in result.rows:
            mirrored = values[round(-r.x, 12)]
            assert abs(r.u_b_max - mirrored) <= 1e-9

    def test_two_pi_periodic(self):
        first = sweep_fig1(0.0, math.pi, steps=9)
        second = sweep_fig1(2.0 * math.pi, 3.0 * math.pi, steps=9)
        for a, b in zip(first.rows, second.rows):
            assert abs(a.u_b_max - b.u_b_max) <= 1e-9

    def test_extrema_at_multiples_of_pi(self):
        result = sweep_fig1(0.0, 2.0 * math.pi, steps=9)
        by_x = {i: r.u_b_max for i, r in enumerate(result.rows)}
        assert by_x[0] == pytest.approx(1.75, abs=1e-9)
        assert by_x[4] == pytest.approx(1.5, abs=1e-9)
        assert by_x[8] == pytest.approx(1.75, abs=1e-9)
        interior = [by_x[i] for i in (1, 2, 3, 5, 6, 7)]
        assert all(1.5 < v < 1.75 for v in interior)

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            sweep_fig1(1.0, 1.0, steps=5)
        with pytest.raises(ValueError):
            sweep_fig1(2.0, 1.0, steps=5)
        with pytest.raises(ValueError):
            sweep_fig1(0.0, 1.0, steps=1)


class TestSampleRounds:
    def test_deterministic_bitwise(self):
        g = game("prisoners_dilemma", discorded_state(0.7), thetas=(0.1, 0.9, 2.2, 4.4),
                 y=Strength.finite(0.5), z=Strength.finite(1.0))
        a = sample_rounds(g, 5000, seed=123)
        b = sample_rounds(g, 5000, seed=123)
        assert a == b

    def test_seed_changes_estimate(self):
        g = game("chsh", bell_state(), thetas=(0.0, math.pi / 2, math.pi / 4, -math.pi / 4))
        a = sample_rounds(g, 2000, seed=1)
        b = sample_rounds(g, 2000, seed=2)
        assert a.mean_ua != b.mean_ua

    def test_single_round_exact_cell(self):
        g = game("prisoners_dilemma", discorded_state(0.3), y=Strength.finite(0.4), z=PROJ)
        est = sample_rounds(g, 1, seed=7)
        cells = {g.table.payoff(a, b, sa, sb) for a in ("a", "ap") for b in ("b", "bp")
                 for sa in (+1, -1) for sb in (+1, -1)}
        assert (est.mean_ua, est.mean_ub) in cells
        assert est.std_error_ua == 0.0 and est.std_error_ub == 0.0
        assert sample_rounds(g, 1, seed=7) == est

    def test_mean_converges_to_engine(self):
        g = game("chsh", bell_state(), thetas=(0.0, math.pi / 2, math.pi / 4, -math.pi / 4))
        est = sample_rounds(g, 200_000, seed=11)
        ua, _ = expected_payoff(g)
        assert abs(est.mean_ua - ua) <= 4 * est.std_error_ua

    def test_stderr_scales_with_sqrt_n(self):
        g = game("prisoners_dilemma", discorded_state(0.9), thetas=(0.3, 1.0, 2.0, 5.0),
                 y=Strength.finite(0.8), z=Strength.finite(1.2))
        ratios = []
        for seed in range(10):
            small = sample_rounds(g, 3000, seed=seed)
            large = sample_rounds(g, 9000, seed=seed)
            ratios.append(small.std_error_ua / large.std_error_ua)
        mean_ratio = float(np.mean(ratios))
        assert math.sqrt(3) * 0.8 <= mean_ratio <= math.sqrt(3) * 1.2

    def test_rejects_bad_rounds(self):
        g = game("chsh", bell_state())
        with pytest.raises(ValueError):
            sample_rounds(g, 0, seed=1)

    def test_estimate_validation(self):
        with pytest.raises(ValueError):
            SampleEstimate(0, 0.0, 0.0, 0.0, 0.0, 1)
        with pytest.raises(ValueError):
            SampleEstimate(5, 0.0, 0.0, -0.1, 0.0, 1)
