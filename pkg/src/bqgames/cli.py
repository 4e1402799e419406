"""Command-line front end: verify, payoff, optimize, sweep, sample.

Angles are radians; strength flags take a decimal or the literal ``inf`` for
the projective limit. CSV floats are printed with 12 significant digits,
which round-trips these magnitudes well within 1e-10; JSON floats use
Python's shortest exact representation. Exit codes: 0 success, 1 computation
failure (a verify FAIL), 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .analysis import OptimizationProblem, maximize, sample_rounds, sweep_fig1
from .backend import backend_name
from .checks import run_verification
from .game import (
    GameSpec,
    Prior,
    builtin_table,
    closed_form_payoffs,
    expected_payoff,
    gamespec_from_json,
    make_state,
)
from .quantum_core import BlochVector, Strength
from .schema import SchemaError
from .states import StateValidationError

GAME_ALIASES = {
    "pd": "prisoners_dilemma",
    "prisoners_dilemma": "prisoners_dilemma",
    "chsh": "chsh",
    "modified_chsh": "modified_chsh",
}

_ANGLE_FLAGS = (
    "theta_a",
    "theta_ap",
    "theta_b",
    "theta_bp",
    "phi_a",
    "phi_ap",
    "phi_b",
    "phi_bp",
)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _parse_strength(text: str) -> Strength:
    if text.strip().lower() in ("inf", "projective"):
        return Strength.projective()
    return Strength.finite(float(text))


def _parse_prior(text: str) -> Prior:
    parts = [float(v) for v in text.split(",")]
    return Prior.from_flat(parts)


def _add_game_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("game specification")
    group.add_argument("--spec", metavar="PATH", help="JSON file with game/state objects")
    group.add_argument("--game", choices=sorted(GAME_ALIASES), help="builtin payoff table")
    group.add_argument(
        "--state", choices=("bell", "discorded", "werner"), help="shared two-qubit state"
    )
    group.add_argument("--x", type=float, help="discorded-state correlation parameter")
    group.add_argument("--eta", type=float, help="werner-state mixing parameter")
    group.add_argument("--y", type=_parse_strength, help="player A strength (decimal or 'inf')")
    group.add_argument("--z", type=_parse_strength, help="player B strength (decimal or 'inf')")
    for name in _ANGLE_FLAGS:
        group.add_argument(
            f"--{name.replace('_', '-')}", type=float, dest=name, help=f"{name} in radians"
        )
    group.add_argument(
        "--prior", type=_parse_prior, help="four comma-separated probabilities, uniform default"
    )


def _resolve_gamespec(args: argparse.Namespace) -> GameSpec:
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = gamespec_from_json(json.load(fh))
    else:
        spec = None

    table = spec.table if spec else builtin_table("prisoners_dilemma")
    if args.game is not None:
        table = builtin_table(GAME_ALIASES[args.game])

    state = spec.state if spec else None
    state_kind = args.state or (state.kind if state is not None else "discorded")
    if args.state is not None or state is None or args.x is not None or args.eta is not None:
        if args.x is not None and state_kind != "discorded":
            raise SchemaError("--x", "only applies to the discorded state")
        if args.eta is not None and state_kind != "werner":
            raise SchemaError("--eta", "only applies to the werner state")
        if state_kind == "custom":
            if state is None:
                raise SchemaError("--state", "custom states require --spec")
        else:
            x = args.x if args.x is not None else (
                state.param if state is not None and state.kind == "discorded" else 0.0
            )
            eta = args.eta if args.eta is not None else (
                state.param if state is not None and state.kind == "werner" else 1.0
            )
            try:
                state = make_state(state_kind, x=x, eta=eta)
            except ValueError as exc:
                raise SchemaError("--eta" if state_kind == "werner" else "--x", str(exc))

    angles = {name: getattr(args, name) for name in _ANGLE_FLAGS}
    if spec is not None:
        for label, pos in (("a", 0), ("ap", 1)):
            angles[f"theta_{label}"] = (
                angles[f"theta_{label}"]
                if angles[f"theta_{label}"] is not None
                else spec.dirs_a[pos].theta
            )
            angles[f"phi_{label}"] = (
                angles[f"phi_{label}"] if angles[f"phi_{label}"] is not None else spec.dirs_a[pos].phi
            )
        for label, pos in (("b", 0), ("bp", 1)):
            angles[f"theta_{label}"] = (
                angles[f"theta_{label}"]
                if angles[f"theta_{label}"] is not None
                else spec.dirs_b[pos].theta
            )
            angles[f"phi_{label}"] = (
                angles[f"phi_{label}"] if angles[f"phi_{label}"] is not None else spec.dirs_b[pos].phi
            )
    resolved = {name: (value if value is not None else 0.0) for name, value in angles.items()}

    y = args.y if args.y is not None else (spec.y if spec else Strength.projective())
    z = args.z if args.z is not None else (spec.z if spec else Strength.projective())
    prior = args.prior if args.prior is not None else (spec.prior if spec else Prior.uniform())

    return GameSpec(
        dirs_a=(
            BlochVector(resolved["theta_a"], resolved["phi_a"]),
            BlochVector(resolved["theta_ap"], resolved["phi_ap"]),
        ),
        dirs_b=(
            BlochVector(resolved["theta_b"], resolved["phi_b"]),
            BlochVector(resolved["theta_bp"], resolved["phi_bp"]),
        ),
        y=y,
        z=z,
        prior=prior,
        table=table,
        state=state,
    )


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _cmd_verify(args: argparse.Namespace) -> int:
    spec_obj = None
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec_obj = json.load(fh)
    results = run_verification(draws=args.draws, seed=args.seed, spec_obj=spec_obj)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f" [{r.detail}]" if r.detail else ""
        print(
            f"{status} {r.name:<{width}} max_defect={r.defect:.3e} tol={r.tol:.0e}{detail}"
        )
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks FAILED")
        return 1
    print(f"all {len(results)} checks passed (backend: {backend_name()})")
    return 0


def _cmd_payoff(args: argparse.Namespace) -> int:
    g = _resolve_gamespec(args)
    ua, ub = expected_payoff(g)
    closed = closed_form_payoffs(g)
    if args.out == "json":
        payload = {"u_A": ua, "u_B": ub, "closed_form": None}
        if closed is not None:
            payload["closed_form"] = {
                "u_A": closed[0],
                "u_B": closed[1],
                "abs_diff_u_A": abs(ua - closed[0]),
                "abs_diff_u_B": abs(ub - closed[1]),
            }
        _emit_json(payload)
    else:
        if closed is None:
            print("u_A,u_B")
            print(f"{_fmt(ua)},{_fmt(ub)}")
        else:
            print("u_A,u_B,closed_u_A,closed_u_B,abs_diff_u_A,abs_diff_u_B")
            print(
                ",".join(
                    _fmt(v)
                    for v in (ua, ub, closed[0], closed[1], abs(ua - closed[0]), abs(ub - closed[1]))
                )
            )
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    g = _resolve_gamespec(args)
    free = tuple(p.strip() for p in args.free.split(",") if p.strip())
    problem = OptimizationProblem(
        base=g, free_params=free, objective=args.objective, maximize=not args.minimize
    )
    assignment, value = maximize(problem, grid_points=args.grid, tol=args.tol)
    if args.out == "json":
        _emit_json(
            {
                "assignment": {k: assignment[k] for k in sorted(assignment)},
                "objective": args.objective,
                "value": value,
            }
        )
    else:
        keys = sorted(assignment)
        print(",".join(keys + ["objective", "value"]))
        print(",".join([_fmt(assignment[k]) for k in keys] + [args.objective, _fmt(value)]))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    result = sweep_fig1(args.x_from, args.x_to, args.steps, grid_points=args.grid)
    if args.out == "json":
        _emit_json(
            {
                "rows": [
                    {
                        "x": r.x,
                        "theta_b_star": r.theta_b_star,
                        "u_A_max": r.u_a_max,
                        "u_B_max": r.u_b_max,
                    }
                    for r in result.rows
                ]
            }
        )
    else:
        print("x,theta_b_star,u_A_max,u_B_max")
        for r in result.rows:
            print(f"{_fmt(r.x)},{_fmt(r.theta_b_star)},{_fmt(r.u_a_max)},{_fmt(r.u_b_max)}")
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    g = _resolve_gamespec(args)
    estimate = sample_rounds(g, args.rounds, args.seed)
    if args.out == "json":
        _emit_json(
            {
                "n_rounds": estimate.n_rounds,
                "mean_u_A": estimate.mean_ua,
                "mean_u_B": estimate.mean_ub,
                "std_error_u_A": estimate.std_error_ua,
                "std_error_u_B": estimate.std_error_ub,
                "seed": estimate.seed,
            }
        )
    else:
        print("n_rounds,mean_u_A,mean_u_B,std_error_u_A,std_error_u_B,seed")
        print(
            ",".join(
                [
                    str(estimate.n_rounds),
                    _fmt(estimate.mean_ua),
                    _fmt(estimate.mean_ub),
                    _fmt(estimate.std_error_ua),
                    _fmt(estimate.std_error_ub),
                    str(estimate.seed),
                ]
            )
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bqgames",
        description="Bayesian quantum games under tunable-strength measurements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the invariant suite; exit 0 iff all pass")
    p_verify.add_argument("--draws", type=int, default=200, help="random draws per check")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--spec", metavar="PATH", help="also validate this game/state JSON")
    p_verify.set_defaults(handler=_cmd_verify)

    p_payoff = sub.add_parser("payoff", help="expected payoffs for one game")
    _add_game_flags(p_payoff)
    p_payoff.add_argument("--out", choices=("csv", "json"), default="json")
    p_payoff.set_defaults(handler=_cmd_payoff)

    p_opt = sub.add_parser("optimize", help="maximize a player's payoff over free parameters")
    _add_game_flags(p_opt)
    p_opt.add_argument(
        "--free",
        default="theta_a,theta_ap,theta_b,theta_bp",
        help="comma-separated free parameters",
    )
    p_opt.add_argument("--objective", choices=("A", "B"), default="A")
    p_opt.add_argument("--minimize", action="store_true")
    p_opt.add_argument("--grid", type=int, default=361, help="grid points per free parameter")
    p_opt.add_argument("--tol", type=float, default=1e-10)
    p_opt.add_argument("--out", choices=("csv", "json"), default="json")
    p_opt.set_defaults(handler=_cmd_optimize)

    p_sweep = sub.add_parser("sweep", help="max payoff vs correlation parameter x")
    p_sweep.add_argument("--x-from", dest="x_from", type=float, default=0.0)
    p_sweep.add_argument("--x-to", dest="x_to", type=float, default=2.0 * math.pi)
    p_sweep.add_argument("--steps", type=int, default=201)
    p_sweep.add_argument("--grid", type=int, default=361)
    p_sweep.add_argument("--out", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_sample = sub.add_parser("sample", help="Monte Carlo rounds of one game")
    _add_game_flags(p_sample)
    p_sample.add_argument("--rounds", type=int, default=10000)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--out", choices=("csv", "json"), default="json")
    p_sample.set_defaults(handler=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (SchemaError, StateValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
