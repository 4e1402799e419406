#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot paths behind the optimizer and the Monte Carlo sampler:

- payoff_grid: batch expected-payoff evaluation over measurement angles
  (the coarse-grid stage of ``optimize`` and every sweep scan);
- mc_counts: counter-based round sampling (the ``sample`` command).

Usage: python benchmarks/bench_backends.py [--points N] [--rounds N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

import bqgames._pykernels as pykernels
from bqgames.game import builtin_table, payoff_weights, state_correlators
from bqgames.states import discorded_state

try:
    import bqgames._ckernels as ckernels
except ImportError:
    ckernels = None


def payoff_args(points: int):
    rng = np.random.default_rng(0)
    state = discorded_state(0.8)
    r_a, r_b, tmat = state_correlators(state.rho)
    weights = payoff_weights(builtin_table("prisoners_dilemma"), "A")
    angles = np.ascontiguousarray(rng.uniform(0.0, 2.0 * math.pi, size=(8, points)))
    return (angles, math.tanh(0.7), math.tanh(1.3), np.full((2, 2), 0.25), *weights, r_a, r_b, tmat)


def mc_args(rounds: int):
    prior_cdf = np.array([0.25, 0.5, 0.75, 1.0])
    cond_cdf = np.array(
        [
            [0.1, 0.4, 0.8, 1.0],
            [0.3, 0.5, 0.9, 1.0],
            [0.25, 0.5, 0.75, 1.0],
            [0.7, 0.8, 0.9, 1.0],
        ]
    )
    return (prior_cdf, cond_cdf, rounds, pykernels.mix_seed(42), 0)


def best_of(fn, args, repeats: int = 5) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=1_000_000, help="payoff grid size")
    parser.add_argument("--rounds", type=int, default=2_000_000, help="Monte Carlo rounds")
    args = parser.parse_args()

    backends = [("python", pykernels)]
    if ckernels is not None:
        backends.append(("compiled", ckernels))
    else:
        print("compiled kernels not built; timing the numpy fallback only")

    grid_args = payoff_args(args.points)
    round_args = mc_args(args.rounds)

    print(f"{'kernel':<14} {'backend':<10} {'time':>10} {'throughput':>16}")
    results: dict[tuple[str, str], float] = {}
    for name, impl in backends:
        t = best_of(impl.payoff_grid, grid_args)
        results[("payoff_grid", name)] = t
        print(f"{'payoff_grid':<14} {name:<10} {t * 1e3:>8.1f} ms {args.points / t / 1e6:>11.1f} M/s")
    for name, impl in backends:
        t = best_of(impl.mc_counts, round_args)
        results[("mc_counts", name)] = t
        print(f"{'mc_counts':<14} {name:<10} {t * 1e3:>8.1f} ms {args.rounds / t / 1e6:>11.1f} M/s")

    if ckernels is not None:
        for kernel in ("payoff_grid", "mc_counts"):
            ratio = results[(kernel, "python")] / results[(kernel, "compiled")]
            print(f"{kernel}: compiled is {ratio:.1f}x the numpy fallback")
        # sanity: identical Monte Carlo counts across backends
        same = np.array_equal(pykernels.mc_counts(*round_args), ckernels.mc_counts(*round_args))
        print(f"mc_counts bit-identical across backends: {same}")


if __name__ == "__main__":
    main()
