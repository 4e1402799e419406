"""Pure-Python (numpy) kernels: batch payoff evaluation and Monte Carlo counting.

This is the fallback for :mod:`bqgames._ckernels`; both implementations must
agree exactly on the Monte Carlo counts, which is why the random stream is a
counter-based SplitMix64 over integers rather than a stateful generator:
round r consumes the stream values at counters 2r and 2r+1 only, so any
partition of rounds across workers reproduces the same counts.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_U01 = 1.0 / 9007199254740992.0  # 2**-53

_PHI_U = np.uint64(_PHI)
_MIX1_U = np.uint64(_MIX1)
_MIX2_U = np.uint64(_MIX2)

_CHUNK_ROUNDS = 1 << 18


def mix_seed(seed: int) -> int:
    """SplitMix64 finalizer of the user seed; the base of every substream."""
    z = int(seed) & _MASK64
    z ^= z >> 30
    z = (z * _MIX1) & _MASK64
    z ^= z >> 27
    z = (z * _MIX2) & _MASK64
    z ^= z >> 31
    return z


def _uniforms(base: int, counters: np.ndarray) -> np.ndarray:
    """Uniform [0, 1) deviates at the given uint64 counters (vectorized SplitMix64)."""
    z = np.uint64(base) + (counters + np.uint64(1)) * _PHI_U
    z = z ^ (z >> np.uint64(30))
    z = z * _MIX1_U
    z = z ^ (z >> np.uint64(27))
    z = z * _MIX2_U
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _U01


def mc_counts(
    prior_cdf: np.ndarray,
    cond_cdf: np.ndarray,
    n_rounds: int,
    base: int,
    start_round: int = 0,
) -> np.ndarray:
    """Tally game rounds into a (label pair) x (outcome pair) uint64 count matrix.

    Round r draws the label pair by inverse CDF from ``prior_cdf`` (counter
    2r) and the outcome pair from ``cond_cdf[label]`` (counter 2r+1).
    """
    prior_cdf = np.ascontiguousarray(prior_cdf, dtype=np.float64)
    cond_cdf = np.ascontiguousarray(cond_cdf, dtype=np.float64)
    if prior_cdf.shape != (4,) or cond_cdf.shape != (4, 4):
        raise ValueError("expected prior_cdf shape (4,) and cond_cdf shape (4, 4)")
    n_rounds = int(n_rounds)
    if n_rounds < 0:
        raise ValueError("n_rounds must be nonnegative")
    counts = np.zeros(16, dtype=np.uint64)
    done = 0
    while done < n_rounds:
        m = min(_CHUNK_ROUNDS, n_rounds - done)
        rounds = np.arange(start_round + done, start_round + done + m, dtype=np.uint64)
        u_label = _uniforms(base, rounds * np.uint64(2))
        u_outcome = _uniforms(base, rounds * np.uint64(2) + np.uint64(1))
        label = np.searchsorted(prior_cdf, u_label, side="right")
        np.clip(label, 0, 3, out=label)
        outcome = (u_outcome[:, None] >= cond_cdf[label]).sum(axis=1)
        np.clip(outcome, 0, 3, out=outcome)
        counts += np.bincount(label * 4 + outcome, minlength=16).astype(np.uint64)
        done += m
    return counts.reshape(4, 4)


def payoff_grid(
    angles: np.ndarray,
    t_y: float,
    t_z: float,
    prior: np.ndarray,
    w0: np.ndarray,
    w1: np.ndarray,
    w2: np.ndarray,
    w3: np.ndarray,
    r_a: np.ndarray,
    r_b: np.ndarray,
    tmat: np.ndarray,
) -> np.ndarray:
    """Expected payoff at each column of ``angles`` via the Bloch-correlator form.

    ``angles`` has shape (8, n), rows ordered (theta_a, phi_a, theta_ap,
    phi_ap, theta_b, phi_b, theta_bp, phi_bp). The remaining arguments are
    the precomputed game data: measurement tanh values, the 2x2 prior, the
    outcome-moment weights of one player and the state correlators.
    """
    angles = np.asarray(angles, dtype=np.float64)
    if angles.ndim != 2 or angles.shape[0] != 8:
        raise ValueError("angles must have shape (8, n)")
    sin_t = np.sin(angles[0::2])
    dirs_x = sin_t * np.cos(angles[1::2])
    dirs_y = sin_t * np.sin(angles[1::2])
    dirs_z = np.cos(angles[0::2])

    def mean_along(r, k):
        return r[0] * dirs_x[k] + r[1] * dirs_y[k] + r[2] * dirs_z[k]

    m_a = [mean_along(r_a, 0), mean_along(r_a, 1)]
    m_b = [mean_along(r_b, 2), mean_along(r_b, 3)]
    t_rows = [
        [
            tmat[u, 0] * dirs_x[2 + j] + tmat[u, 1] * dirs_y[2 + j] + tmat[u, 2] * dirs_z[2 + j]
            for u in range(3)
        ]
        for j in range(2)
    ]
    out = np.zeros(angles.shape[1])
    tyz = t_y * t_z
    for i in range(2):
        for j in range(2):
            corr = (
                dirs_x[i] * t_rows[j][0]
                + dirs_y[i] * t_rows[j][1]
                + dirs_z[i] * t_rows[j][2]
            )
            out += prior[i, j] * (
                w0[i, j] + t_y * w1[i, j] * m_a[i] + t_z * w2[i, j] * m_b[j] + tyz * w3[i, j] * corr
            )
    out *= 0.25
    return out
