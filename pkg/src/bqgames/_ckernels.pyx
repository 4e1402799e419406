# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring bqgames._pykernels.

The Monte Carlo counter must be bit-identical to the numpy fallback: same
SplitMix64 integer stream, same CDF comparison semantics, integer counts.
"""

from libc.math cimport cos, sin

import numpy as np

ctypedef unsigned long long u64

cdef double _U01 = 1.0 / 9007199254740992.0  # 2**-53


cdef inline u64 _fin(u64 z) noexcept nogil:
    z ^= z >> 30
    z *= <u64>0xBF58476D1CE4E5B9
    z ^= z >> 27
    z *= <u64>0x94D049BB133111EB
    z ^= z >> 31
    return z


cdef inline double _uniform(u64 base, u64 counter) noexcept nogil:
    return <double>(_fin(base + (counter + 1) * <u64>0x9E3779B97F4A7C15) >> 11) * _U01


def mc_counts(prior_cdf, cond_cdf, n_rounds, base, start_round=0):
    """Tally rounds into a 4x4 uint64 count matrix; see _pykernels.mc_counts."""
    cdef const double[::1] pc = np.ascontiguousarray(prior_cdf, dtype=np.float64)
    cdef const double[:, ::1] cc = np.ascontiguousarray(cond_cdf, dtype=np.float64)
    if pc.shape[0] != 4 or cc.shape[0] != 4 or cc.shape[1] != 4:
        raise ValueError("expected prior_cdf shape (4,) and cond_cdf shape (4, 4)")
    cdef long long n = int(n_rounds)
    if n < 0:
        raise ValueError("n_rounds must be nonnegative")
    counts_arr = np.zeros((4, 4), dtype=np.uint64)
    cdef u64[:, ::1] counts = counts_arr
    cdef u64 b = int(base) & 0xFFFFFFFFFFFFFFFF
    cdef u64 first = int(start_round) & 0xFFFFFFFFFFFFFFFF
    cdef u64 c
    cdef long long r
    cdef double u_label, u_outcome
    cdef int li, oi
    with nogil:
        for r in range(n):
            c = (first + <u64>r) * 2
            u_label = _uniform(b, c)
            u_outcome = _uniform(b, c + 1)
            li = 0
            while li < 3 and u_label >= pc[li]:
                li += 1
            oi = 0
            while oi < 3 and u_outcome >= cc[li, oi]:
                oi += 1
            counts[li, oi] += 1
    return counts_arr


def payoff_grid(angles, double t_y, double t_z, prior, w0, w1, w2, w3, r_a, r_b, tmat):
    """Expected payoff per angle column; see _pykernels.payoff_grid."""
    cdef const double[:, ::1] ang = np.ascontiguousarray(angles, dtype=np.float64)
    if ang.shape[0] != 8:
        raise ValueError("angles must have shape (8, n)")
    cdef const double[:, ::1] p = np.ascontiguousarray(prior, dtype=np.float64)
    cdef const double[:, ::1] v0 = np.ascontiguousarray(w0, dtype=np.float64)
    cdef const double[:, ::1] v1 = np.ascontiguousarray(w1, dtype=np.float64)
    cdef const double[:, ::1] v2 = np.ascontiguousarray(w2, dtype=np.float64)
    cdef const double[:, ::1] v3 = np.ascontiguousarray(w3, dtype=np.float64)
    cdef const double[::1] ra = np.ascontiguousarray(r_a, dtype=np.float64)
    cdef const double[::1] rb = np.ascontiguousarray(r_b, dtype=np.float64)
    cdef const double[:, ::1] tm = np.ascontiguousarray(tmat, dtype=np.float64)
    cdef Py_ssize_t n = ang.shape[1]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t idx
    cdef int i, j, k
    cdef double na[2][3]
    cdef double nb[2][3]
    cdef double ma[2]
    cdef double mb[2]
    cdef double st, acc, corr, t0, t1, t2
    cdef double tyz = t_y * t_z
    with nogil:
        for idx in range(n):
            for k in range(2):
                st = sin(ang[2 * k, idx])
                na[k][0] = st * cos(ang[2 * k + 1, idx])
                na[k][1] = st * sin(ang[2 * k + 1, idx])
                na[k][2] = cos(ang[2 * k, idx])
                ma[k] = ra[0] * na[k][0] + ra[1] * na[k][1] + ra[2] * na[k][2]
            for k in range(2):
                st = sin(ang[4 + 2 * k, idx])
                nb[k][0] = st * cos(ang[4 + 2 * k + 1, idx])
                nb[k][1] = st * sin(ang[4 + 2 * k + 1, idx])
                nb[k][2] = cos(ang[4 + 2 * k, idx])
                mb[k] = rb[0] * nb[k][0] + rb[1] * nb[k][1] + rb[2] * nb[k][2]
            acc = 0.0
            for i in range(2):
                for j in range(2):
                    t0 = tm[0, 0] * nb[j][0] + tm[0, 1] * nb[j][1] + tm[0, 2] * nb[j][2]
                    t1 = tm[1, 0] * nb[j][0] + tm[1, 1] * nb[j][1] + tm[1, 2] * nb[j][2]
                    t2 = tm[2, 0] * nb[j][0] + tm[2, 1] * nb[j][1] + tm[2, 2] * nb[j][2]
                    corr = na[i][0] * t0 + na[i][1] * t1 + na[i][2] * t2
                    acc += p[i, j] * (
                        v0[i, j]
                        + t_y * v1[i, j] * ma[i]
                        + t_z * v2[i, j] * mb[j]
                        + tyz * v3[i, j] * corr
                    )
            out[idx] = 0.25 * acc
    return out_arr
