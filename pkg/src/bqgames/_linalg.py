"""Small dense complex-matrix helpers shared by the operator and state modules.

Everything here works on fixed-size 2x2 and 4x4 arrays; storage is dense,
row-major complex128 throughout.
"""

from __future__ import annotations

import numpy as np


def as_complex_matrix(entries, dim: int, what: str = "matrix") -> np.ndarray:
    """Coerce to a (dim, dim) complex128 array and reject non-finite entries."""
    mat = np.asarray(entries, dtype=complex)
    if mat.size == dim * dim:
        mat = mat.reshape(dim, dim)
    if mat.shape != (dim, dim):
        raise ValueError(f"{what} must have shape ({dim}, {dim}), got {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError(f"{what} contains non-finite entries")
    return mat


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; maps a pair of 2x2 operators to one 4x4 operator.

    The 2x2 case is assembled directly (same multiplications as np.kron,
    several times faster at this size).
    """
    if a.shape == (2, 2) and b.shape == (2, 2):
        return np.einsum("ij,kl->ikjl", a, b).reshape(4, 4)
    return np.kron(a, b)


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def real_trace(a: np.ndarray) -> float:
    return float(np.trace(a).real)


def max_norm_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise max-norm of a - b."""
    return float(np.max(np.abs(a - b)))


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def min_eigenvalue(a: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix (symmetrized first)."""
    sym = 0.5 * (a + a.conj().T)
    return float(np.linalg.eigvalsh(sym)[0])


def frozen(a: np.ndarray) -> np.ndarray:
    """Return a read-only contiguous copy, for storage on immutable values."""
    out = np.ascontiguousarray(a)
    if out is a:
        out = a.copy()
    out.setflags(write=False)
    return out
