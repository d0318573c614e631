"""Dense real linear algebra sized for small power-of-two dimensions.

State vectors are 1-D float64 arrays of power-of-two length with unit L2
norm; matrices are square 2-D float64 arrays. Everything is real on
purpose: the constructions in this package only ever need entries from
{0, +-2**(-k/2)}, so complex support is deliberately omitted. Exact values
like 1/sqrt(2) are not representable in binary floating point, hence the
two tolerances below: MATRIX_TOL for matrix identities and NORM_TOL for
norms and probabilities.

All functions are pure and never mutate their arguments, so they are safe
to call from multiple threads.
"""

from __future__ import annotations

import numpy as np

MATRIX_TOL = 1e-12
NORM_TOL = 1e-9

# Exhaustive sweeps above this many variables would silently take hours;
# callers reject larger instances loudly instead.
MAX_DIM = 1 << 16


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def as_matrix(m: np.ndarray) -> np.ndarray:
    """Coerce to a square float64 matrix, raising ValueError otherwise."""
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def as_state(v: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    """Coerce to a unit-norm float64 vector of power-of-two length."""
    a = np.asarray(v, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"expected a vector, got shape {a.shape}")
    if not is_power_of_two(a.shape[0]):
        raise ValueError(f"state length {a.shape[0]} is not a power of two")
    norm_sq = float(a @ a)
    if abs(norm_sq - 1.0) > tol:
        raise ValueError(f"state is not normalized: |v|^2 = {norm_sq!r}")
    return a


def apply(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Matrix-vector product; raises ValueError on a dimension mismatch."""
    m = as_matrix(matrix)
    v = np.asarray(vector, dtype=np.float64)
    if v.ndim != 1 or m.shape[1] != v.shape[0]:
        raise ValueError(f"cannot apply {m.shape} matrix to length-{v.shape} vector")
    return m @ v


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product of two square matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def hadamard_power(t: int) -> np.ndarray:
    """The t-fold tensor power of the 2x2 Hadamard matrix.

    Entry (i, j) equals 2**(-t/2) * (-1)**popcount(i & j). t = 0 is
    rejected rather than defined as the 1x1 identity so that construction
    bugs surface early.
    """
    if t < 1:
        raise ValueError(f"hadamard_power requires t >= 1, got {t}")
    k = 1 << t
    if k > MAX_DIM:
        raise ValueError(f"dimension 2**{t} exceeds the supported maximum {MAX_DIM}")
    scale = 2.0 ** (-t / 2.0)
    out = np.empty((k, k), dtype=np.float64)
    cols = np.arange(k, dtype=np.int64)
    block = 512
    for lo in range(0, k, block):
        hi = min(lo + block, k)
        rows = np.arange(lo, hi, dtype=np.int64)
        parity = np.bitwise_count(rows[:, None] & cols[None, :]) & 1
        out[lo:hi] = scale * (1.0 - 2.0 * parity)
    return out


def is_unitary(matrix: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    """True iff M @ M.T equals the identity elementwise within tol."""
    m = as_matrix(matrix)
    product = m @ m.T
    np.fill_diagonal(product, product.diagonal() - 1.0)
    return float(np.abs(product).max()) <= tol
