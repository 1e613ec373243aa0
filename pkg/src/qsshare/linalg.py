"""Exact linear algebra over prime fields.

Matrices are integer numpy arrays with entries in [0, p); rows are vectors.
A basis is a matrix whose rows are linearly independent; the empty basis is
a (0, cols) array. Routines never mutate their arguments, and pivoting is
deterministic (lowest column first, then lowest row), so reduced forms,
solution picks and basis outputs are reproducible across runs.
"""

from __future__ import annotations

import numpy as np

from .errors import NoSolutionError, ZeroInverseError

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


def check_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported field size {p}; expected a prime <= 13")
    return p


def as_field(arr, p: int) -> np.ndarray:
    """Copy into a canonical 2-d int64 array reduced mod p."""
    out = np.atleast_2d(np.asarray(arr, dtype=np.int64)) % p
    return out


def as_field_vector(arr, p: int) -> np.ndarray:
    out = np.asarray(arr, dtype=np.int64).reshape(-1) % p
    return out


def empty_basis(cols: int) -> np.ndarray:
    return np.zeros((0, cols), dtype=np.int64)


def fp_inv(x: int, p: int) -> int:
    """Multiplicative inverse of x in F_p."""
    x = int(x) % p
    if x == 0:
        raise ZeroInverseError(f"0 has no inverse in F_{p}")
    return pow(x, -1, p)


def rref(A, p: int) -> tuple[np.ndarray, tuple[int, ...], int]:
    """Reduced row-echelon form of A over F_p.

    Returns (R, pivots, rank) where pivots are the pivot column indices in
    increasing order. The row space of R equals the row space of A.
    """
    R = as_field(A, p)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * fp_inv(R[r, c], p)) % p
        for j in range(rows):
            if j != r and R[j, c]:
                R[j] = (R[j] - R[j, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, tuple(pivots), len(pivots)


def rank(A, p: int) -> int:
    return rref(A, p)[2]


def row_basis(A, p: int) -> np.ndarray:
    """Canonical basis (rref nonzero rows) of the row space of A."""
    R, _, rk = rref(A, p)
    return R[:rk].copy()


def row_space_contains(A, v, p: int) -> bool:
    """True when v lies in the row space of A."""
    A = as_field(A, p)
    v = as_field_vector(v, p)
    if not v.any():
        return True
    stacked = np.vstack([A, v.reshape(1, -1)])
    return rank(stacked, p) == rank(A, p)


def row_space_equal(A, B, p: int) -> bool:
    a = row_basis(A, p)
    b = row_basis(B, p)
    return a.shape == b.shape and bool(np.array_equal(a, b))


def nullspace(A, p: int) -> np.ndarray:
    """Basis of {x : A x = 0}, one row per basis vector.

    Each basis vector has a 1 in one free column and zeros in the others,
    which makes the output canonical for the fixed pivoting rule.
    """
    A = as_field(A, p)
    _, cols = A.shape
    R, pivots, rk = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = (-R[r, f]) % p
    return basis


def solve_linear(A, b, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Solve A x = b over F_p.

    Returns (x, kernel) where x is the particular solution with every free
    variable set to zero and kernel is a nullspace basis of A (rows).
    Raises NoSolutionError when b is outside the column space of A.
    """
    A = as_field(A, p)
    b = as_field_vector(b, p)
    rows, cols = A.shape
    if b.shape[0] != rows:
        raise NoSolutionError(f"right-hand side length {b.shape[0]} != {rows} rows")
    aug = np.hstack([A, b.reshape(-1, 1)])
    R, pivots, _ = rref(aug, p)
    if cols in pivots:
        raise NoSolutionError("right-hand side outside the column space")
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x, nullspace(A, p)


def intersect_spans(A, B, p: int) -> np.ndarray:
    """Canonical basis of rowspace(A) ∩ rowspace(B)."""
    A = row_basis(A, p)
    B = row_basis(B, p)
    if A.shape[1] != B.shape[1]:
        raise ValueError("spans live in different ambient spaces")
    if A.shape[0] == 0 or B.shape[0] == 0:
        return empty_basis(A.shape[1])
    # (x | y) with xᵀA + yᵀB = 0 gives xᵀA = -yᵀB, a vector in both spaces.
    stacked = np.vstack([A, B])
    kernel = nullspace(stacked.T, p)
    if kernel.shape[0] == 0:
        return empty_basis(A.shape[1])
    combos = (kernel[:, : A.shape[0]] @ A) % p
    return row_basis(combos, p)
