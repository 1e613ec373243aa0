"""Symplectic spaces over F_p and the share-code structure built on them.

A length-2n row (a_1 .. a_n | b_1 .. b_n) records the X/Z exponent pattern of
an n-qudit Pauli operator; the first n entries are the X part, the last n the
Z part. The symplectic product of (a|b) and (a'|b') is sum(a_i b'_i - a'_i b_i)
mod p; two patterns commute as operators exactly when it vanishes.

Share subsets are sorted tuples of 1-based indices into {1..n}. "Available"
always means the shares a reconstructing coalition holds, "missing" their
complement (erased positions).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (
    NotCorrectableError,
    NotInDualError,
    NotInSelfDualError,
    NotSelfOrthogonalError,
    TooLargeError,
    ValidationError,
)

MAX_ENUMERATION_SHARES = 12


def share_set(members, n: int) -> tuple[int, ...]:
    """Validate and canonicalize a subset of {1..n}."""
    out = tuple(sorted({int(i) for i in members}))
    for i in out:
        if not 1 <= i <= n:
            raise ValueError(f"share index {i} outside 1..{n}")
    return out


def complement(members, n: int) -> tuple[int, ...]:
    members = set(share_set(members, n))
    return tuple(i for i in range(1, n + 1) if i not in members)


def _coordinate_columns(members, n: int) -> list[int]:
    """Column indices (a and b parts) carried by the given shares."""
    out = []
    for i in share_set(members, n):
        out.append(i - 1)
        out.append(i - 1 + n)
    return sorted(out)


def split_parts(vec, n: int) -> tuple[np.ndarray, np.ndarray]:
    vec = np.asarray(vec, dtype=np.int64).reshape(-1)
    if vec.shape[0] != 2 * n:
        raise ValueError(f"expected a length-{2 * n} vector, got {vec.shape[0]}")
    return vec[:n], vec[n:]


def support(vec, n: int) -> tuple[int, ...]:
    """1-based share indices where the pattern acts nontrivially."""
    a, b = split_parts(vec, n)
    return tuple(i + 1 for i in range(n) if a[i] or b[i])


def symplectic_product(x, y, p: int) -> int:
    x = linalg.as_field_vector(x, p)
    y = linalg.as_field_vector(y, p)
    if x.shape != y.shape or x.shape[0] % 2:
        raise ValueError("operands must be equal-length (a|b) vectors")
    n = x.shape[0] // 2
    return int((x[:n] @ y[n:] - y[:n] @ x[n:]) % p)


def symplectic_gram(A, B, p: int) -> np.ndarray:
    """Matrix of pairwise symplectic products between rows of A and rows of B."""
    A = linalg.as_field(A, p)
    B = linalg.as_field(B, p)
    n = A.shape[1] // 2
    return (A[:, :n] @ B[:, n:].T - A[:, n:] @ B[:, :n].T) % p


def dual(basis, n: int, p: int) -> np.ndarray:
    """Canonical basis of {y : <x, y> = 0 for every row x}."""
    basis = linalg.as_field(basis, p)
    if basis.shape[0] == 0:
        return linalg.row_basis(np.eye(2 * n, dtype=np.int64), p)
    # <x, y> = (-b_x | a_x) . y, so the dual is the kernel of the twisted rows.
    twisted = np.hstack([(-basis[:, n:]) % p, basis[:, :n]])
    return linalg.nullspace(twisted, p)


def coordinate_section(basis, members, n: int, p: int) -> np.ndarray:
    """Canonical basis of rowspace(basis) ∩ F_p^J for J = members."""
    basis = linalg.as_field(basis, p)
    if basis.shape[0] == 0:
        return linalg.empty_basis(2 * n)
    outside = _coordinate_columns(complement(members, n), n)
    if not outside:
        return linalg.row_basis(basis, p)
    kernel = linalg.nullspace(basis[:, outside].T, p)
    if kernel.shape[0] == 0:
        return linalg.empty_basis(2 * n)
    return linalg.row_basis((kernel @ basis) % p, p)


def project_vector(vec, members, n: int) -> np.ndarray:
    """Restrict (a|b) to the given shares, preserving order, as (a_J|b_J)."""
    a, b = split_parts(vec, n)
    idx = [i - 1 for i in share_set(members, n)]
    return np.concatenate([a[idx], b[idx]])


def project_rows(basis, members, n: int, p: int) -> np.ndarray:
    """Canonical basis of the projection of a row space onto given shares."""
    basis = linalg.as_field(basis, p)
    members = share_set(members, n)
    if basis.shape[0] == 0:
        return linalg.empty_basis(2 * len(members))
    rows = [project_vector(row, members, n) for row in basis]
    return linalg.row_basis(np.array(rows, dtype=np.int64), p)


# ---------------------------------------------------------------------------
# code specifications


@dataclass
class CodeSpec:
    """A prime-qudit stabilizer share code.

    stabilizer : (n-k, 2n) basis of the self-orthogonal space C
    self_dual  : (n, 2n) basis rows of a space Cm with C ⊆ Cm = Cm-dual
    logical_x  : (k, 2n) representatives x_i, one per secret qudit
    logical_z  : (k, 2n) partners z_i ∈ Cm with <x_i, z_j> = delta_ij
    """

    p: int
    n: int
    k: int
    stabilizer: np.ndarray
    self_dual: np.ndarray
    logical_x: np.ndarray
    logical_z: np.ndarray

    def dual_basis(self) -> np.ndarray:
        return dual(self.stabilizer, self.n, self.p)


def validate_code(code: CodeSpec) -> None:
    """Check every structural invariant; raise ValidationError on failure."""
    p, n, k = code.p, code.n, code.k
    linalg.check_prime(p)
    if not (0 <= k <= n):
        raise ValidationError(f"need 0 <= k <= n, got k={k}, n={n}")
    stab = linalg.as_field(code.stabilizer, p)
    cm = linalg.as_field(code.self_dual, p)
    lx = linalg.as_field(code.logical_x, p) if k else linalg.empty_basis(2 * n)
    lz = linalg.as_field(code.logical_z, p) if k else linalg.empty_basis(2 * n)
    for name, arr, rows in (
        ("stabilizer", stab, n - k),
        ("self_dual", cm, n),
        ("logical_x", lx, k),
        ("logical_z", lz, k),
    ):
        if arr.shape != (rows, 2 * n):
            raise ValidationError(f"{name} must be {rows} rows of length {2 * n}, got {arr.shape}")
    if linalg.rank(stab, p) != n - k:
        raise ValidationError("stabilizer rows are linearly dependent")
    _check_self_orthogonal(stab, p)
    if linalg.rank(cm, p) != n:
        raise ValidationError("self-dual space must have dimension n")
    if symplectic_gram(cm, cm, p).any():
        raise ValidationError("self-dual rows are not mutually orthogonal")
    for i, row in enumerate(stab):
        if not linalg.row_space_contains(cm, row, p):
            raise ValidationError(f"stabilizer row {i + 1} outside the self-dual space")
    if k == 0:
        return
    dual_basis = code.dual_basis()
    for i, row in enumerate(lx):
        if not linalg.row_space_contains(dual_basis, row, p):
            raise ValidationError(f"logical x {i + 1} outside the dual space")
    for i, row in enumerate(lz):
        if not linalg.row_space_contains(cm, row, p):
            raise ValidationError(f"logical z {i + 1} outside the self-dual space")
    pairing = symplectic_gram(lx, lz, p)
    if not np.array_equal(pairing, np.eye(k, dtype=np.int64) % p):
        raise ValidationError(f"logical pairing is not the identity matrix:\n{pairing}")
    if symplectic_gram(lx, lx, p).any():
        raise ValidationError("logical x representatives do not mutually commute")
    if symplectic_gram(lz, lz, p).any():
        raise ValidationError("logical z representatives do not mutually commute")
    if linalg.rank(np.vstack([cm, lx]), p) != n + k:
        raise ValidationError("logical x cosets are dependent modulo the self-dual space")


def _check_self_orthogonal(rows: np.ndarray, p: int, what: str = "stabilizer") -> None:
    gram = symplectic_gram(rows, rows, p)
    bad = np.argwhere(gram != 0)
    if bad.size:
        i, j = bad[0]
        raise NotSelfOrthogonalError(
            f"{what} rows {i + 1} and {j + 1} have symplectic product {gram[i, j]}"
        )


def _hyperbolic_reduce(vectors: np.ndarray, x, z, p: int) -> np.ndarray:
    """Make every row orthogonal to the hyperbolic pair (x, z), <x,z> = 1."""
    if vectors.shape[0] == 0:
        return vectors
    out = []
    for w in vectors:
        lam = symplectic_product(w, z, p)
        mu = symplectic_product(x, w, p)
        out.append((w - lam * x - mu * z) % p)
    return np.array(out, dtype=np.int64)


def self_dual_completion(
    stabilizer, n: int, p: int
) -> tuple[np.ndarray, list[tuple[np.ndarray, np.ndarray]]]:
    """Extend a self-orthogonal space C to a self-dual space and logical pairs.

    Returns (self_dual_rows, pairs). The self-dual rows are the stabilizer
    rows followed by the z_i; the pairs (x_i, z_i) form a hyperbolic basis of
    dual(C)/C: <x_i, z_j> = delta_ij and <x_i, x_j> = <z_i, z_j> = 0.
    Deterministic for the fixed pivoting rule.
    """
    stab = linalg.row_basis(stabilizer, p)
    _check_self_orthogonal(stab, p, what="input")
    dual_basis = dual(stab, n, p)
    # Coset representatives: dual-basis rows independent modulo C.
    working = stab.copy()
    cosets = []
    for row in dual_basis:
        if not linalg.row_space_contains(working, row, p):
            cosets.append(row)
            working = np.vstack([working, row])
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    remaining = (
        np.array(cosets, dtype=np.int64) if cosets else linalg.empty_basis(2 * n)
    )
    while remaining.shape[0]:
        x = remaining[0]
        partner = None
        for idx in range(1, remaining.shape[0]):
            if symplectic_product(x, remaining[idx], p):
                partner = idx
                break
        if partner is None:  # unreachable for a self-orthogonal input: the
            # induced form on dual(C)/C is nondegenerate
            raise ValidationError("no symplectic partner in the quotient")
        z = (remaining[partner] * linalg.fp_inv(symplectic_product(x, remaining[partner], p), p)) % p
        rest = np.delete(remaining, [0, partner], axis=0)
        remaining = _hyperbolic_reduce(rest, x, z, p)
        pairs.append((x, z))
    z_rows = (
        np.array([z for _, z in pairs], dtype=np.int64)
        if pairs
        else linalg.empty_basis(2 * n)
    )
    return np.vstack([stab, z_rows]), pairs


def _pairs_for_fixed_self_dual(
    stab: np.ndarray, cm: np.ndarray, n: int, p: int
) -> tuple[np.ndarray, np.ndarray]:
    """Hyperbolic pairs (x_i, z_i) with all z_i inside a given self-dual space.

    The z_i extend C to Cm; candidate x_i extend Cm to dual(C) and are then
    biorthogonalized against the z_i (the pairing between the two quotients
    is nondegenerate, so the Gram matrix below is invertible).
    """
    k = n - stab.shape[0]
    if k == 0:
        return linalg.empty_basis(2 * n), linalg.empty_basis(2 * n)
    z_rows = []
    working = stab.copy()
    for row in cm:
        if not linalg.row_space_contains(working, row, p):
            z_rows.append(row)
            working = np.vstack([working, row])
    z = np.array(z_rows, dtype=np.int64)
    dual_basis = dual(stab, n, p)
    candidates = []
    working = linalg.row_basis(cm, p)
    for row in dual_basis:
        if not linalg.row_space_contains(working, row, p):
            candidates.append(row)
            working = np.vstack([working, row])
    cand = np.array(candidates, dtype=np.int64)
    gram = symplectic_gram(cand, z, p)  # k x k, invertible
    x = np.zeros((k, 2 * n), dtype=np.int64)
    for i in range(k):
        coeff, _ = linalg.solve_linear(gram.T, np.eye(k, dtype=np.int64)[i], p)
        x[i] = (coeff @ cand) % p
    # Zero the x-x products by adding z corrections; the pairing with the
    # z_i is unchanged because the z_i are mutually orthogonal.
    skew = symplectic_gram(x, x, p)
    for i in range(k):
        for j in range(i + 1, k):
            x[i] = (x[i] + skew[i, j] * z[j]) % p
        skew = symplectic_gram(x, x, p)
    return x, z


def _derive_logical_z(stab, cm, lx, n: int, p: int) -> np.ndarray:
    """Partners z_i ∈ Cm with <x_i, z_j> = delta_ij for given x rows."""
    k = lx.shape[0]
    gram = symplectic_gram(lx, cm, p)  # k x n
    z = np.zeros((k, 2 * n), dtype=np.int64)
    for j in range(k):
        coeff, _ = linalg.solve_linear(gram, np.eye(k, dtype=np.int64)[j], p)
        z[j] = (coeff @ cm) % p
    return z


def build_code(
    p: int,
    stabilizer,
    self_dual=None,
    logical_x=None,
    logical_z=None,
    *,
    n: int | None = None,
) -> CodeSpec:
    """Assemble and validate a CodeSpec, deriving whatever parts are missing.

    Missing self_dual/logical rows are computed by self-dual completion.
    Supplied logical pairs whose pairing matrix is diag(c_1..c_k) with
    c_i != 1 are accepted: each z_i is rescaled by 1/c_i (with a warning).
    """
    linalg.check_prime(p)
    stab = linalg.as_field(stabilizer, p)
    if n is None:
        n = stab.shape[1] // 2
    k = n - linalg.rank(stab, p)
    if stab.shape[0] != n - k:
        raise ValidationError("stabilizer rows are linearly dependent")
    _check_self_orthogonal(stab, p)

    cm = None if self_dual is None else linalg.as_field(self_dual, p)
    if cm is not None and linalg.rank(cm, p) != n:
        # Accept documents that list only the rows extending the stabilizer.
        cm = np.vstack([stab, cm])
    lx = None if logical_x is None else linalg.as_field(logical_x, p)
    lz = None if logical_z is None else linalg.as_field(logical_z, p)

    if cm is None and lz is not None:
        cm = np.vstack([stab, lz])
    if cm is None:
        cm, pairs = self_dual_completion(stab, n, p)
        if lx is None and lz is None and pairs:
            lx = np.array([x for x, _ in pairs], dtype=np.int64)
            lz = np.array([z for _, z in pairs], dtype=np.int64)
    if lx is None and lz is None:
        lx, lz = _pairs_for_fixed_self_dual(stab, cm, n, p)
    elif lz is None:
        lz = _derive_logical_z(stab, cm, lx, n, p)
    elif lx is None:
        lx, _ = _pairs_for_fixed_self_dual(stab, cm, n, p)
        lx = _rebalance_x_against_z(stab, cm, lx, lz, n, p)

    lx = lx if lx is not None else linalg.empty_basis(2 * n)
    lz = lz if lz is not None else linalg.empty_basis(2 * n)
    if k and lx.shape[0] == k and lz.shape[0] == k:
        pairing = symplectic_gram(lx, lz, p)
        off = pairing - np.diag(np.diag(pairing))
        diag = np.diag(pairing)
        if not off.any() and np.all(diag != 0) and np.any(diag != 1):
            lz = lz.copy()
            for i in range(k):
                if diag[i] != 1:
                    lz[i] = (lz[i] * linalg.fp_inv(int(diag[i]), p)) % p
            warnings.warn(
                "logical pairing was diag(%s); rescaled z rows to normalize it"
                % np.array2string(diag),
                stacklevel=2,
            )
    code = CodeSpec(p=p, n=n, k=k, stabilizer=stab, self_dual=cm, logical_x=lx, logical_z=lz)
    validate_code(code)
    return code


def _rebalance_x_against_z(stab, cm, lx, lz, n, p):
    """Fix up derived x rows so they pair as delta_ij with given z rows."""
    k = lz.shape[0]
    gram = symplectic_gram(lx, lz, p)
    out = np.zeros_like(lx)
    for i in range(k):
        coeff, _ = linalg.solve_linear(gram.T, np.eye(k, dtype=np.int64)[i], p)
        out[i] = (coeff @ lx) % p
    skew = symplectic_gram(out, out, p)
    for i in range(k):
        for j in range(i + 1, k):
            out[i] = (out[i] + skew[i, j] * lz[j]) % p
        skew = symplectic_gram(out, out, p)
    return out


# ---------------------------------------------------------------------------
# erasure structure


def erasure_correctable(code: CodeSpec, missing) -> bool:
    """True when erasures at the given shares are correctable.

    Tests dim(dual(C) ∩ F^missing) == dim(C ∩ F^missing); the nested
    self-dual section is squeezed to the same dimension whenever this holds.
    """
    missing = share_set(missing, code.n)
    inner = coordinate_section(code.stabilizer, missing, code.n, code.p)
    outer = coordinate_section(code.dual_basis(), missing, code.n, code.p)
    return inner.shape[0] == outer.shape[0]


def localize_x(code: CodeSpec, x, available) -> tuple[np.ndarray, np.ndarray]:
    """Split x = u + w with u in the stabilizer space and w supported on
    the available shares; x must lie in dual(C).

    The split exists whenever the complementary erasures are correctable.
    Deterministic via the linear solver's tie-break.
    """
    p, n = code.p, code.n
    x = linalg.as_field_vector(x, p)
    available = share_set(available, n)
    if not linalg.row_space_contains(code.dual_basis(), x, p):
        raise NotInDualError("vector outside the dual of the stabilizer space")
    missing = complement(available, n)
    if not erasure_correctable(code, missing):
        raise NotCorrectableError(f"shares {available} cannot reconstruct")
    u = _match_on_missing(code.stabilizer, x, missing, n, p)
    w = (x - u) % p
    return u, w


def localize_z(code: CodeSpec, z, available) -> tuple[np.ndarray, np.ndarray]:
    """Split z = v + y with v in the stabilizer space and y supported on the
    available shares; z must lie in the self-dual space."""
    p, n = code.p, code.n
    z = linalg.as_field_vector(z, p)
    available = share_set(available, n)
    if not linalg.row_space_contains(code.self_dual, z, p):
        raise NotInSelfDualError("vector outside the self-dual space")
    missing = complement(available, n)
    if not erasure_correctable(code, missing):
        raise NotCorrectableError(f"shares {available} cannot reconstruct")
    v = _match_on_missing(code.stabilizer, z, missing, n, p)
    y = (z - v) % p
    return v, y


def _match_on_missing(basis, target, missing, n: int, p: int) -> np.ndarray:
    """Stabilizer element whose restriction to the missing shares matches."""
    cols = _coordinate_columns(missing, n)
    if not cols:
        return np.zeros(2 * n, dtype=np.int64)
    A = linalg.as_field(basis, p)[:, cols].T
    coeff, _ = linalg.solve_linear(A, target[cols], p)
    return (coeff @ basis) % p


def qualified_sets(code: CodeSpec, max_size: int | None = None) -> list[tuple[int, ...]]:
    """Minimal qualified share sets, smallest first then lexicographic."""
    n = code.n
    if n > MAX_ENUMERATION_SHARES:
        raise TooLargeError(f"enumeration supports at most {MAX_ENUMERATION_SHARES} shares")
    limit = n if max_size is None else min(max_size, n)
    minimal: list[tuple[int, ...]] = []
    for size in range(1, limit + 1):
        for members in combinations(range(1, n + 1), size):
            if any(set(m) <= set(members) for m in minimal):
                continue
            if erasure_correctable(code, complement(members, n)):
                minimal.append(members)
    return minimal


def all_qualified_sets(code: CodeSpec) -> list[tuple[int, ...]]:
    """Every qualified share set (not only the minimal ones)."""
    n = code.n
    if n > MAX_ENUMERATION_SHARES:
        raise TooLargeError(f"enumeration supports at most {MAX_ENUMERATION_SHARES} shares")
    out = []
    for size in range(1, n + 1):
        for members in combinations(range(1, n + 1), size):
            if erasure_correctable(code, complement(members, n)):
                out.append(members)
    return out


# ---------------------------------------------------------------------------
# random test inputs


def random_symplectic_basis(n: int, p: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Random hyperbolic basis (e_1..e_n, f_1..f_n) of F_p^{2n}."""
    es = np.zeros((n, 2 * n), dtype=np.int64)
    fs = np.zeros((n, 2 * n), dtype=np.int64)
    found = 0
    while found < n:
        v = rng.integers(0, p, size=2 * n, dtype=np.int64)
        for j in range(found):
            v = _hyperbolic_reduce(v.reshape(1, -1), es[j], fs[j], p)[0]
        if not v.any():
            continue
        span = np.vstack([es[:found], fs[:found], v])
        if linalg.rank(span, p) != 2 * found + 1:
            continue
        while True:
            w = rng.integers(0, p, size=2 * n, dtype=np.int64)
            for j in range(found):
                w = _hyperbolic_reduce(w.reshape(1, -1), es[j], fs[j], p)[0]
            c = symplectic_product(v, w, p)
            if c:
                w = (w * linalg.fp_inv(c, p)) % p
                break
        es[found] = v
        fs[found] = w
        found += 1
    return es, fs


def random_self_orthogonal_code(p: int, n: int, k: int, seed: int) -> CodeSpec:
    """Random valid CodeSpec, deterministic per seed."""
    linalg.check_prime(p)
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    rng = np.random.default_rng(seed)
    es, fs = random_symplectic_basis(n, p, rng)
    stab = es[: n - k].copy()
    cm = es.copy()
    lx = fs[n - k :].copy()
    lz = (-es[n - k :]) % p  # flips the pairing <f_i, e_i> = -1 to +1
    code = CodeSpec(p=p, n=n, k=k, stabilizer=stab, self_dual=cm, logical_x=lx, logical_z=lz)
    validate_code(code)
    return code
