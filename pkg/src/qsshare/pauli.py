"""Exact phase arithmetic for products of qudit shift/clock operators.

Single-qudit conventions, fixed once for the whole package:

    X|j> = |j+1 mod p>        Z|j> = w_p^j |j>        w_p = exp(2*pi*i/p)

so ZX = w_p XZ. A pattern (a|b) names the operator X^{a_1}Z^{b_1} x ... x
X^{a_n}Z^{b_n}. Scalars are tracked as exponents of the phase unit w, where

    w = w_p            for p >= 3  (exponents mod p),
    w = sqrt(-1)       for p  = 2  (exponents mod 4, patterns still mod 2).

The fourth root at p = 2 is forced by operators such as XZ, whose square is
-I, so no mod-2 exponent could calibrate them to +1 eigenvalues.

Multiplying M(x) M(y) shifts the exponent by a_y . b_x for p >= 3 and by
2 (a_y . b_x) for p = 2; everything else in this module follows from that
one rule, and dense_matrix provides the independent oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg, symplectic
from .errors import (
    DecompositionMismatchError,
    DimensionMismatchError,
    NoSolutionError,
    NotInStabilizerError,
    TooLargeError,
)

DENSE_GUARD = 2**14


def phase_order(p: int) -> int:
    """Order of the phase unit w: p for p >= 3, 4 for p = 2."""
    return 4 if p == 2 else p


def phase_value(e: int, p: int) -> complex:
    """The complex scalar w^e."""
    r = phase_order(p)
    e = int(e) % r
    if p == 2:
        return (1, 1j, -1, -1j)[e]
    return np.exp(2j * np.pi * e / p)


def format_phase(e: int, p: int) -> str:
    """Human-readable w^e: '1', 'i', '-1', '-i' at p=2, else '1' or 'w^e'."""
    e = int(e) % phase_order(p)
    if p == 2:
        return ("1", "i", "-1", "-i")[e]
    return "1" if e == 0 else f"w^{e}"


@dataclass(eq=False)
class PhasedPauli:
    """A scalar w^phase times the operator pattern vec = (a|b)."""

    p: int
    phase: int
    vec: np.ndarray

    def __post_init__(self):
        self.vec = linalg.as_field_vector(self.vec, self.p)
        self.phase = int(self.phase) % phase_order(self.p)

    @property
    def n(self) -> int:
        return self.vec.shape[0] // 2

    def x_part(self) -> np.ndarray:
        return self.vec[: self.n]

    def z_part(self) -> np.ndarray:
        return self.vec[self.n :]

    def is_identity(self) -> bool:
        return self.phase == 0 and not self.vec.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PhasedPauli)
            and self.p == other.p
            and self.phase == other.phase
            and np.array_equal(self.vec, other.vec)
        )

    def __repr__(self) -> str:
        a = "".join(str(int(v)) for v in self.x_part())
        b = "".join(str(int(v)) for v in self.z_part())
        return f"PhasedPauli({format_phase(self.phase, self.p)} * M({a}|{b}))"


def identity_pauli(p: int, n: int) -> PhasedPauli:
    return PhasedPauli(p, 0, np.zeros(2 * n, dtype=np.int64))


def pauli_from_vec(vec, p: int, phase: int = 0) -> PhasedPauli:
    return PhasedPauli(p, phase, vec)


def pauli_mul(P: PhasedPauli, Q: PhasedPauli) -> PhasedPauli:
    """Operator product P Q with exact phase tracking."""
    if P.p != Q.p or P.n != Q.n:
        raise DimensionMismatchError("operands act on different registers")
    p = P.p
    cross = int(Q.x_part() @ P.z_part())
    if p == 2:
        phase = P.phase + Q.phase + 2 * cross
    else:
        phase = P.phase + Q.phase + cross
    return PhasedPauli(p, phase, (P.vec + Q.vec) % p)


def pauli_pow(P: PhasedPauli, j: int) -> PhasedPauli:
    """P^j, valid for any integer j (negative powers are exact inverses)."""
    p = P.p
    if p == 2:
        j = int(j) % 4
        out = identity_pauli(p, P.n)
        for _ in range(j):
            out = pauli_mul(out, P)
        return out
    j = int(j) % p
    ab = int(P.x_part() @ P.z_part())
    phase = j * P.phase + ab * (j * (j - 1) // 2)
    return PhasedPauli(p, phase, (j * P.vec) % p)


def pauli_inverse(P: PhasedPauli) -> PhasedPauli:
    return pauli_pow(P, -1)


def commutation_phase(x, y, p: int) -> int:
    """Exponent c (mod p) with M(x) M(y) = w_p^c M(y) M(x), w_p = exp(2*pi*i/p).

    Equals -<x, y> mod p; zero exactly when the operators commute.
    """
    return (-symplectic.symplectic_product(x, y, p)) % p


def single_qudit_matrix(a: int, b: int, p: int) -> np.ndarray:
    """Dense p x p matrix of X^a Z^b."""
    w = np.exp(2j * np.pi / p)
    m = np.zeros((p, p), dtype=np.complex128)
    for c in range(p):
        m[(c + a) % p, c] = w ** (b * c % p)
    return m


def dense_matrix(P: PhasedPauli) -> np.ndarray:
    """Dense p^n x p^n matrix of the phased operator (oracle for everything)."""
    p, n = P.p, P.n
    if p**n > DENSE_GUARD:
        raise TooLargeError(f"dense matrix of dimension {p}^{n} exceeds the guard")
    out = np.array([[phase_value(P.phase, p)]], dtype=np.complex128)
    a, b = P.x_part(), P.z_part()
    for t in range(n):
        out = np.kron(out, single_qudit_matrix(int(a[t]), int(b[t]), p))
    return out


# ---------------------------------------------------------------------------
# calibration and code-space eigenvalues


def calibrate_generator(vec, p: int) -> PhasedPauli:
    """Attach the phase that gives the generator a +1 eigenspace.

    For p >= 3 the bare operator already has order p; for p = 2 a pattern
    with an odd number of XZ positions squares to -I and needs a sqrt(-1)
    coefficient to become an involution.
    """
    vec = linalg.as_field_vector(vec, p)
    if p == 2:
        n = vec.shape[0] // 2
        odd = int(vec[:n] @ vec[n:]) % 2
        return PhasedPauli(p, odd, vec)
    return PhasedPauli(p, 0, vec)


def stabilizer_eigenvalue(generators: list[PhasedPauli], u, p: int) -> int:
    """Exponent h with M(u)|phi> = w^h |phi> on the joint +1 eigenspace.

    Writes u over the generators' patterns (the expression is unique for
    independent generators), forms the phased product G = prod g_i^{c_i}
    = w^d M(u), and returns -d: G fixes |phi>, so M(u) scales it by w^{-d}.
    """
    if not generators:
        raise NotInStabilizerError("empty generator set")
    u = linalg.as_field_vector(u, p)
    rows = np.array([g.vec for g in generators], dtype=np.int64)
    try:
        coeff, _ = linalg.solve_linear(rows.T, u, p)
    except NoSolutionError as exc:
        raise NotInStabilizerError("vector outside the generated space") from exc
    out = identity_pauli(p, generators[0].n)
    for g, c in zip(generators, coeff):
        out = pauli_mul(out, pauli_pow(g, int(c)))
    if not np.array_equal(out.vec, u):
        raise NotInStabilizerError("generator product does not reproduce the vector")
    return (-out.phase) % phase_order(p)


def relative_phase(target, left, right, p: int) -> int:
    """Exponent b with M(target) = w^b M(left) M(right); needs target = left+right."""
    target = linalg.as_field_vector(target, p)
    left = linalg.as_field_vector(left, p)
    right = linalg.as_field_vector(right, p)
    if not np.array_equal(target, (left + right) % p):
        raise DecompositionMismatchError("target is not the sum of the two factors")
    prod = pauli_mul(pauli_from_vec(left, p), pauli_from_vec(right, p))
    return (-prod.phase) % phase_order(p)


# ---------------------------------------------------------------------------
# encoding convention


@dataclass
class EncodingConvention:
    """Calibrated generators of the self-dual space plus the alpha scalars.

    generators : one calibrated PhasedPauli per self-dual basis row; the
                 first n-k rows generate the stabilizer space, the final k
                 are the logical-z patterns calibrated as 1/alpha_i * M(z_i)
    alpha_exponents : e(alpha_i) in the phase ring, one per secret qudit
    """

    p: int
    n: int
    k: int
    generators: list[PhasedPauli] = field(default_factory=list)
    alpha_exponents: tuple[int, ...] = ()

    def stabilizer_generators(self) -> list[PhasedPauli]:
        return self.generators[: self.n - self.k]

    def alpha_inverse_exponent(self, i: int) -> int:
        return (-self.alpha_exponents[i]) % phase_order(self.p)


def make_convention(code) -> EncodingConvention:
    """Calibrate a code's self-dual generators and fix the alpha scalars.

    The logical-zero state is the joint +1 eigenvector of the returned
    generators, so alpha_i is pinned by requiring 1/alpha_i * M(z_i) to be
    one of them: alpha_i = 1 for p >= 3, and for p = 2 it is i^{-s} where
    s is the XZ parity of z_i (nothing else gives z_i an involution with a
    +1 eigenspace, per the fourth-root discussion in the module docstring).
    """
    p, n, k = code.p, code.n, code.k
    gens = [calibrate_generator(row, p) for row in code.stabilizer]
    alphas = []
    for i in range(k):
        zgen = calibrate_generator(code.logical_z[i], p)
        gens.append(zgen)
        alphas.append((-zgen.phase) % phase_order(p))
    return EncodingConvention(p=p, n=n, k=k, generators=gens, alpha_exponents=tuple(alphas))
