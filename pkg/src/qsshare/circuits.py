"""Gate-level synthesis of dealer encoding and share reconstruction.

Registers are laid out shares-first: qudits 1..n carry the shares (erased
ones stay present but are never addressed), qudits n+1..n+k carry the
message/ancilla register. Gate kinds:

    F q            Fourier |a> -> p^{-1/2} sum_b w_p^{ab} |b>
    FINV q         inverse Fourier
    PPOW q e       e-th power of the phase gate P = diag(w^j): Z for p >= 3,
                   sqrt(Z) for p = 2 (exponent lives in the phase ring)
    CPAULI c t a b     sum_j |j><j|_c x (X^a Z^b)_t^j
    CPAULIINV c t a b  sum_j |j><j|_c x (X^a Z^b)_t^{-j}
    PAULI q a b    single-qudit X^a Z^b

All scalar corrections ride on control qudits as PPOW gates: controlled-(c U)
equals PPOW(control, e(c)) followed by controlled-U, which keeps the
two-qudit gates phase-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, pauli, symplectic
from .errors import CircuitParseError, NotCorrectableError

GATE_KINDS = ("F", "FINV", "PPOW", "CPAULI", "CPAULIINV", "PAULI")


@dataclass(frozen=True)
class Gate:
    kind: str
    qudits: tuple[int, ...]
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def is_two_qudit(self) -> bool:
        return self.kind in ("CPAULI", "CPAULIINV")


def fourier(q: int) -> Gate:
    return Gate("F", (q,))


def fourier_inv(q: int) -> Gate:
    return Gate("FINV", (q,))


def phase_pow(q: int, e: int) -> Gate:
    return Gate("PPOW", (q,), (int(e),))


def controlled_pauli(c: int, t: int, a: int, b: int) -> Gate:
    if c == t:
        raise ValueError("control and target must differ")
    return Gate("CPAULI", (c, t), (int(a), int(b)))


def controlled_pauli_inv(c: int, t: int, a: int, b: int) -> Gate:
    if c == t:
        raise ValueError("control and target must differ")
    return Gate("CPAULIINV", (c, t), (int(a), int(b)))


def pauli_gate(q: int, a: int, b: int) -> Gate:
    return Gate("PAULI", (q,), (int(a), int(b)))


@dataclass(frozen=True)
class Circuit:
    p: int
    num_qudits: int
    roles: tuple[tuple[str, int], ...]
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if len(self.roles) != self.num_qudits:
            raise ValueError("one role per qudit required")
        for g in self.gates:
            for q in g.qudits:
                if not 1 <= q <= self.num_qudits:
                    raise ValueError(f"gate {g} addresses qudit {q} outside the register")

    def touched_qudits(self) -> set[int]:
        out: set[int] = set()
        for g in self.gates:
            out.update(g.qudits)
        return out

    def counts(self) -> dict[str, int]:
        out = {kind: 0 for kind in GATE_KINDS}
        for g in self.gates:
            out[g.kind] += 1
        return out

    def two_qudit_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qudit())

    def single_qudit_count(self) -> int:
        return sum(1 for g in self.gates if not g.is_two_qudit())


def share_roles(n: int, k: int) -> tuple[tuple[str, int], ...]:
    return tuple(("share", i) for i in range(1, n + 1)) + tuple(
        ("ancilla", i) for i in range(1, k + 1)
    )


def controlled_pauli_decompose(control: int, vec, n: int, *, inverse: bool = False) -> list[Gate]:
    """Per-share controlled gates realizing controlled-M(vec) (or its inverse).

    The tensor factors of M(vec)^j carry no cross-site phases, so one
    two-qudit gate per support index reproduces sum_j |j><j| x M(vec)^{+-j}
    exactly. Targets are emitted in ascending share order.
    """
    a, b = symplectic.split_parts(vec, n)
    make = controlled_pauli_inv if inverse else controlled_pauli
    out = []
    for t in range(n):
        if a[t] or b[t]:
            out.append(make(control, t + 1, int(a[t]), int(b[t])))
    return out


# ---------------------------------------------------------------------------
# reconstruction planning


@dataclass
class ReconstructionPlan:
    """Everything the available coalition needs to rebuild the secret.

    For each secret qudit i: localized patterns w_i (dual side) and y_i
    (self-dual side) supported on the available shares; the stabilizer parts
    u_i, v_i they were split against; the relative phases beta_i, gamma_i;
    the code-space eigenvalue exponents of M(u_i) and M(v_i); and the two
    ancilla phase-gate exponents assembled from them.
    """

    p: int
    n: int
    k: int
    available: tuple[int, ...]
    w: list[np.ndarray]
    y: list[np.ndarray]
    u: list[np.ndarray]
    v: list[np.ndarray]
    beta: list[int]
    gamma: list[int]
    eta_u: list[int]
    eta_v: list[int]
    step3_exponents: list[int]
    step6_exponents: list[int]


def plan_reconstruction(code, convention, available) -> ReconstructionPlan:
    """Build the per-coalition reconstruction data.

    Raises NotCorrectableError when the coalition is not qualified (this is
    the only signal; no partial plan is produced).
    """
    p, n, k = code.p, code.n, code.k
    if k < 1:
        raise ValueError("nothing to reconstruct for a k = 0 code")
    available = symplectic.share_set(available, n)
    if not available:
        raise NotCorrectableError("empty share set cannot reconstruct")
    missing = symplectic.complement(available, n)
    if not symplectic.erasure_correctable(code, missing):
        raise NotCorrectableError(f"shares {available} are not a qualified set")
    ring = pauli.phase_order(p)
    gens = convention.stabilizer_generators()
    plan = ReconstructionPlan(
        p=p, n=n, k=k, available=available,
        w=[], y=[], u=[], v=[], beta=[], gamma=[],
        eta_u=[], eta_v=[], step3_exponents=[], step6_exponents=[],
    )
    for i in range(k):
        u, w = symplectic.localize_x(code, code.logical_x[i], available)
        v, y = symplectic.localize_z(code, code.logical_z[i], available)
        beta = pauli.relative_phase(code.logical_x[i], w, u, p)
        gamma = pauli.relative_phase(code.logical_z[i], y, v, p)
        eta_u = pauli.stabilizer_eigenvalue(gens, u, p) if gens else 0
        eta_v = pauli.stabilizer_eigenvalue(gens, v, p) if gens else 0
        e_alpha = convention.alpha_exponents[i]
        e_alpha_inv = convention.alpha_inverse_exponent(i)
        plan.w.append(w)
        plan.y.append(y)
        plan.u.append(u)
        plan.v.append(v)
        plan.beta.append(beta)
        plan.gamma.append(gamma)
        plan.eta_u.append(eta_u)
        plan.eta_v.append(eta_v)
        plan.step3_exponents.append((-(e_alpha_inv + gamma + eta_v)) % ring)
        plan.step6_exponents.append((-(e_alpha + beta + eta_u)) % ring)
    return plan


def synthesize_reconstruction(plan: ReconstructionPlan, code) -> Circuit:
    """Emit the six-step measurement-free reconstruction circuit.

    Steps: (1) Fourier on every ancilla, (2) inverse controlled self-dual
    patterns, (3) ancilla phase powers, (4) Fourier on every ancilla again,
    (5) inverse controlled dual patterns, (6) ancilla phase powers. No gate
    addresses a share outside the available set.
    """
    n, k = plan.n, plan.k
    anc = [n + 1 + i for i in range(k)]
    gates: list[Gate] = []
    for i in range(k):
        gates.append(fourier(anc[i]))
    for i in range(k):
        gates.extend(controlled_pauli_decompose(anc[i], plan.y[i], n, inverse=True))
    for i in range(k):
        gates.append(phase_pow(anc[i], plan.step3_exponents[i]))
    for i in range(k):
        gates.append(fourier(anc[i]))
    for i in range(k):
        gates.extend(controlled_pauli_decompose(anc[i], plan.w[i], n, inverse=True))
    for i in range(k):
        gates.append(phase_pow(anc[i], plan.step6_exponents[i]))
    return Circuit(p=plan.p, num_qudits=n + k, roles=share_roles(n, k), gates=tuple(gates))


def synthesize_dealer(code, convention) -> Circuit:
    """Emit the dealer's two encoding stages on a shares+message register.

    Stage one applies controlled logical-x patterns (with alpha as a control
    phase); stage two applies the inverse Fourier on each message qudit and
    the controlled logical-z patterns (with 1/alpha). Logical-zero
    preparation is not a gate sequence here; the simulator supplies it.
    """
    p, n, k = code.p, code.n, code.k
    msg = [n + 1 + i for i in range(k)]
    gates: list[Gate] = []
    for i in range(k):
        e = convention.alpha_exponents[i]
        if e:
            gates.append(phase_pow(msg[i], e))
        gates.extend(controlled_pauli_decompose(msg[i], code.logical_x[i], n))
    for i in range(k):
        gates.append(fourier_inv(msg[i]))
    for i in range(k):
        e = convention.alpha_inverse_exponent(i)
        if e:
            gates.append(phase_pow(msg[i], e))
        gates.extend(controlled_pauli_decompose(msg[i], code.logical_z[i], n))
    return Circuit(p=p, num_qudits=n + k, roles=share_roles(n, k), gates=tuple(gates))


# ---------------------------------------------------------------------------
# text format


FORMAT_MAGIC = "QSSCIRC"
FORMAT_VERSION = 1


def emit_circuit(circuit: Circuit) -> str:
    """Serialize to the line-based QSSCIRC text format (round-trip exact)."""
    lines = [f"{FORMAT_MAGIC} {FORMAT_VERSION}", f"p {circuit.p}", f"qudits {circuit.num_qudits}"]
    for q, (kind, idx) in enumerate(circuit.roles, start=1):
        lines.append(f"role {q} {kind} {idx}")
    for g in circuit.gates:
        fields = [str(v) for v in (*g.qudits, *g.params)]
        lines.append(f"gate {g.kind} {' '.join(fields)}".rstrip())
    return "\n".join(lines) + "\n"


_GATE_ARITY = {
    "F": (1, 0),
    "FINV": (1, 0),
    "PPOW": (1, 1),
    "CPAULI": (2, 2),
    "CPAULIINV": (2, 2),
    "PAULI": (1, 2),
}


def parse_circuit(text: str) -> Circuit:
    """Parse the QSSCIRC text format; '#' starts a comment."""
    p = None
    num = None
    roles: dict[int, tuple[str, int]] = {}
    gates: list[Gate] = []
    header_seen = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if not header_seen:
            if fields != [FORMAT_MAGIC, str(FORMAT_VERSION)]:
                raise CircuitParseError(line_no, f"expected header '{FORMAT_MAGIC} {FORMAT_VERSION}'")
            header_seen = True
            continue
        key = fields[0]
        try:
            if key == "p":
                p = int(fields[1])
            elif key == "qudits":
                num = int(fields[1])
            elif key == "role":
                q = int(fields[1])
                roles[q] = (fields[2], int(fields[3]))
            elif key == "gate":
                kind = fields[1]
                if kind not in _GATE_ARITY:
                    raise CircuitParseError(line_no, f"unknown gate kind {kind!r}")
                nq, np_ = _GATE_ARITY[kind]
                args = [int(v) for v in fields[2:]]
                if len(args) != nq + np_:
                    raise CircuitParseError(line_no, f"{kind} takes {nq + np_} integers")
                gates.append(Gate(kind, tuple(args[:nq]), tuple(args[nq:])))
            else:
                raise CircuitParseError(line_no, f"unknown directive {key!r}")
        except CircuitParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise CircuitParseError(line_no, f"malformed line: {exc}") from exc
    if p is None or num is None:
        raise CircuitParseError(0, "missing 'p' or 'qudits' directive")
    linalg.check_prime(p)
    role_list = []
    for q in range(1, num + 1):
        if q not in roles:
            raise CircuitParseError(0, f"missing role for qudit {q}")
        role_list.append(roles[q])
    return Circuit(p=p, num_qudits=num, roles=tuple(role_list), gates=tuple(gates))
