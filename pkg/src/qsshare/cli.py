"""Command-line front end.

Commands: analyze, synthesize, verify, demo. Exit codes: 0 success,
2 parse/validation failure, 3 requested share set not qualified,
4 verification failure. Output files are written to a temp file and renamed
so a failed run never leaves a partial artifact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import circuits, demo, pauli, sim, specfile, symplectic
from .errors import NotCorrectableError, QssError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CORRECTABLE = 3
EXIT_VERIFY_FAILED = 4

FIDELITY_SLACK = 1e-9


def _load(path):
    try:
        return specfile.load_code(path)
    except FileNotFoundError as exc:
        raise QssError(f"cannot read {path}: {exc}") from exc


def _parse_share_list(text: str, n: int):
    try:
        members = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise QssError(f"bad share list {text!r}") from exc
    return symplectic.share_set(members, n)


def _format_set(members) -> str:
    return "{" + ",".join(str(i) for i in members) + "}"


def cmd_analyze(args) -> int:
    code = _load(args.spec)
    p, n, k = code.p, code.n, code.k
    print(f"p {p}  n {n}  k {k}")
    print(f"dim C = {n - k}")
    print(f"dim Cm = {code.self_dual.shape[0]}")
    print(f"dim C_perp = {code.dual_basis().shape[0]}")
    if k:
        print("logical pairs:")
        for i in range(k):
            print(
                f"  x{i + 1} {specfile.format_row(code.logical_x[i], n, p)}"
                f"  z{i + 1} {specfile.format_row(code.logical_z[i], n, p)}"
            )
    else:
        print("logical pairs: none (k = 0)")
    minimal = symplectic.qualified_sets(code, max_size=args.max_size)
    print(f"minimal qualified sets ({len(minimal)}):")
    for members in minimal:
        print(f"  {_format_set(members)}")
    return EXIT_OK


def cmd_synthesize(args) -> int:
    code = _load(args.spec)
    conv = pauli.make_convention(code)
    members = _parse_share_list(args.set, code.n)
    plan = circuits.plan_reconstruction(code, conv, members)
    circuit = circuits.synthesize_reconstruction(plan, code)
    text = circuits.emit_circuit(circuit)
    directory = os.path.dirname(os.path.abspath(args.output)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, args.output)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    counts = circuit.counts()
    print(f"wrote {args.output}")
    print(
        f"gates: {circuit.two_qudit_count()} two-qudit"
        f" (bound {2 * code.k * len(members)}),"
        f" {counts['PPOW']} phase, {counts['F'] + counts['FINV']} Fourier"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _load(args.spec)
    p, n, k = code.p, code.n, code.k
    report = {
        "p": p,
        "n": n,
        "k": k,
        "seed": args.seed,
        "trials": args.trials,
        "rows": [],
    }
    if k == 0 or args.trials == 0:
        report["summary"] = {"qualified_sets": 0, "min_fidelity": 1.0, "max_purity_deviation": 0.0}
        print(json.dumps(report, indent=2))
        return EXIT_OK
    conv = pauli.make_convention(code)
    if args.set:
        sets = [_parse_share_list(args.set, n)]
        missing = symplectic.complement(sets[0], n)
        if not symplectic.erasure_correctable(code, missing):
            print(f"share set {_format_set(sets[0])} is not qualified", file=sys.stderr)
            return EXIT_NOT_CORRECTABLE
    else:
        sets = symplectic.all_qualified_sets(code)
    rng = np.random.default_rng(args.seed)
    secrets = [sim.random_secret(p, k, rng) for _ in range(args.trials)]
    zero = sim.logical_zero(code, conv)
    min_fid = 1.0
    max_dev = 0.0
    failure = None
    for members in sets:
        fid = 1.0
        dev = 0.0
        gates = (0, 0)
        for trial, secret in enumerate(secrets):
            rep = sim.verify_reconstruction(code, conv, members, secret, zero=zero)
            fid = min(fid, rep.fidelity)
            dev = max(dev, abs(1.0 - rep.purity))
            gates = (rep.two_qudit_gates, rep.single_qudit_gates)
            if rep.fidelity < 1.0 - FIDELITY_SLACK or abs(1.0 - rep.purity) > FIDELITY_SLACK:
                failure = failure or (members, trial)
        report["rows"].append(
            {
                "J": list(members),
                "min_fidelity": round(fid, 12),
                "max_purity_deviation": round(dev, 12),
                "two_qudit_gates": gates[0],
                "single_qudit_gates": gates[1],
            }
        )
        min_fid = min(min_fid, fid)
        max_dev = max(max_dev, dev)
    report["summary"] = {
        "qualified_sets": len(sets),
        "min_fidelity": round(min_fid, 12),
        "max_purity_deviation": round(max_dev, 12),
    }
    print(json.dumps(report, indent=2))
    if failure is not None:
        members, trial = failure
        print(
            f"verification failed for J={_format_set(members)} at trial {trial}"
            f" (seed {args.seed})",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_demo(_args) -> int:
    import io

    buf = io.StringIO()
    demo.run_demo(buf)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsshare",
        description="Qudit stabilizer secret sharing: analysis, circuit synthesis, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="report code dimensions and qualified sets")
    p_analyze.add_argument("spec", help="code specification file")
    p_analyze.add_argument("--max-size", type=int, default=None, help="largest set size to enumerate")
    p_analyze.set_defaults(func=cmd_analyze)

    p_synth = sub.add_parser("synthesize", help="write a reconstruction circuit file")
    p_synth.add_argument("spec")
    p_synth.add_argument("--set", required=True, help="comma-separated share indices, e.g. 3,4,5,6")
    p_synth.add_argument("-o", "--output", required=True)
    p_synth.set_defaults(func=cmd_synthesize)

    p_verify = sub.add_parser("verify", help="simulate reconstruction over qualified sets")
    p_verify.add_argument("spec")
    p_verify.add_argument("--trials", type=int, default=5, help="random secrets per set")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--set", default=None, help="restrict to one share set")
    p_verify.set_defaults(func=cmd_verify)

    p_demo = sub.add_parser("demo", help="walk the built-in six-share qutrit code end to end")
    p_demo.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotCorrectableError as exc:
        print(f"not correctable: {exc}", file=sys.stderr)
        return EXIT_NOT_CORRECTABLE
    except QssError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
