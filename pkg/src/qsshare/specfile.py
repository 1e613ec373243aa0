"""Line-based text format for code specifications.

Grammar ('#' starts a comment, blank lines ignored):

    p 3
    n 6
    k 2
    stab     100202|020112
    selfdual 000100|122000      # rows extending the stabilizer (optional)
    logicalx 000000|101100      # optional; derived when absent
    logicalz 000100|122000      # optional; derived when absent

Each row is an (a|b) pattern. For p <= 7 the digits may be packed as single
characters; for any p they may instead be whitespace-separated integers, e.g.
"1 0 0 2 0 2 | 0 2 0 1 1 2". Missing self-dual or logical rows are completed
automatically at load time; logical pairs with a diagonal but non-unit
pairing matrix are rescaled (with a warning).
"""

from __future__ import annotations

import numpy as np

from .errors import SpecParseError, ValidationError
from .symplectic import CodeSpec, build_code


def parse_row(text: str, n: int, p: int, line_no: int) -> np.ndarray:
    if text.count("|") != 1:
        raise SpecParseError(line_no, "row must contain exactly one '|'")
    left, right = text.split("|")
    parts = []
    for half in (left, right):
        half = half.strip()
        if " " in half or "\t" in half:
            digits = [int(tok) for tok in half.split()]
        else:
            if p > 7:
                raise SpecParseError(line_no, "packed digits only supported for p <= 7")
            digits = [int(ch) for ch in half]
        parts.append(digits)
    a, b = parts
    if len(a) != n or len(b) != n:
        raise SpecParseError(line_no, f"expected {n} digits on each side of '|'")
    row = np.array(a + b, dtype=np.int64)
    if np.any(row < 0) or np.any(row >= p):
        raise SpecParseError(line_no, f"digit outside 0..{p - 1}")
    return row


def parse_code_document(text: str) -> CodeSpec:
    """Parse and validate a code-specification document."""
    header: dict[str, int] = {}
    rows: dict[str, list[tuple[int, str]]] = {"stab": [], "selfdual": [], "logicalx": [], "logicalz": []}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("p", "n", "k"):
            try:
                header[key] = int(rest)
            except ValueError as exc:
                raise SpecParseError(line_no, f"'{key}' needs an integer") from exc
        elif key in rows:
            if not rest:
                raise SpecParseError(line_no, f"'{key}' needs a row")
            rows[key].append((line_no, rest))
        else:
            raise SpecParseError(line_no, f"unknown directive {key!r}")
    for key in ("p", "n", "k"):
        if key not in header:
            raise SpecParseError(0, f"missing '{key}' directive")
    p, n, k = header["p"], header["n"], header["k"]
    parsed = {
        key: [parse_row(text, n, p, line_no) for line_no, text in entries]
        for key, entries in rows.items()
    }
    if len(parsed["stab"]) != n - k:
        raise ValidationError(f"expected {n - k} stabilizer rows, got {len(parsed['stab'])}")
    code = build_code(
        p,
        np.array(parsed["stab"], dtype=np.int64),
        self_dual=np.array(parsed["selfdual"], dtype=np.int64) if parsed["selfdual"] else None,
        logical_x=np.array(parsed["logicalx"], dtype=np.int64) if parsed["logicalx"] else None,
        logical_z=np.array(parsed["logicalz"], dtype=np.int64) if parsed["logicalz"] else None,
        n=n,
    )
    if code.k != k:
        raise ValidationError(f"document says k={k} but the stabilizer implies k={code.k}")
    return code


def load_code(path) -> CodeSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_code_document(handle.read())


def format_row(vec: np.ndarray, n: int, p: int) -> str:
    a = vec[:n]
    b = vec[n:]
    if p <= 7:
        return "".join(str(int(v)) for v in a) + "|" + "".join(str(int(v)) for v in b)
    return " ".join(str(int(v)) for v in a) + " | " + " ".join(str(int(v)) for v in b)
