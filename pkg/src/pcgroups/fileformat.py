"""The pcgroup v1 file format: line-oriented, bit-exact, canonical.

    pcgroup v1
    p 3
    n 3
    pow 1 : 3^1           # g_1^p, tokens k^e with k > 1, strictly increasing
    comm 2 1 : 3^2        # [g_2, g_1], tokens with k > 2

'#' starts a comment; blank lines are ignored; omitted relations default to
the empty word.  Serialization is canonical (pow lines ascending, comm lines
ascending by (j, i), empty relations omitted) and round-trips bit-exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

from .presentation import PcPresentation, is_prime, validate_consistency

__all__ = ["PcgParseError", "parse_pcp", "serialize_pcp", "load_pcp_file"]

_TOKEN_RE = re.compile(r"^(\d+)\^(\d+)$")


class PcgParseError(ValueError):
    """Malformed or inconsistent pcgroup file; message carries the line."""


def _fail(lineno: int, message: str) -> None:
    raise PcgParseError(f"line {lineno}: {message}")


def _parse_tokens(parts: list[str], owner: int, n: int, p: int,
                  lineno: int) -> list[tuple[int, int]]:
    word = []
    prev = owner
    for part in parts:
        m = _TOKEN_RE.match(part)
        if not m:
            _fail(lineno, f"bad token {part!r}, expected k^e")
        k, e = int(m.group(1)), int(m.group(2))
        if k <= owner:
            _fail(lineno, f"token index must exceed {owner} (got {k})")
        if k <= prev:
            _fail(lineno, f"token indices must be strictly increasing (got {k})")
        if k > n:
            _fail(lineno, f"token index {k} out of range 1..{n}")
        if not 1 <= e < p:
            _fail(lineno, f"exponent {e} out of range 1..{p - 1}")
        word.append((k, e))
        prev = k
    return word


def parse_pcp(text: str, id: str = "pcgroup",
              check_consistency: bool = True) -> PcPresentation:
    """Parse and validate a pcgroup v1 presentation."""
    lines = text.splitlines()
    stripped: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            stripped.append((lineno, body))
    if not stripped:
        raise PcgParseError("line 1: empty file, expected 'pcgroup v1' header")
    lineno, header = stripped[0]
    if header != "pcgroup v1":
        _fail(lineno, f"expected 'pcgroup v1' header, got {header!r}")

    p = n = None
    power: dict[int, list] = {}
    comm: dict[tuple[int, int], list] = {}
    for lineno, body in stripped[1:]:
        fields = body.split()
        kind = fields[0]
        if kind == "p":
            if p is not None:
                _fail(lineno, "duplicate 'p' line")
            if len(fields) != 2 or not fields[1].isdigit():
                _fail(lineno, "expected 'p <prime>'")
            p = int(fields[1])
            if not is_prime(p):
                _fail(lineno, f"p must be prime, got {p}")
        elif kind == "n":
            if n is not None:
                _fail(lineno, "duplicate 'n' line")
            if len(fields) != 2 or not fields[1].isdigit():
                _fail(lineno, "expected 'n <count>'")
            n = int(fields[1])
        elif kind in ("pow", "comm"):
            if p is None or n is None:
                _fail(lineno, "'p' and 'n' must come before relations")
            if ":" not in fields:
                _fail(lineno, f"expected '{kind} ... : tokens'")
            sep = fields.index(":")
            head, toks = fields[1:sep], fields[sep + 1:]
            if kind == "pow":
                if len(head) != 1 or not head[0].isdigit():
                    _fail(lineno, "expected 'pow <i> : tokens'")
                i = int(head[0])
                if not 1 <= i <= n:
                    _fail(lineno, f"generator index {i} out of range 1..{n}")
                if i in power:
                    _fail(lineno, f"duplicate relation pow {i}")
                power[i] = _parse_tokens(toks, i, n, p, lineno)
            else:
                if len(head) != 2 or not all(x.isdigit() for x in head):
                    _fail(lineno, "expected 'comm <j> <i> : tokens'")
                j, i = int(head[0]), int(head[1])
                if not 1 <= i < j <= n:
                    _fail(lineno, f"need 1 <= i < j <= n, got j={j}, i={i}")
                if (j, i) in comm:
                    _fail(lineno, f"duplicate relation comm {j} {i}")
                comm[(j, i)] = _parse_tokens(toks, j, n, p, lineno)
        else:
            _fail(lineno, f"unknown directive {kind!r}")
    if p is None:
        raise PcgParseError("line 1: missing 'p' line")
    if n is None:
        raise PcgParseError("line 1: missing 'n' line")
    P = PcPresentation(p, n, power=power, comm=comm, id=id)
    if check_consistency:
        report = validate_consistency(P)
        if not report.consistent:
            raise PcgParseError(
                f"inconsistent presentation: {'; '.join(report.failures)}")
    return P


def serialize_pcp(P: PcPresentation) -> str:
    """Canonical text form; parse_pcp(serialize_pcp(P)) equals P structurally."""
    out = ["pcgroup v1", f"p {P.p}", f"n {P.n}"]
    for i in range(1, P.n + 1):
        word = P.power_word(i)
        if word:
            toks = " ".join(f"{k}^{e}" for k, e in word)
            out.append(f"pow {i} : {toks}")
    for (j, i), word in P.comm_relations():
        if word:
            toks = " ".join(f"{k}^{e}" for k, e in word)
            out.append(f"comm {j} {i} : {toks}")
    return "\n".join(out) + "\n"


def load_pcp_file(path: str | Path, check_consistency: bool = True) -> PcPresentation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PcgParseError(f"cannot read {path}: {exc}") from None
    return parse_pcp(text, id=path.stem, check_consistency=check_consistency)
