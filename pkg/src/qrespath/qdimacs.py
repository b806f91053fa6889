"""QDIMACS reading and writing.

The reader accepts the de-facto format: ``c`` comment lines, one
``p cnf <nvars> <nclauses>`` header, ``a``/``e`` quantifier groups and clause
groups each terminated by ``0``.  Groups may span lines; errors carry the
line number where the offending group starts.  Serialization of normalized
formulas is byte-stable: comments dropped, blocks merged, one clause per
line.
"""

from __future__ import annotations

import hashlib
from typing import TextIO

from .formula import (
    EXISTS,
    FORALL,
    NormalizeDiagnostics,
    QcnfFormula,
    normalize,
)


class QdimacsParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_qdimacs_raw(text: str) -> QcnfFormula:
    """Parse without normalization; the result may contain duplicate
    literals, tautological clauses, and free variables."""
    nvars: int | None = None
    nclauses_declared = 0
    prefix: list[tuple[int, str]] = []
    quantified: set[int] = set()
    clauses: list[tuple[int, ...]] = []
    in_matrix = False

    group: list[str] = []
    group_line = 0

    def fail(msg: str, line: int) -> "QdimacsParseError":
        return QdimacsParseError(line, msg)

    def close_group() -> None:
        nonlocal in_matrix
        kind = group[0]
        if kind in (FORALL, EXISTS):
            if in_matrix:
                raise fail("quantifier line after the first clause", group_line)
            for tok in group[1:-1]:
                v = _int_token(tok, group_line)
                if v <= 0 or (nvars is not None and v > nvars):
                    raise fail(f"quantified variable {v} outside 1..{nvars}", group_line)
                if v in quantified:
                    raise fail(f"variable {v} quantified twice", group_line)
                quantified.add(v)
                prefix.append((v, kind))
        else:
            in_matrix = True
            lits = []
            for tok in group[:-1]:
                l = _int_token(tok, group_line)
                v = abs(l)
                if v == 0 or (nvars is not None and v > nvars):
                    raise fail(f"clause variable {v} outside 1..{nvars}", group_line)
                lits.append(l)
            clauses.append(tuple(lits))
        group.clear()

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("c"):
            if group:
                raise fail("comment interrupts an unterminated group", lineno)
            continue
        if stripped.startswith("p"):
            if nvars is not None:
                raise fail("duplicate header", lineno)
            if group:
                raise fail("header after formula content", lineno)
            toks = stripped.split()
            if len(toks) != 4 or toks[0] != "p" or toks[1] != "cnf":
                raise fail(f"malformed header {stripped!r}", lineno)
            nvars = _int_token(toks[2], lineno)
            nclauses_declared = _int_token(toks[3], lineno)
            if nvars < 0 or nclauses_declared < 0:
                raise fail("header counts must be non-negative", lineno)
            continue
        if nvars is None:
            raise fail(f"content before 'p cnf' header: {stripped!r}", lineno)
        for tok in stripped.split():
            if not group:
                group_line = lineno
            group.append(tok)
            if tok == "0":
                close_group()
    if group:
        raise fail("unterminated group at end of input", group_line)
    if nvars is None:
        raise fail("missing 'p cnf' header", 1)

    return QcnfFormula(tuple(prefix), tuple(clauses))


def _int_token(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise QdimacsParseError(line, f"expected an integer, got {tok!r}") from None


def parse_qdimacs(text: str) -> QcnfFormula:
    """Parse and normalize; see :func:`parse_qdimacs_with_diagnostics` to
    inspect what normalization changed."""
    return normalize(parse_qdimacs_raw(text))[0]


def parse_qdimacs_with_diagnostics(text: str) -> tuple[QcnfFormula, NormalizeDiagnostics]:
    return normalize(parse_qdimacs_raw(text))


def parse_qdimacs_file(path: str) -> QcnfFormula:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_qdimacs(fh.read())


def serialize_qdimacs(formula: QcnfFormula) -> str:
    """Canonical QDIMACS text: header, merged quantifier blocks, one clause
    per line.  ``serialize(parse(serialize(F)))`` is byte-identical to
    ``serialize(F)`` for normalized formulas."""
    lines = [f"p cnf {formula.max_var} {len(formula.clauses)}"]
    for q, members in formula.quantifier_blocks():
        ordered = sorted(members, key=formula.depth)
        lines.append(f"{q} {' '.join(str(v) for v in ordered)} 0")
    for c in formula.clauses:
        if c:
            lines.append(" ".join(str(l) for l in c) + " 0")
        else:
            lines.append("0")
    return "\n".join(lines) + "\n"


def write_qdimacs(formula: QcnfFormula, out: TextIO) -> None:
    out.write(serialize_qdimacs(formula))


def formula_digest(formula: QcnfFormula) -> str:
    """Content hash of the normalized serialization, ``sha256:<hex>``."""
    text = serialize_qdimacs(formula)
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
