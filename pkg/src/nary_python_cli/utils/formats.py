"""Text formats for structures and witness families.

Structure file::

    nary-structure v1
    n=2 m=3
    [1,2] -> 3 : 1      # comments run to the end of the line
    [2,1] -> 3 : -1

Witness file (row r, entry c is coordinate r of the c-th basis vector)::

    nary-witness v1
    n=2 m=2
    1*t^1; 0
    0; 1*t^2
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from nary_python_cli.utils.degeneration import BasisFamily
from nary_python_cli.utils.errors import NaryError, ParseError
from nary_python_cli.utils.scalars import parse_laurent, parse_rational, render_laurent, render_rational
from nary_python_cli.utils.structures import AlgebraStructure

STRUCTURE_TAG = "nary-structure v1"
WITNESS_TAG = "nary-witness v1"

_ENTRY = re.compile(r"\[(?P<index>[^\]]*)\]\s*->\s*(?P<j>\S+)\s*:\s*(?P<value>.*?)\s*$")
_INTEGER = re.compile(r"\s*(\d+)\s*")


@dataclass(frozen=True)
class WitnessFile:
    arity: int
    family: BasisFamily


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    """Line number and text with comments removed; blank lines are skipped."""
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].rstrip()
        if line.strip():
            yield number, line


def _indent(line: str) -> int:
    return len(line) - len(line.lstrip())


def _expect_tag(lines: Iterator[tuple[int, str]], tag: str, source: str) -> None:
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(f"missing header line '{tag}'", 1, 1, source) from None
    if line.strip() != tag:
        raise ParseError(f"expected header '{tag}', got '{line.strip()}'", number, _indent(line) + 1, source)


def _parse_shape(lines: Iterator[tuple[int, str]], source: str) -> tuple[int, int]:
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError("missing 'n=<int> m=<int>' line", 1, 1, source) from None
    values: dict[str, int] = {}
    for match in re.finditer(r"\S+", line):
        column = match.start() + 1
        key, sep, value = match.group().partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got '{match.group()}'", number, column, source)
        if key not in ("n", "m"):
            raise ParseError(f"unknown header key '{key}'", number, column, source)
        if key in values:
            raise ParseError(f"duplicate header key '{key}'", number, column, source)
        if not value.isdigit():
            raise ParseError(f"'{key}' must be a positive integer, got '{value}'", number, column, source)
        values[key] = int(value)
    for key in ("n", "m"):
        if key not in values:
            raise ParseError(f"header is missing '{key}'", number, len(line) + 1, source)
    n, m = values["n"], values["m"]
    if n < 2:
        raise ParseError(f"arity must be at least 2, got {n}", number, 1, source)
    if m < 1:
        raise ParseError(f"dimension must be at least 1, got {m}", number, 1, source)
    return n, m


def parse_structure(text: str, source: str = "") -> AlgebraStructure:
    """Parse a structure file. Zero coefficients are accepted and dropped."""
    lines = _content_lines(text)
    _expect_tag(lines, STRUCTURE_TAG, source)
    n, m = _parse_shape(lines, source)
    constants: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for number, line in lines:
        offset = _indent(line)
        match = _ENTRY.fullmatch(line, offset)
        if match is None:
            raise ParseError("expected an entry '[i1,...,in] -> j : rational'", number, offset + 1, source)
        index = []
        position = match.start("index")
        for piece in match.group("index").split(","):
            token = _INTEGER.fullmatch(piece)
            if token is None:
                raise ParseError(f"expected an index, got '{piece.strip()}'", number, position + 1, source)
            value = int(token.group(1))
            if not 1 <= value <= m:
                raise ParseError(f"index {value} leaves 1..{m}", number, position + token.start(1) + 1, source)
            index.append(value)
            position += len(piece) + 1
        if len(index) != n:
            raise ParseError(
                f"index tuple has {len(index)} entries, expected {n}", number, match.start("index") + 1, source
            )
        j_text = match.group("j")
        if not j_text.isdigit() or not 1 <= int(j_text) <= m:
            raise ParseError(f"output index '{j_text}' leaves 1..{m}", number, match.start("j") + 1, source)
        j = int(j_text)
        try:
            value = parse_rational(match.group("value"))
        except ValueError as exc:
            raise ParseError(str(exc), number, match.start("value") + 1, source) from None
        vector = constants.setdefault(tuple(index), {})
        if j in vector:
            raise ParseError(f"duplicate entry {list(index)} -> {j}", number, offset + 1, source)
        vector[j] = value
    return AlgebraStructure(n, m, constants)


def render_structure(mu: AlgebraStructure) -> str:
    lines = [STRUCTURE_TAG, f"n={mu.arity} m={mu.dimension}"]
    for index, j, c in mu.nonzero_constants():
        lines.append(f"[{','.join(str(i) for i in index)}] -> {j} : {render_rational(c)}")
    return "\n".join(lines) + "\n"


def parse_witness(text: str, source: str = "") -> WitnessFile:
    """Parse a witness file; the determinant condition is checked on use, not here."""
    lines = _content_lines(text)
    _expect_tag(lines, WITNESS_TAG, source)
    n, m = _parse_shape(lines, source)
    rows = []
    last = 2
    for number, line in lines:
        last = number
        if len(rows) == m:
            raise ParseError(f"more than {m} rows", number, _indent(line) + 1, source)
        entries = line.split(";")
        if len(entries) != m:
            raise ParseError(f"row has {len(entries)} entries, expected {m}", number, 1, source)
        row = []
        column = 1
        for entry in entries:
            if not entry.strip():
                raise ParseError("empty entry", number, column, source)
            row.append(parse_laurent(entry, number, column))
            column += len(entry) + 1
        rows.append(row)
    if len(rows) != m:
        raise ParseError(f"expected {m} rows, found {len(rows)}", last + 1, 1, source)
    try:
        return WitnessFile(n, BasisFamily.from_rows(rows))
    except ParseError:
        raise
    except NaryError as exc:
        raise ParseError(str(exc), last, 1, source) from None


def render_witness(n: int, family: BasisFamily) -> str:
    lines = [WITNESS_TAG, f"n={n} m={family.dimension}"]
    for row in family.rows():
        lines.append("; ".join(render_laurent(entry) for entry in row))
    return "\n".join(lines) + "\n"


def read_structure(path: Path) -> AlgebraStructure:
    return parse_structure(Path(path).read_text(encoding="utf-8"), str(path))


def write_structure(path: Path, mu: AlgebraStructure) -> None:
    Path(path).write_text(render_structure(mu), encoding="utf-8")


def read_witness(path: Path) -> WitnessFile:
    return parse_witness(Path(path).read_text(encoding="utf-8"), str(path))


def write_witness(path: Path, n: int, family: BasisFamily) -> None:
    Path(path).write_text(render_witness(n, family), encoding="utf-8")


def write_chain(directory: Path, witnesses) -> list[Path]:
    """Write step-<i>.witness and step-<i>.structure for every witness, in order."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for i, witness in enumerate(witnesses, start=1):
        witness_path = directory / f"step-{i}.witness"
        target_path = directory / f"step-{i}.structure"
        write_witness(witness_path, witness.source.arity, witness.family)
        write_structure(target_path, witness.target)
        written.extend([witness_path, target_path])
    return written
