"""Line-oriented text format for codes.

::

    # comment
    q 2
    kind generator            # generator | parity_check | generator_pseudosystematic
    rows 2
    cols 3
    sourcesymbols 2           # generator_pseudosystematic only
    1 0 1
    0 1 1
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .code import LinearCode, UpdateCode, code_from_generator, code_from_parity_check
from .field import FieldMatrix, is_prime, rank

KINDS = ("generator", "parity_check", "generator_pseudosystematic")


class CodeFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ParsedCode:
    kind: str
    matrix: FieldMatrix
    code: LinearCode | UpdateCode
    notes: tuple[str, ...] = ()


def parse_code_text(text: str) -> ParsedCode:
    header: dict[str, tuple[int, str]] = {}
    body: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] in ("q", "kind", "rows", "cols", "sourcesymbols") and not body:
            if len(tokens) != 2:
                raise CodeFileError(f"header {tokens[0]!r} takes exactly one value", lineno)
            if tokens[0] in header:
                raise CodeFileError(f"duplicate header {tokens[0]!r}", lineno)
            header[tokens[0]] = (lineno, tokens[1])
        else:
            body.append((lineno, tokens))

    for key in ("q", "kind", "rows", "cols"):
        if key not in header:
            raise CodeFileError(f"missing header line {key!r}")

    def header_int(key):
        lineno, val = header[key]
        try:
            v = int(val)
        except ValueError:
            raise CodeFileError(f"{key} must be an integer, got {val!r}", lineno) from None
        if v < 1:
            raise CodeFileError(f"{key} must be positive", lineno)
        return v

    q = header_int("q")
    if not is_prime(q):
        raise CodeFileError(f"q = {q} is not prime", header["q"][0])
    kind_line, kind = header["kind"]
    if kind not in KINDS:
        raise CodeFileError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", kind_line)
    rows, cols = header_int("rows"), header_int("cols")
    if kind == "generator_pseudosystematic":
        if "sourcesymbols" not in header:
            raise CodeFileError("generator_pseudosystematic requires a 'sourcesymbols' header")
        k = header_int("sourcesymbols")
    elif "sourcesymbols" in header:
        raise CodeFileError("'sourcesymbols' only applies to generator_pseudosystematic", header["sourcesymbols"][0])

    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else None
        raise CodeFileError(f"expected {rows} matrix rows, found {len(body)}", where)
    entries = []
    for lineno, tokens in body:
        if len(tokens) != cols:
            raise CodeFileError(f"expected {cols} entries, found {len(tokens)}", lineno)
        row = []
        for tok in tokens:
            try:
                v = int(tok)
            except ValueError:
                raise CodeFileError(f"entry {tok!r} is not an integer", lineno) from None
            if not 0 <= v < q:
                raise CodeFileError(f"entry {v} outside [0, {q})", lineno)
            row.append(v)
        entries.append(row)
    M = FieldMatrix(entries, q)

    notes: list[str] = []
    if kind == "generator":
        code = code_from_generator(M)
        if code.k < rows:
            notes.append(f"generator has rank {code.k} < {rows} rows; K reduced to {code.k}")
    elif kind == "parity_check":
        code = code_from_parity_check(M)
        if rank(M) < rows:
            notes.append(f"parity-check matrix has rank {rank(M)} < {rows} rows")
    else:
        if rows != k:
            raise CodeFileError(f"sourcesymbols {k} must equal rows {rows}", header["sourcesymbols"][0])
        try:
            code = UpdateCode(M, cols - k)
        except ValueError as exc:
            raise CodeFileError(str(exc)) from None
    return ParsedCode(kind, M, code, tuple(notes))


def read_code_file(path) -> ParsedCode:
    return parse_code_text(Path(path).read_text())


def format_code(code: LinearCode | UpdateCode, comment: str = "") -> str:
    lines = [f"# {line}" for line in comment.splitlines()]
    G = code.G
    lines.append(f"q {G.q}")
    if isinstance(code, UpdateCode):
        lines += ["kind generator_pseudosystematic", f"rows {G.rows}", f"cols {G.cols}", f"sourcesymbols {code.k}"]
    else:
        lines += ["kind generator", f"rows {G.rows}", f"cols {G.cols}"]
    lines += [" ".join(str(x) for x in row) for row in G.tolist()]
    return "\n".join(lines) + "\n"


def write_code_file(code, path, comment: str = "") -> None:
    Path(path).write_text(format_code(code, comment))
