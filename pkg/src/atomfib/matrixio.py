"""Matrix and vector input, fiber listings as text or JSON.

Matrix files follow the 4ti2 layout: a header line "d n" followed by d
lines of n whitespace-separated integers. Blank lines and lines starting
with '#' are ignored.
"""

import json
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

from .errors import ParseError
from .intlin import IntMat, IntVec


def _tokens(text: str) -> Iterator[Tuple[int, List[Tuple[int, str]]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        col = 0
        for word in line.split():
            col = line.index(word, col)
            tokens.append((col + 1, word))
            col += len(word)
        yield lineno, tokens


def _to_int(word: str, line: int, column: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"expected an integer, got {word!r}", line, column)


def parse_matrix_text(text: str) -> IntMat:
    """Parse a "d n" header plus d rows of n integers.

    Raises:
        ParseError: missing header, wrong row count, ragged row or non-integer token
    """
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix input")
    lineno, header = lines[0]
    if len(header) != 2:
        raise ParseError(f"header must be 'd n', got {len(header)} fields", lineno, 1)
    d, n = (_to_int(w, lineno, c) for c, w in header)
    if d < 0 or n < 0:
        raise ParseError(f"negative dimensions {d} x {n}", lineno, 1)
    body = lines[1:]
    if len(body) != d:
        where = body[d][0] if len(body) > d else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(f"header announces {d} rows, found {len(body)}", where)
    rows = []
    for row_line, tokens in body:
        if len(tokens) != n:
            column = tokens[n][0] if len(tokens) > n else None
            raise ParseError(f"row has {len(tokens)} entries, expected {n}", row_line, column)
        rows.append(tuple(_to_int(w, row_line, c) for c, w in tokens))
    return IntMat.from_rows(rows, n)


def parse_matrix(path: Union[str, Path]) -> IntMat:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"matrix file not found: {path}")
    return parse_matrix_text(path.read_text())


def parse_vector(text: str) -> IntVec:
    """Integers separated by commas and/or whitespace, e.g. "8,7" or "8 7"."""
    words = text.replace(",", " ").split()
    if not words:
        raise ParseError("empty vector")
    out = []
    for i, w in enumerate(words, start=1):
        try:
            out.append(int(w))
        except ValueError:
            raise ParseError(f"vector entry {i} is not an integer: {w!r}", 1, i)
    return tuple(out)


def format_matrix(matrix: IntMat) -> str:
    lines = [f"{matrix.d} {matrix.n}"]
    lines.extend(" ".join(str(a) for a in row) for row in matrix.rows)
    return "\n".join(lines) + "\n"


def _vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


def format_listing(listing: dict) -> str:
    """Text form of a fiber listing: ``b: b_1 ... b_d``, then one element (or minimal representative) per line."""
    kind = "elements" if "elements" in listing else "min_reps"
    head = "b: " + " ".join(str(a) for a in listing["rhs"])
    return "\n".join([head] + [" ".join(str(a) for a in z) for z in listing[kind]])


def format_fiber_set(data: dict) -> str:
    """Text form of ``AtomicFiberSet.to_dict``."""
    lines = [
        f"# {data['provenance']}: {data['count']} atomic fibers of order {data['order']} "
        f"(rhs domain: {data['rhs_domain']}, neutral rhs counted: {'yes' if data['neutral'] else 'no'})"
    ]
    if "fibers" in data:
        lines.extend(format_listing(listing) for listing in data["fibers"])
    else:
        lines.extend(_vec(b) for b in data["rhs"])
    return "\n".join(lines)


def to_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
