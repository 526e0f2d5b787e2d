"""Text formats read and written by the command line tool.

arrangement::

    # comment
    lines 6
    coeffs            (or: flats)
    1 0 0             one line per row, rationals as p/q
    ...

matrix: ``n`` then n rows of n integers.  graph: ``n e`` then e rows
``i j`` (1-based).  weights: one weight per row of rationals.  Latin
squares: ``n`` then one or more n x n squares of entries 1..n.

Blank lines and ``#`` comments are ignored everywhere.  Every parse error
carries the 1-based line number of the offending line.
"""

from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ParseError
from .incidence import Arrangement, arrangement_from_incidence, flats_from_rational_lines


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}", lineno) from None


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", lineno) from None


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- arrangements ---------------------------------------------------------------

def parse_arrangement(text: str, name: str | None = None) -> Arrangement:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty arrangement file", 1)
    n = None
    mode = None
    body = []
    for lineno, toks in rows:
        head = toks[0].lower()
        if n is None:
            if head != "lines" or len(toks) != 2:
                raise ParseError("expected header 'lines <n>'", lineno)
            n = _int(toks[1], lineno)
            if n < 1:
                raise ParseError("line count must be positive", lineno)
            continue
        if head == "name" and mode is None:
            name = " ".join(toks[1:]) or name
            continue
        if mode is None:
            if head not in ("coeffs", "flats") or len(toks) != 1:
                raise ParseError("expected 'coeffs' or 'flats'", lineno)
            mode = head
            continue
        body.append((lineno, toks))
    if mode is None:
        raise ParseError("missing 'coeffs' or 'flats' block", rows[-1][0])
    if mode == "coeffs":
        if len(body) != n:
            where = body[n][0] if len(body) > n else rows[-1][0]
            raise ParseError(f"expected {n} coefficient rows, found {len(body)}", where)
        lines = []
        for lineno, toks in body:
            if len(toks) != 3:
                raise ParseError(f"a line needs 3 coefficients, got {len(toks)}", lineno)
            lines.append([_rational(t, lineno) for t in toks])
        try:
            return flats_from_rational_lines(lines, name=name)
        except DomainError as exc:
            raise type(exc)(str(exc)) from None
    flats = []
    for lineno, toks in body:
        flat = [_int(t, lineno) for t in toks]
        if any(i < 1 or i > n for i in flat):
            raise ParseError(f"line index outside 1..{n}", lineno)
        flats.append(flat)
    return arrangement_from_incidence(n, flats, name=name)


def write_arrangement(arr: Arrangement) -> str:
    out = []
    if arr.name:
        out.append(f"# {arr.name}")
    out.append(f"lines {arr.n}")
    if arr.lines is not None:
        out.append("coeffs")
        out.extend(" ".join(str(c) for c in ln.coeffs) for ln in arr.lines)
    else:
        out.append("flats")
        out.extend(" ".join(map(str, f)) for f in arr.primes2)
    return "\n".join(out) + "\n"


# --- matrices, graphs, weights -----------------------------------------------

def parse_matrix(text: str) -> list[list[int]]:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty matrix file", 1)
    lineno, toks = rows[0]
    if len(toks) != 1:
        raise ParseError("expected the matrix size n on the first line", lineno)
    n = _int(toks[0], lineno)
    if n < 1:
        raise ParseError("matrix size must be positive", lineno)
    body = rows[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else rows[-1][0]
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", where)
    m = []
    for lineno, toks in body:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", lineno)
        m.append([_int(t, lineno) for t in toks])
    return m


def write_matrix(m) -> str:
    return "\n".join([str(len(m))] + [" ".join(str(x) for x in row) for row in m]) + "\n"


def parse_graph(text: str):
    """Returns ``(n, edges)`` with 1-based vertices."""
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty graph file", 1)
    lineno, toks = rows[0]
    if len(toks) != 2:
        raise ParseError("expected 'n e' on the first line", lineno)
    n, e = _int(toks[0], lineno), _int(toks[1], lineno)
    if n < 1 or e < 0:
        raise ParseError("need n >= 1 and e >= 0", lineno)
    body = rows[1:]
    if len(body) != e:
        where = body[e][0] if len(body) > e else rows[-1][0]
        raise ParseError(f"expected {e} edges, found {len(body)}", where)
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise ParseError("an edge is two vertex indices", lineno)
        i, j = _int(toks[0], lineno), _int(toks[1], lineno)
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ParseError(f"bad edge {i} {j}", lineno)
        edges.append((i, j))
    return n, edges


def write_graph(n: int, edges: Iterable[tuple[int, int]]) -> str:
    edges = list(edges)
    return "\n".join([f"{n} {len(edges)}"] + [f"{i} {j}" for i, j in edges]) + "\n"


def parse_weights(text: str, n: int | None = None) -> list[tuple[Fraction, ...]]:
    out = []
    for lineno, toks in _content_lines(text):
        w = tuple(_rational(t, lineno) for t in toks)
        if n is not None and len(w) != n:
            raise ParseError(f"weight has {len(w)} entries, expected {n}", lineno)
        out.append(w)
    if not out:
        raise ParseError("no weights in file", 1)
    return out


def parse_latin(text: str):
    """Returns ``(n, squares)``; each square is a list of n rows."""
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty Latin-square file", 1)
    lineno, toks = rows[0]
    if len(toks) != 1:
        raise ParseError("expected n on the first line", lineno)
    n = _int(toks[0], lineno)
    if n < 2:
        raise ParseError("n must be at least 2", lineno)
    body = rows[1:]
    if not body or len(body) % n:
        where = body[-1][0] if body else lineno
        raise ParseError(f"expected a multiple of {n} rows, found {len(body)}", where)
    squares = []
    for s in range(0, len(body), n):
        square = []
        for lineno, toks in body[s:s + n]:
            if len(toks) != n:
                raise ParseError(f"expected {n} entries, got {len(toks)}", lineno)
            row = tuple(_int(t, lineno) for t in toks)
            if sorted(row) != list(range(1, n + 1)):
                raise ParseError(f"row is not a permutation of 1..{n}", lineno)
            square.append(row)
        for c in range(n):
            if sorted(r[c] for r in square) != list(range(1, n + 1)):
                raise ParseError(f"column {c + 1} of square {s // n + 1} repeats an entry",
                                 body[s + n - 1][0])
        squares.append(square)
    return n, squares


def squares_to_arrays(n: int, squares):
    """Permutation arrays for the Latin construction: block 1 is the
    identity array, square s gives the permutations of block s + 2."""
    ident = tuple(range(1, n + 1))
    return [[ident] * n] + [[tuple(row) for row in sq] for sq in squares]
