"""Exact linear algebra over the rationals.

Elimination is fraction-free: rational input rows are scaled to integer
rows, and every row operation is an integer cross-multiplication followed
by division by the row content.  Subspaces are returned in a canonical
form (primitive integer reduced-echelon rows) so that equality of two
subspaces is a literal comparison of tuples.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to integers with content 1 and first nonzero
    entry positive.  The zero vector is returned unchanged."""
    fr = [as_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        p = primitive(r)
        if any(p):
            out.append(list(p))
    return out


def rref(rows: Iterable[Sequence], ncols: int | None = None):
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(rows, pivots)`` where ``rows`` are primitive integer rows in
    reduced echelon form (each pivot column is zero outside its pivot row)
    and ``pivots`` lists the pivot column of each row.
    """
    m = _integer_rows(rows)
    if not m:
        return [], []
    if ncols is None:
        ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(len(m)):
            if i == r or not m[i][c]:
                continue
            f = m[i][c]
            row = [p * a - f * b for a, b in zip(m[i], m[r])]
            g = reduce(gcd, row, 0)
            m[i] = [a // g for a in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = [list(primitive(row)) for row in m[:r]]
    return out, pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def canonical_basis(vectors: Iterable[Sequence], dim: int | None = None) -> tuple[Vector, ...]:
    """Canonical basis of the span of ``vectors``."""
    rows, _ = rref(vectors, dim)
    return tuple(tuple(r) for r in rows)


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Vector, ...]:
    """Canonical basis of ``{x : m x = 0}``."""
    m = [list(r) for r in m]
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    rows, pivots = rref(m, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = Fraction(-row[f], row[p])
        basis.append(x)
    return canonical_basis(basis, ncols)


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def quad_form(m: Sequence[Sequence], v: Sequence):
    return sum(vi * x for vi, x in zip(v, matvec(m, v)))


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def same_subspace(a: Iterable[Sequence], b: Iterable[Sequence], dim: int | None = None) -> bool:
    return canonical_basis(a, dim) == canonical_basis(b, dim)
