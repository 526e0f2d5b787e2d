"""Finite / affine / indefinite classification of symmetric blocks.

The type of an indecomposable block is read off its exact inertia,
computed by symmetric (congruence) elimination over the rationals.  Each
verdict ships a certificate that can be checked independently:

* finite     -- the leading principal minors, all positive;
* affine     -- the primitive positive integer kernel vector;
* indefinite -- a rational vector with negative value of the form.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (BadOffDiagonal, InternalTrichotomyError, NotSymmetric,
                     TrichotomyViolation)
from .linalg import matvec, primitive, quad_form
from .qforms import BlockMatrix


class Kind(str, Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class BlockClass:
    kind: Kind
    null_vector: tuple[int, ...] | None = None
    negative_vector: tuple[int, ...] | None = None
    minors: tuple[int, ...] | None = None
    inertia: tuple[int, int, int] = (0, 0, 0)

    def check(self, q) -> bool:
        """Re-verify the certificate against ``q`` by direct arithmetic."""
        if self.kind is Kind.AFFINE:
            u = self.null_vector
            return all(x == 0 for x in matvec(q, u)) and all(x > 0 for x in u) and primitive(u) == u
        if self.kind is Kind.INDEFINITE:
            return quad_form(q, self.negative_vector) < 0
        return all(m > 0 for m in self.minors)


@dataclass(frozen=True)
class CollectionClass:
    """Dichotomy verdict for a whole block matrix.

    ``affine`` is True when every block is finite or affine; then
    ``affine_blocks`` lists the affine ones.  Otherwise ``indefinite_block``
    is the unique indefinite block.
    """

    affine: bool
    classes: tuple[tuple[tuple, BlockClass], ...]
    affine_blocks: tuple[tuple, ...] = ()
    indefinite_block: tuple | None = None
    finite_blocks: tuple[tuple, ...] = field(default=())

    @property
    def verdict(self) -> str:
        return "affine" if self.affine else "indefinite"


def _validate(q: Sequence[Sequence[int]]):
    n = len(q)
    if any(len(r) != n for r in q):
        raise NotSymmetric("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if q[i][j] != q[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
            if q[i][j] not in (0, -1):
                raise BadOffDiagonal(f"off-diagonal entry ({i},{j}) = {q[i][j]} not in {{0,-1}}")


def _eliminate(q):
    """Congruence elimination.

    Returns ``(pivots, status, payload)``.  ``pivots`` are the eliminated
    (index, pivot value, column) triples, used to lift vectors of the
    remaining Schur complement back to the original coordinates.  Status is
    ``"negative"`` with a remaining-index vector, or ``"zero"`` with the
    indices spanning the null remainder.
    """
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    remaining = list(range(n))
    pivots = []
    while remaining:
        neg = next((i for i in remaining if a[i][i] < 0), None)
        if neg is not None:
            return pivots, "negative", {neg: Fraction(1)}
        p = next((i for i in remaining if a[i][i] > 0), None)
        if p is None:
            # zero diagonal: a nonzero off-diagonal gives a hyperbolic pair
            for i in remaining:
                for j in remaining:
                    if i < j and a[i][j] != 0:
                        s = 1 if a[i][j] > 0 else -1
                        return pivots, "negative", {i: Fraction(1), j: Fraction(-s)}
            return pivots, "zero", list(remaining)
        remaining.remove(p)
        app = a[p][p]
        col = {r: a[r][p] for r in remaining if a[r][p]}
        for r, arp in col.items():
            f = arp / app
            row = a[r]
            for s, asp in col.items():
                row[s] -= f * asp
        pivots.append((p, app, col))
    return pivots, "zero", []


def _lift(pivots, partial: dict, n: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    for i, x in partial.items():
        v[i] = x
    for p, app, col in reversed(pivots):
        v[p] = -sum(arp * v[r] for r, arp in col.items()) / app
    return v


def inertia(q) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i + e_j (or e_i - e_j) has nonzero value; rotate it in
            t = 1 if a[i][i] + a[j][j] + 2 * a[i][j] != 0 else -1
            for k in range(n):
                a[i][k] += t * a[j][k]
            for k in range(n):
                a[k][i] += t * a[k][j]
            continue
        idx.remove(p)
        app = a[p][p]
        if app > 0:
            pos += 1
        else:
            neg += 1
        for r in idx:
            if a[r][p]:
                f = a[r][p] / app
                for s in idx:
                    a[r][s] -= f * a[p][s]
        for r in idx:
            a[r][p] = a[p][r] = Fraction(0)
    return pos, neg, len(idx)


def leading_minors(q) -> tuple[int, ...]:
    from .linalg import det

    return tuple(det([row[:k] for row in q[:k]]) for k in range(1, len(q) + 1))


def classify_block(q: Sequence[Sequence[int]]) -> BlockClass:
    """Classify an indecomposable symmetric block with off-diagonal in {0,-1}."""
    q = [list(map(int, r)) for r in q]
    _validate(q)
    n = len(q)
    if n == 0:
        raise NotSymmetric("empty matrix")
    pivots, status, payload = _eliminate(q)
    if status == "negative":
        v = primitive(_lift(pivots, payload, n))
        value = quad_form(q, v)
        if value >= 0:  # pragma: no cover - arithmetic invariant
            raise InternalTrichotomyError("negative certificate failed")
        return BlockClass(Kind.INDEFINITE, negative_vector=v, inertia=inertia(q))
    zeros = payload
    if not zeros:
        # pivots were taken in index order, so their running products are the minors
        minors, prod = [], Fraction(1)
        for _, app, _ in sorted(pivots, key=lambda t: t[0]):
            prod *= app
            minors.append(int(prod))
        in_order = [p for p, _, _ in pivots] == list(range(n))
        if not in_order:  # pragma: no cover - positive definite keeps natural order
            minors = list(leading_minors(q))
        return BlockClass(Kind.FINITE, minors=tuple(minors), inertia=(n, 0, 0))
    if len(zeros) != 1:
        raise InternalTrichotomyError(
            f"positive semidefinite block with nullity {len(zeros)}; input decomposable?")
    u = primitive(_lift(pivots, {zeros[0]: Fraction(1)}, n))
    if not all(x > 0 for x in u):
        raise InternalTrichotomyError(f"kernel vector {u} is not positive; input decomposable?")
    return BlockClass(Kind.AFFINE, null_vector=u, inertia=(n - 1, 0, 1))


def classify_collection(b: BlockMatrix) -> CollectionClass:
    classes = tuple((blk, classify_block(m)) for blk, m in b.blocks())
    affine = tuple(k for k, c in classes if c.kind is Kind.AFFINE)
    indefinite = [k for k, c in classes if c.kind is Kind.INDEFINITE]
    finite = tuple(k for k, c in classes if c.kind is Kind.FINITE)
    if len(indefinite) > 1 or (indefinite and affine):
        raise TrichotomyViolation(
            f"{len(indefinite)} indefinite and {len(affine)} affine blocks in one matrix")
    if indefinite:
        return CollectionClass(False, classes, (), indefinite[0], finite)
    return CollectionClass(True, classes, affine, None, finite)
