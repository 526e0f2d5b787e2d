"""0-1 realizations of symmetric matrices Q = J^t J - E.

Columns of J are the vertices of Q (lines), rows are dependent sets
(multiple points).  Column i carries q_ii + 1 ones; columns i != j share
q_ij + 1 rows, so q_ij = 0 means "exactly one common row" and q_ij = -1
means "disjoint".

Rows with a single 1 are padding rows; they are only allowed when Q is
indecomposable.  For decomposable Q every row has to meet every affine
block (every block if none is affine).
"""

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .errors import (BadMatrix, BadNormalization, Inapplicable, NotDisjoint,
                     SearchBudgetExceeded)
from .incidence import Arrangement, arrangement_from_incidence
from .qforms import FlatCollection, build_J, matrix_Q
from .vinberg import Kind, classify_block

DEFAULT_BUDGET = 2_000_000

Row = tuple[int, ...]

J_C = (
    (1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1),
    (0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (0, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0),
    (0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0),
    (0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1),
    (0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0),
)
"""Incidence of the 9 points and 12 lines of AG(2,3), lines grouped by
parallel class."""

A2_CARTAN = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def gram_minus_ones(j: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    """J^t J - E."""
    if ncols is None:
        ncols = len(j[0]) if j else 0
    q = [[-1] * ncols for _ in range(ncols)]
    for row in j:
        ones = [k for k, x in enumerate(row) if x]
        for a in ones:
            for b in ones:
                q[a][b] += 1
    return tuple(map(tuple, q))


def canonical_rows(rows) -> tuple[Row, ...]:
    return tuple(sorted((tuple(r) for r in rows), reverse=True))


@dataclass(frozen=True)
class Realization:
    """A 0-1 matrix J, rows in canonical (descending) order."""

    j: tuple[Row, ...]
    ncols: int
    blocks: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def structural_rows(self) -> tuple[Row, ...]:
        return tuple(r for r in self.j if sum(r) >= 2)

    @property
    def padding_rows(self) -> tuple[Row, ...]:
        return tuple(r for r in self.j if sum(r) == 1)

    def q(self):
        return gram_minus_ones(self.j, self.ncols)

    def check(self, q) -> bool:
        """J^t J - E == q and any two columns share at most one row."""
        if tuple(map(tuple, q)) != self.q():
            return False
        return all(x <= 0 for i, row in enumerate(self.q()) for k, x in enumerate(row) if i != k)

    def columns(self) -> list[frozenset[int]]:
        return [frozenset(r for r, row in enumerate(self.j) if row[c]) for c in range(self.ncols)]


def _validate(q) -> list[list[int]]:
    try:
        q = [[int(x) for x in row] for row in q]
    except (TypeError, ValueError) as exc:
        raise BadMatrix(f"matrix entries must be integers: {exc}") from exc
    n = len(q)
    if n == 0:
        raise BadMatrix("empty matrix")
    if any(len(r) != n for r in q):
        raise BadMatrix("matrix is not square")
    for i in range(n):
        if q[i][i] < -1:
            raise BadMatrix(f"diagonal entry {i + 1} is {q[i][i]} < -1")
        for k in range(i + 1, n):
            if q[i][k] != q[k][i]:
                raise BadMatrix(f"matrix is not symmetric at ({i + 1},{k + 1})")
            if q[i][k] not in (0, -1):
                raise BadMatrix(f"off-diagonal entry ({i + 1},{k + 1}) = {q[i][k]} not in {{0,-1}}")
    return q


def block_kinds(q) -> list[tuple[tuple[int, ...], Kind]]:
    """Blocks of ``q`` as 0-based column tuples with their types."""
    bm = matrix_Q(q, labels=range(len(q)))
    return [(blk, classify_block(m).kind) for blk, m in bm.blocks()]


class _Search:
    def __init__(self, q, budget: int, limit: int | None):
        self.q = q
        self.n = n = len(q)
        self.resid = [q[i][i] + 1 for i in range(n)]
        self.need = {i: set() for i in range(n)}
        for i, k in itertools.combinations(range(n), 2):
            if q[i][k] == 0:
                self.need[i].add(k)
                self.need[k].add(i)
        kinds = block_kinds(q)
        self.padding_ok = len(kinds) == 1
        if len(kinds) >= 2:
            affine = [set(b) for b, kd in kinds if kd is Kind.AFFINE]
            self.required = affine or [set(b) for b, _ in kinds]
        else:
            self.required = []
        self.budget = budget
        self.limit = limit
        self.nodes = 0
        self.rows: list[frozenset] = []
        self.found: list[tuple[Row, ...]] = []

    def _row(self, cols) -> Row:
        return tuple(1 if c in cols else 0 for c in range(self.n))

    def run(self):
        self._dfs()
        return self.found

    def _first_pair(self):
        for i in range(self.n):
            if self.need[i]:
                return i, min(self.need[i])
        return None

    def _dfs(self):
        if self.limit is not None and len(self.found) >= self.limit:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"realization search exceeded {self.budget} nodes")
        pair = self._first_pair()
        if pair is None:
            self._emit()
            return
        i, j = pair
        if self.resid[i] <= 0 or self.resid[j] <= 0:
            return
        cand = sorted(k for k in self.need[i] & self.need[j] if self.resid[k] > 0)
        for extra in self._cliques(cand, 0, []):
            cols = [i, j, *extra]
            if self.required and not all(blk.intersection(cols) for blk in self.required):
                continue
            self._apply(cols, +1)
            if self._feasible(cols):
                self._dfs()
            self._apply(cols, -1)

    def _cliques(self, cand, start, chosen):
        yield list(chosen)
        for idx in range(start, len(cand)):
            k = cand[idx]
            if all(k in self.need[c] for c in chosen):
                chosen.append(k)
                yield from self._cliques(cand, idx + 1, chosen)
                chosen.pop()

    def _apply(self, cols, sign):
        if sign > 0:
            for a, b in itertools.combinations(cols, 2):
                self.need[a].discard(b)
                self.need[b].discard(a)
            for c in cols:
                self.resid[c] -= 1
            self.rows.append(frozenset(cols))
        else:
            self.rows.pop()
            for a, b in itertools.combinations(cols, 2):
                self.need[a].add(b)
                self.need[b].add(a)
            for c in cols:
                self.resid[c] += 1

    def _feasible(self, cols) -> bool:
        for c in cols:
            if self.resid[c] < 0:
                return False
            if self.resid[c] == 0 and self.need[c]:
                return False
            if not self.padding_ok and self.resid[c] > 0 and not self.need[c]:
                return False
        return True

    def _emit(self):
        rows = [self._row(r) for r in self.rows]
        for c in range(self.n):
            if self.resid[c] < 0:
                return
            if self.resid[c] > 0:
                if not self.padding_ok:
                    return
                rows.extend(self._row({c}) for _ in range(self.resid[c]))
        self.found.append(canonical_rows(rows))


def automorphisms_of_q(q) -> list[tuple[int, ...]]:
    """Column permutations p with q[p[i]][p[k]] == q[i][k]."""
    n = len(q)
    g = nx.Graph()
    for i in range(n):
        g.add_node(i, d=q[i][i])
    for i, k in itertools.combinations(range(n), 2):
        if q[i][k] == -1:
            g.add_edge(i, k)
    gm = GraphMatcher(g, g, node_match=lambda a, b: a["d"] == b["d"])
    return [tuple(m[i] for i in range(n)) for m in gm.isomorphisms_iter()]


def canonical_up_to(rows, perms) -> tuple[Row, ...]:
    """Smallest row-sorted form over the given column permutations."""
    best = None
    for p in perms:
        form = canonical_rows(tuple(r[p[c]] for c in range(len(p))) for r in rows)
        if best is None or form < best:
            best = form
    return best


def _incidence_graph(j) -> nx.Graph:
    g = nx.Graph()
    for r, row in enumerate(j):
        g.add_node(("r", r), side="r")
        for c, x in enumerate(row):
            g.add_node(("c", c), side="c")
            if x:
                g.add_edge(("r", r), ("c", c))
    return g


def isomorphism_classes(realizations) -> list[tuple[Row, ...]]:
    """Group 0-1 matrices of equal shape by row/column isomorphism and
    return the smallest member of each class.

    Two realizations of the same Q are isomorphic iff they differ by a row
    permutation and an automorphism of Q, since any column bijection
    preserving the incidence preserves J^t J.
    """
    buckets: dict[str, list[tuple[tuple[Row, ...], nx.Graph]]] = {}
    for j in sorted(realizations):
        g = _incidence_graph(j)
        key = nx.weisfeiler_lehman_graph_hash(g, node_attr="side")
        reps = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(g, h, node_match=_same_side) for _, h in reps):
            reps.append((j, g))
    return sorted(j for reps in buckets.values() for j, _ in reps)


def _same_side(a, b) -> bool:
    return a["side"] == b["side"]


def realize(q, limit: int | None = None, budget: int = DEFAULT_BUDGET,
            up_to: str = "rows") -> list[Realization]:
    """All realizations of ``q``, sorted.

    ``up_to="rows"`` keeps the column order of ``q`` (realizations equal
    up to row permutation are identified).  ``up_to="automorphism"`` also
    identifies realizations related by a column permutation preserving
    ``q`` and reports the smallest representative of each class.
    """
    q = _validate(q)
    if up_to not in ("rows", "automorphism"):
        raise BadMatrix(f"unknown equivalence {up_to!r}")
    search = _Search(q, budget, limit if up_to == "rows" else None)
    raw = sorted(set(search.run()))
    blocks = tuple(b for b, _ in block_kinds(q))
    if up_to == "automorphism":
        raw = isomorphism_classes(raw)
        if limit is not None:
            raw = raw[:limit]
    out = [Realization(r, len(q), blocks) for r in raw]
    for r in out:
        if not r.check(q):  # pragma: no cover - search invariant
            raise AssertionError("realization search produced a wrong matrix")
    return out


def is_isomorphic_incidence(j1, j2) -> bool:
    """Equality of 0-1 matrices up to row and column permutations."""
    if len(j1) != len(j2) or (j1 and len(j1[0]) != len(j2[0])):
        return False
    return nx.is_isomorphic(_incidence_graph(j1), _incidence_graph(j2), node_match=_same_side)


def columns_of(j, cols) -> tuple[Row, ...]:
    return tuple(tuple(row[c] for c in cols) for row in j)


# --- transversal inequalities ------------------------------------------------

def transversal_report(real: Realization, q) -> list[str]:
    """Violations of |bar K| <= |C_j| <= |K| for every affine block K and
    every column j outside K (empty list when all hold)."""
    q = _validate(q)
    kinds = block_kinds(q)
    if len(kinds) < 2:
        return []
    cols = real.columns()
    g = nx.Graph()
    g.add_nodes_from(range(len(q)))
    g.add_edges_from((i, k) for i, k in itertools.combinations(range(len(q)), 2) if q[i][k] == -1)
    problems = []
    for blk, kind in kinds:
        if kind is not Kind.AFFINE:
            continue
        bar = max(len(c) for c in nx.find_cliques(g.subgraph(blk)))
        for jcol in range(len(q)):
            if jcol in blk:
                continue
            if any(len(cols[jcol] & cols[i]) != 1 for i in blk):
                problems.append(f"column {jcol + 1} is not transversal to block {[b + 1 for b in blk]}")
            size = len(cols[jcol])
            if not bar <= size <= len(blk):
                problems.append(f"|C_{jcol + 1}| = {size} outside [{bar}, {len(blk)}] for block "
                                f"{[b + 1 for b in blk]}")
    return problems


# --- Latin square construction -----------------------------------------------

def _is_perm(p, n) -> bool:
    return sorted(p) == list(range(1, n + 1))


def _disjoint(p, s) -> bool:
    return all(a != b for a, b in zip(p, s))


def realization_from_latin_squares(n: int, arrays) -> Realization:
    """J with ell blocks of n columns and n^2 rows from permutations.

    ``arrays[j][i]`` is the permutation sigma(i+1, j+1) of 1..n written as
    its image tuple, for j = 0..ell-2 and i = 0..n-1.  Row (i, t) has its 1
    in column i of block 0, column t of block 1 and column
    sigma(i, j)(t) of block j + 1.  Normalization: ``arrays[0]`` and the
    first permutation of each array are the identity.
    """
    if n < 2:
        raise BadNormalization("n must be at least 2")
    arrays = [[tuple(int(x) for x in p) for p in arr] for arr in arrays]
    if not arrays:
        raise BadNormalization("need at least one permutation array")
    ident = tuple(range(1, n + 1))
    for j, arr in enumerate(arrays):
        if len(arr) != n:
            raise BadNormalization(f"array {j + 1} has {len(arr)} permutations, expected {n}")
        for i, p in enumerate(arr):
            if len(p) != n or not _is_perm(p, n):
                raise BadNormalization(f"entry ({i + 1},{j + 1}) is not a permutation of 1..{n}")
        if arr[0] != ident:
            raise BadNormalization(f"sigma(1,{j + 1}) is not the identity")
    if any(p != ident for p in arrays[0]):
        raise BadNormalization("sigma(i,1) must be the identity for every i")
    for j, arr in enumerate(arrays[1:], start=2):
        for i1, i2 in itertools.combinations(range(n), 2):
            if not _disjoint(arr[i1], arr[i2]):
                raise NotDisjoint(f"sigma({i1 + 1},{j}) and sigma({i2 + 1},{j}) agree somewhere")
    for i in range(1, n):
        for j1, j2 in itertools.combinations(range(len(arrays)), 2):
            if not _disjoint(arrays[j1][i], arrays[j2][i]):
                raise NotDisjoint(f"sigma({i + 1},{j1 + 1}) and sigma({i + 1},{j2 + 1}) agree somewhere")
    ell = len(arrays) + 1
    rows = []
    for i in range(n):
        for t in range(n):
            row = [0] * (n * ell)
            row[i] = 1
            row[n + t] = 1
            for j in range(1, len(arrays)):
                row[(j + 1) * n + arrays[j][i][t] - 1] = 1
            rows.append(tuple(row))
    q = gram_minus_ones(rows, n * ell)
    if any(q[a][b] > 0 for a in range(n * ell) for b in range(n * ell) if a != b):
        raise NotDisjoint("two columns share more than one row")
    blocks = tuple(tuple(range(k * n, (k + 1) * n)) for k in range(ell))
    return Realization(tuple(rows), n * ell, blocks)


def latin_parametrizations(n: int, ell: int) -> list[list[list[tuple[int, ...]]]]:
    """All normalized permutation systems for n and ell blocks, in DFS
    order (permutations tried in lexicographic order; block-major)."""
    return list(iter_latin_parametrizations(n, ell))


def iter_latin_parametrizations(n: int, ell: int):
    if n < 2 or ell < 2:
        raise BadNormalization("need n >= 2 and ell >= 2")
    ident = tuple(range(1, n + 1))
    perms = [p for p in itertools.permutations(ident) if p != ident and _disjoint(p, ident)]
    slots = [(j, i) for j in range(1, ell - 1) for i in range(1, n)]
    arrays = [[ident] * n] + [[ident] + [None] * (n - 1) for _ in range(ell - 2)]

    def ok(j, i, p):
        if not all(_disjoint(p, arrays[j][k]) for k in range(i)):
            return False
        if not all(_disjoint(p, arrays[jj][i]) for jj in range(1, j)):
            return False
        # columns of blocks jj + 1 and j + 1 may share only one row
        for jj in range(1, j):
            used = {(arrays[jj][k][t], arrays[j][k][t]) for k in range(i) for t in range(n)}
            if any((arrays[jj][i][t], p[t]) in used for t in range(n)):
                return False
        return True

    def pairwise_latin():
        # blocks j, j' >= 2 must also meet in exactly one row per column pair
        for j1, j2 in itertools.combinations(range(1, ell - 1), 2):
            seen = set()
            for i in range(n):
                for t in range(n):
                    key = (arrays[j1][i][t], arrays[j2][i][t])
                    if key in seen:
                        return False
                    seen.add(key)
        return True

    def dfs(k):
        if k == len(slots):
            if pairwise_latin():
                yield [list(a) for a in arrays]
            return
        j, i = slots[k]
        for p in perms:
            if ok(j, i, p):
                arrays[j][i] = p
                yield from dfs(k + 1)
                arrays[j][i] = None

    yield from dfs(0)


def latin_realization(n: int, ell: int, squares=None) -> Realization:
    """The construction for given arrays, or the first one found."""
    if squares is None:
        squares = next(iter_latin_parametrizations(n, ell), None)
        if squares is None:
            raise NotDisjoint(f"no permutation system for n={n}, ell={ell}")
    return realization_from_latin_squares(n, squares)


def latin_arrangement(n: int, ell: int, squares=None) -> Arrangement:
    """Abstract arrangement whose multiple points are the rows of the
    Latin construction (needs ell >= 3)."""
    if ell < 3:
        raise BadNormalization("rows need at least three lines; take ell >= 3")
    real = latin_realization(n, ell, squares)
    flats = [[c + 1 for c, x in enumerate(row) if x] for row in real.j]
    return arrangement_from_incidence(n * ell, flats, name=f"latin({n},{ell})")


# --- structural checks ---------------------------------------------------------

@dataclass(frozen=True)
class FullGraphReport:
    n: int
    blocks: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_complete_block(q, blk) -> bool:
    return all(q[a][b] == -1 for a, b in itertools.combinations(blk, 2))


def full_graph_block_check(q) -> FullGraphReport:
    """Check the conclusions for Q with at least two affine full-graph
    blocks of size >= 2: a common n with all diagonals n - 1, every block
    of size n and at most n + 1 blocks."""
    q = _validate(q)
    kinds = block_kinds(q)
    full = [b for b, kd in kinds if kd is Kind.AFFINE and len(b) >= 2 and _is_complete_block(q, b)]
    if len(full) < 2:
        raise Inapplicable("needs at least two affine full-graph blocks with two or more vertices")
    n = len(full[0])
    v = []
    if any(len(b) != n for b in full):
        v.append("full-graph blocks have different sizes")
    for i in range(len(q)):
        if q[i][i] != n - 1:
            v.append(f"diagonal entry {i + 1} is {q[i][i]}, expected {n - 1}")
    for b, _ in kinds:
        if len(b) != n:
            v.append(f"block {[x + 1 for x in b]} has {len(b)} elements, expected {n}")
    if len(kinds) > n + 1:
        v.append(f"{len(kinds)} blocks exceed n + 1 = {n + 1}")
    return FullGraphReport(n, len(kinds), tuple(v))


@dataclass(frozen=True)
class CartanVerdict:
    realizable: bool
    reason: str


_A2_SUBS = {((2,),), ((2, -1), (-1, 2))}


def cartan_case_classify(q) -> CartanVerdict:
    """Realizability when at least three blocks are affine and all labels
    are 2: at most four blocks, every affine block the 3x3 A_2 affine
    Cartan matrix, finite blocks principal submatrices of it."""
    q = _validate(q)
    if any(q[i][i] != 2 for i in range(len(q))):
        raise Inapplicable("all diagonal entries must be 2")
    bm = matrix_Q(q, labels=range(len(q)))
    blocks = [(b, m, classify_block(m).kind) for b, m in bm.blocks()]
    affine = [b for b in blocks if b[2] is Kind.AFFINE]
    if len(affine) < 3:
        raise Inapplicable(f"needs at least three affine blocks, found {len(affine)}")
    if len(blocks) > 4:
        return CartanVerdict(False, f"{len(blocks)} blocks; at most four are possible")
    for b, m, kind in blocks:
        if kind is Kind.AFFINE and m != A2_CARTAN:
            return CartanVerdict(False, f"affine block {[x + 1 for x in b]} is not of type A2")
        if kind is Kind.FINITE and m not in _A2_SUBS:
            return CartanVerdict(False, f"finite block {[x + 1 for x in b]} is not a principal submatrix of A2")
        if kind is Kind.INDEFINITE:  # pragma: no cover - excluded by the trichotomy
            return CartanVerdict(False, "indefinite block")
    return CartanVerdict(True, f"{len(affine)} A2 blocks; realized by {len(q)} columns of J_C")


def cartan_matrix(kind: str, copies: int = 1) -> tuple[tuple[int, ...], ...]:
    """Direct sums of small Cartan-type matrices: ``A2``, ``A1``, ``A2f``
    (finite A2), ``A3f``, ``A3`` (affine, 4-cycle), ``D4`` (affine star)."""
    base = {
        "A2": A2_CARTAN,
        "A1": ((2,),),
        "A2f": ((2, -1), (-1, 2)),
        "A3f": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
        "A3": ((2, -1, 0, -1), (-1, 2, -1, 0), (0, -1, 2, -1), (-1, 0, -1, 2)),
        "D4": ((2, -1, -1, -1, -1), (-1, 2, 0, 0, 0), (-1, 0, 2, 0, 0), (-1, 0, 0, 2, 0), (-1, 0, 0, 0, 2)),
    }
    if kind not in base:
        raise BadMatrix(f"unknown Cartan type {kind!r}")
    return direct_sum(*([base[kind]] * copies))


def direct_sum(*ms) -> tuple[tuple[int, ...], ...]:
    n = sum(len(m) for m in ms)
    out = [[0] * n for _ in range(n)]
    off = 0
    for m in ms:
        for i, row in enumerate(m):
            for k, x in enumerate(row):
                out[off + i][off + k] = x
        off += len(m)
    return tuple(map(tuple, out))


def embeds_in_jc(collection: FlatCollection) -> bool:
    """Whether the incidence of ``collection`` is J_C restricted to its
    first 9 columns and some of the last 3, up to row/column order."""
    j = build_J(collection)
    for extra in range(4):
        for cols in itertools.combinations(range(9, 12), extra):
            if is_isomorphic_incidence(j, columns_of(J_C, list(range(9)) + list(cols))):
                return True
    return False
