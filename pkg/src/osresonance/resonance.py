"""First resonance variety of the Orlik-Solomon algebra of a line arrangement.

Two independent routes to the cocycle space Z(a) = {x in A_1 : a x = 0}:

* :func:`cocycle_space_direct` solves the local linear system flat by flat;
* :func:`cocycle_space_q` goes through the support collection X(a), its
  matrix Q and the block classification.

:func:`enumerate_components` lists the components V(X)* cut out by
sub-collections X of the multiple points satisfying the affine / three-block
/ no-finite-flat conditions.  :func:`enumerate_all_components` also finds
components carried by subarrangements (braid subarrangements of the
Hessian, for instance), which are not of that form.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import NotSumZero, SearchBudgetExceeded, VerificationError, ZeroWeight
from .incidence import Arrangement, Flat, restricted_flats
from .linalg import as_fraction, canonical_basis, nullspace
from .qforms import FlatCollection, build_Q, nullspace_star
from .vinberg import Kind, classify_collection

DEFAULT_MAX_FLATS = 24


@dataclass(frozen=True)
class ResonanceComponent:
    """A component V(X)* of R_1.

    ``dim`` is the dimension of the linear space V(X)*; H^1(A, a) has
    dimension ``dim - 1`` for every nonzero ``a`` on it.
    """

    flats: FlatCollection
    basis: tuple[tuple[int, ...], ...]
    affine_blocks: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def support(self) -> tuple[int, ...]:
        return self.flats.ground

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def h1_dim(self) -> int:
        return self.dim - 1

    @property
    def is_local(self) -> bool:
        return len(self.flats.flats) == 1

    def sort_key(self):
        return (len(self.flats.flats), self.flats.flats)


def weight(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in values)


def _check_weight(arr: Arrangement, a, nonzero=True) -> tuple[Fraction, ...]:
    a = weight(a)
    if len(a) != arr.n:
        raise NotSumZero(f"weight has {len(a)} entries for {arr.n} lines")
    if sum(a) != 0:
        raise NotSumZero(f"weight entries sum to {sum(a)}, not 0")
    if nonzero and not any(a):
        raise ZeroWeight("weight is zero")
    return a


def support_flats(arr: Arrangement, a) -> FlatCollection | None:
    """X(a) on I(a): multiple points where ``a`` sums to zero without
    vanishing.  ``None`` when no such point exists."""
    a = _check_weight(arr, a, nonzero=False)
    xs = [f for f in arr.primes2
          if sum(a[i - 1] for i in f) == 0 and any(a[i - 1] for i in f)]
    if not xs:
        return None
    return FlatCollection.covering(xs)


def cocycle_space_direct(arr: Arrangement, a) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of Z(a) from the per-flat linear system."""
    a = _check_weight(arr, a)
    eqs = []
    for f in arr.flats2:
        restricted = [a[i - 1] for i in f]
        if len(f) >= 3 and sum(restricted) == 0 and any(restricted):
            eqs.append([1 if (k + 1) in f else 0 for k in range(arr.n)])
        else:
            for i, j in combinations(f, 2):
                row = [Fraction(0)] * arr.n
                row[j - 1] += a[i - 1]
                row[i - 1] -= a[j - 1]
                eqs.append(row)
    return nullspace(eqs, arr.n)


def _embed(vectors, ground, n):
    out = []
    for v in vectors:
        full = [0] * n
        for g, x in zip(ground, v):
            full[g - 1] = x
        out.append(full)
    return out


def cocycle_space_q(arr: Arrangement, a, literal: bool = False) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of Z(a) through Q(X(a)) and the block dichotomy.

    Degenerate branches: ``X(a)`` empty, or ``a`` nonzero off ``I(a)``,
    give ``span{a}``; an affine collection gives ``V(X(a))*``.

    An indefinite collection gives ``span{a}`` only when ``a`` has no zero
    on the indefinite block.  If it does, proportionality to ``a`` cannot
    be propagated through the zeros, and cocycles supported on a smaller
    subarrangement can survive (the Hessian has such weights).  The
    default then solves V(X(a))* together with the pair equations
    ``a_i x_j = a_j x_i`` along the edges of the graph of Q.  Pass
    ``literal=True`` to always return ``span{a}`` in the indefinite case.
    """
    a = _check_weight(arr, a)
    line_only = canonical_basis([a], arr.n)
    x = support_flats(arr, a)
    if x is None:
        return line_only
    inside = set(x.ground)
    if any(a[j - 1] for j in range(1, arr.n + 1) if j not in inside):
        return line_only
    bm = build_Q(x)
    cc = classify_collection(bm)
    m = len(x.ground)
    if cc.affine:
        return canonical_basis(_embed(nullspace_star(bm.q, m), x.ground, arr.n), arr.n)
    if literal or all(a[i - 1] for i in cc.indefinite_block):
        return line_only
    pos = x.index()
    rows = [list(r) for r in bm.q] + [[1] * m]
    for i, j in bm.edges:
        row = [Fraction(0)] * m
        row[pos[j]] += a[i - 1]
        row[pos[i]] -= a[j - 1]
        rows.append(row)
    return canonical_basis(_embed(nullspace(rows, m), x.ground, arr.n), arr.n)


def h1_dimension(arr: Arrangement, a) -> int:
    return len(cocycle_space_q(arr, a)) - 1


def component_of_weight(arr: Arrangement, a) -> ResonanceComponent | None:
    """The component of R_1 containing ``a``, or ``None`` if H^1(A, a) = 0.

    When X(a) is affine this is V(X(a))*.  Otherwise ``a`` lies on a
    component carried by a subarrangement; its flats are then the traces
    of multiple points on that subarrangement.
    """
    basis = cocycle_space_q(arr, a)
    if len(basis) < 2:
        return None
    x = support_flats(arr, a)
    if classify_collection(build_Q(x)).affine:
        return _component(arr, x)
    lines = sorted({k + 1 for v in basis for k, c in enumerate(v) if c})
    rng = random.Random(0)
    for attempt in range(50):
        b = _generic_point(basis, arr.n, rng, bound=8 << attempt)
        pts = [f for f in restricted_flats(arr, lines)
               if len(f) >= 3 and sum(b[i - 1] for i in f) == 0 and any(b[i - 1] for i in f)]
        if pts:
            comp = _sub_component(arr, pts)
            if comp.basis == basis:
                return comp
    raise VerificationError(f"no subarrangement component on {lines} reproduces Z(a)")  # pragma: no cover


def _component(arr: Arrangement, x: FlatCollection) -> ResonanceComponent:
    bm = build_Q(x)
    cc = classify_collection(bm)
    basis = canonical_basis(_embed(nullspace_star(bm.q, len(x.ground)), x.ground, arr.n), arr.n)
    return ResonanceComponent(x, basis, cc.affine_blocks, bm.partition)


def is_component(arr: Arrangement, flats: Sequence[Flat]) -> bool:
    """Check the three defining conditions for a sub-collection of L'(2)."""
    x = FlatCollection.covering(flats)
    cc = classify_collection(build_Q(x))
    if not cc.affine or len(cc.affine_blocks) < 3:
        return False
    non_affine = set().union(*map(set, cc.finite_blocks)) if cc.finite_blocks else set()
    return not any(set(f) <= non_affine for f in x.flats)


def generic_weight(arr: Arrangement, comp: ResonanceComponent, rng: random.Random,
                   attempts: int = 50, bound: int = 8) -> tuple[Fraction, ...] | None:
    """Random integer point of the component whose support collection is
    exactly the component's flats."""
    target = comp.flats.flats
    for _ in range(attempts):
        coeffs = [rng.randint(-bound, bound) for _ in comp.basis]
        a = tuple(Fraction(sum(c * v[k] for c, v in zip(coeffs, comp.basis))) for k in range(arr.n))
        bound *= 2
        if not any(a):
            continue
        x = support_flats(arr, a)
        if x is not None and x.flats == target:
            return a
    return None


class _Search:
    """Depth-first search over sub-collections of a list of multiple points.

    A partial choice fixes, for a prefix of the points, whether each one is
    in the collection.  Lines i, j already covered whose point is a double
    point or an excluded multiple point are adjacent in the final graph, so
    they end up in one block; these forced blocks only merge as the search
    deepens.  A chosen point must meet at least three final blocks, hence at
    least three forced blocks; otherwise the whole subtree is cut.

    With ``cover`` set, only collections whose lines are exactly ``cover``
    and whose blocks are all affine are kept.
    """

    def __init__(self, flats: Sequence[Flat], cover: frozenset | None = None):
        self.flats = tuple(flats)
        pair_flat = {}
        for k, f in enumerate(self.flats):
            for p in combinations(f, 2):
                pair_flat[p] = k
        self.pair_flat = pair_flat
        self.cover = cover
        self.nodes = 0
        if cover is not None:
            # lines of ``cover`` still reachable from flats k, k+1, ...
            tails = [frozenset()] * (len(self.flats) + 1)
            for k in range(len(self.flats) - 1, -1, -1):
                tails[k] = tails[k + 1] | set(self.flats[k])
            self.tails = tails

    def _blocks_ok(self, chosen: list[int], excluded: set[int]) -> bool:
        lines = sorted(set().union(*(self.flats[k] for k in chosen)))
        parent = {i: i for i in lines}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in combinations(lines, 2):
            k = self.pair_flat.get((i, j))
            if k is None or k in excluded:
                parent[find(i)] = find(j)
        return all(len({find(i) for i in self.flats[k]}) >= 3 for k in chosen)

    def _accept(self, chosen) -> bool:
        flats = [self.flats[c] for c in chosen]
        if self.cover is None:
            return is_component(None, flats)
        x = FlatCollection.covering(flats)
        if set(x.ground) != self.cover:
            return False
        cc = classify_collection(build_Q(x))
        return cc.affine and not cc.finite_blocks and len(cc.affine_blocks) >= 3

    def run(self, prefix: tuple[bool, ...] = ()):
        found = []
        chosen = [k for k, b in enumerate(prefix) if b]
        excluded = {k for k, b in enumerate(prefix) if not b}
        if chosen and not self._blocks_ok(chosen, excluded):
            return found
        self._dfs(len(prefix), chosen, excluded, found)
        return found

    def _dfs(self, k, chosen, excluded, found):
        self.nodes += 1
        if self.cover is not None:
            have = set().union(*(self.flats[c] for c in chosen)) if chosen else set()
            if not self.cover <= have | self.tails[k]:
                return
        if k == len(self.flats):
            if chosen and self._accept(chosen):
                found.append(tuple(chosen))
            return
        chosen.append(k)
        if self._blocks_ok(chosen, excluded):
            self._dfs(k + 1, chosen, excluded, found)
        chosen.pop()
        excluded.add(k)
        if not chosen or self._blocks_ok(chosen, excluded):
            self._dfs(k + 1, chosen, excluded, found)
        excluded.discard(k)


def enumerate_components(arr: Arrangement, max_flats: int = DEFAULT_MAX_FLATS,
                         seed: int = 0, threads: int = 1, verify: bool = True):
    """Components V(X)* for the collections X of multiple points satisfying
    the affine / three-block / no-finite-flat conditions, sorted by
    (size, flats).

    Only collections of whole multiple points are searched.  Arrangements
    containing a braid-like subarrangement whose points are proper subsets
    of multiple points (the Hessian, monomial(r) for r >= 2) have further
    components; :func:`enumerate_all_components` finds those as well.
    """
    m = len(arr.primes2)
    if m > max_flats:
        raise SearchBudgetExceeded(f"{m} multiple points exceed the exhaustive cap {max_flats}")
    if threads > 1 and m >= 4:
        depth = min(4, m)
        prefixes = list(product((True, False), repeat=depth))
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda p: _Search(arr.primes2).run(p), prefixes))
        hits = [h for part in parts for h in part]
    else:
        hits = _Search(arr.primes2).run()
    comps = sorted((_component(arr, FlatCollection.covering([arr.primes2[c] for c in h])) for h in set(hits)),
                   key=ResonanceComponent.sort_key)
    if verify:
        rng = random.Random(seed)
        for c in comps:
            if generic_weight(arr, c, rng) is None:  # pragma: no cover - would be a bug
                raise VerificationError(f"no generic weight found for component {c.flats.flats}")
    return comps


def _sub_component(arr: Arrangement, flats) -> ResonanceComponent:
    x = FlatCollection.covering(flats)
    bm = build_Q(x)
    cc = classify_collection(bm)
    basis = canonical_basis(_embed(nullspace_star(bm.q, len(x.ground)), x.ground, arr.n), arr.n)
    return ResonanceComponent(x, basis, cc.affine_blocks, bm.partition)


def _generic_point(basis, n, rng, bound=8):
    coeffs = [rng.randint(-bound, bound) or 1 for _ in basis]
    return tuple(Fraction(sum(c * v[k] for c, v in zip(coeffs, basis))) for k in range(n))


def enumerate_all_components(arr: Arrangement, max_lines: int = 16, seed: int = 0,
                             verify: bool = True):
    """Every irreducible component of R_1, including those living on a
    subarrangement.

    For each set B of lines, the points of the subarrangement on B are the
    traces of the points of ``arr``.  A collection of them covering B, with
    all blocks affine and at least three of them, gives the candidate
    V(X)* (zero outside B).  A candidate is kept when the cocycle space of
    a generic point of it, computed on the whole arrangement, is the
    candidate itself; distinct survivors are distinct components.

    Component flats are reported as traces on the support, so a flat may
    be a proper subset of a multiple point of ``arr``.
    """
    if arr.n > max_lines:
        raise SearchBudgetExceeded(f"{arr.n} lines exceed the subarrangement search cap {max_lines}")
    rng = random.Random(seed)
    seen = {}
    for size in range(3, arr.n + 1):
        for lines in combinations(arr.labels, size):
            pts = [f for f in restricted_flats(arr, lines) if len(f) >= 3]
            if not pts or set().union(*map(set, pts)) != set(lines):
                continue
            for hit in _Search(pts, cover=frozenset(lines)).run():
                comp = _sub_component(arr, [pts[k] for k in hit])
                if comp.basis in seen:
                    continue
                a = _generic_point(comp.basis, arr.n, rng)
                if cocycle_space_direct(arr, a) != comp.basis:
                    continue
                seen[comp.basis] = comp
    comps = sorted(seen.values(), key=lambda c: (len(c.support), c.sort_key()))
    if verify:
        for c in comps:
            a = _generic_point(c.basis, arr.n, rng)
            if cocycle_space_q(arr, a) != c.basis:  # pragma: no cover - would be a bug
                raise VerificationError(f"component on lines {c.support} failed the Q-route check")
    return comps
