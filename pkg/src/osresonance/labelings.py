"""Affine labelings of a graph.

A labeling m of a graph on vertices 1..n gives the symmetric matrix
Q(m, G) with diagonal m and -1 on the edges.  M(G) is the set of positive
labelings for which Q(m, G) is affine; it is finite for every connected G
and in bijection with the positive primitive vectors u satisfying
u_i | sum of u_j over the neighbours j of i.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .linalg import det
from .errors import BadIndex, Disconnected, NotAffine, NotInN
from .vinberg import Kind, classify_block


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on 1..n; ``labels`` is optional."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise BadIndex("a graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise BadIndex(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise BadIndex(f"edge {e} outside 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise BadIndex(f"{len(self.labels)} labels for {self.n} vertices")
            object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g

    def neighbours(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n + 1)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def matrix(self, m: Sequence[int] | None = None) -> list[list[int]]:
        m = self.labels if m is None else m
        q = [[0] * self.n for _ in range(self.n)]
        for k in range(self.n):
            q[k][k] = int(m[k])
        for i, j in self.edges:
            q[i - 1][j - 1] = q[j - 1][i - 1] = -1
        return q

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbours()[1:])


def graph(n: int, edges: Iterable[tuple[int, int]]) -> LabeledGraph:
    return LabeledGraph(n, tuple(tuple(e) for e in edges))


def star(leaves: int) -> LabeledGraph:
    """Root 1, leaves 2..leaves+1."""
    return graph(leaves + 1, [(1, k) for k in range(2, leaves + 2)])


def path(n: int) -> LabeledGraph:
    return graph(n, [(k, k + 1) for k in range(1, n)])


def cycle(n: int) -> LabeledGraph:
    return graph(n, [(k, k % n + 1) for k in range(1, n + 1)])


def complete(n: int) -> LabeledGraph:
    return graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def _require_connected(g: LabeledGraph):
    if not nx.is_connected(g.nx_graph()):
        raise Disconnected("graph is not connected")


def _is_pd(q) -> bool:
    """Positive definiteness via fraction-free elimination: the pivots
    are the leading principal minors."""
    a = [list(row) for row in q]
    n = len(a)
    prev = 1
    for p in range(n):
        if a[p][p] <= 0:
            return False
        for r in range(p + 1, n):
            for s in range(p + 1, n):
                a[r][s] = (a[p][p] * a[r][s] - a[r][p] * a[p][s]) // prev
        prev = a[p][p]
    return True


class _Enumerator:
    """DFS assigning (label, vertex) pairs in increasing lexicographic order.

    With assigned labels fixed and every unassigned vertex at least x, the
    matrix only gets more positive as labels grow.  So once all unassigned
    vertices set to x give a positive definite matrix, no completion with
    labels >= x is affine: that x bounds the next label.  The bound is
    finite because the assigned part, a proper principal submatrix of an
    affine matrix, must itself be positive definite.  The last label enters
    the determinant linearly and is solved for exactly.
    """

    def __init__(self, g: LabeledGraph):
        self.g = g
        self.n = g.n
        self.base = g.matrix([0] * g.n)
        self.found = []

    def _matrix(self, labels: dict, rest: int):
        q = [row[:] for row in self.base]
        for k in range(self.n):
            q[k][k] = labels.get(k, rest)
        return q

    def _sub_pd(self, labels: dict) -> bool:
        idx = sorted(labels)
        return _is_pd([[labels[i] if i == j else self.base[i][j] for j in idx] for i in idx])

    def _threshold(self, labels: dict, low: int) -> int:
        """Smallest integer x >= low with the matrix PD when every
        unassigned label is x."""
        if _is_pd(self._matrix(labels, low)):
            return low
        hi = max(low, 1) * 2
        while not _is_pd(self._matrix(labels, hi)):
            hi *= 2
        lo = low  # not PD at lo, PD at hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _is_pd(self._matrix(labels, mid)):
                hi = mid
            else:
                lo = mid
        return hi

    def run(self):
        if self.n == 1:
            # the only affine 1x1 matrix is (0)
            self.found.append((0,))
            return self.found
        self._dfs({}, 1, -1)
        return sorted(set(self.found))

    def _dfs(self, labels: dict, low: int, last_vertex: int):
        free = [v for v in range(self.n) if v not in labels]
        if len(free) == 1:
            self._finish(labels, free[0], low, last_vertex)
            return
        top = self._threshold(labels, low)
        for lab in range(low, top):
            for v in free:
                if lab == low and v <= last_vertex:
                    continue
                labels[v] = lab
                if self._sub_pd(labels):
                    self._dfs(labels, lab, v)
                del labels[v]

    def _finish(self, labels: dict, v: int, low: int, last_vertex: int):
        d0 = det(self._matrix({**labels, v: 0}, 0))
        d1 = det(self._matrix({**labels, v: 1}, 0))
        slope = d1 - d0
        if slope == 0:
            return
        if d0 % slope:
            return
        lab = -d0 // slope
        if lab < low or (lab == low and v < last_vertex):
            return
        m = tuple(labels.get(k, lab) for k in range(self.n))
        if classify_block(self.g.matrix(m)).kind is Kind.AFFINE:
            self.found.append(m)


def enumerate_affine_labelings(g: LabeledGraph, up_to_symmetry: bool = False) -> list[tuple[int, ...]]:
    """All labelings m with Q(m, g) affine, sorted.

    With ``up_to_symmetry`` each orbit under graph automorphisms is
    represented by its lexicographically largest member.
    """
    _require_connected(g)
    found = _Enumerator(g).run()
    if up_to_symmetry:
        return orbit_representatives(g, found)
    return found


def automorphisms(g: LabeledGraph) -> list[dict[int, int]]:
    gm = GraphMatcher(g.nx_graph(), g.nx_graph())
    return list(gm.isomorphisms_iter())


def orbit_representatives(g: LabeledGraph, labelings) -> list[tuple[int, ...]]:
    auts = automorphisms(g)
    reps = set()
    for m in labelings:
        images = [tuple(m[p[v] - 1] for v in range(1, g.n + 1)) for p in auts]
        reps.add(max(images))
    return sorted(reps)


def nullvector_neighbour_sums(g: LabeledGraph, u: Sequence[int]) -> list[int]:
    adj = g.neighbours()
    return [sum(u[j - 1] for j in adj[i]) for i in range(1, g.n + 1)]


def labeling_from_nullvector(g: LabeledGraph, u: Sequence[int]) -> tuple[int, ...]:
    """m_i = (sum of u over neighbours of i) / u_i."""
    _require_connected(g)
    u = [int(x) for x in u]
    if len(u) != g.n:
        raise NotInN(f"vector has {len(u)} entries for {g.n} vertices")
    if any(x <= 0 for x in u):
        raise NotInN("null vector entries must be positive")
    c = 0
    for x in u:
        c = gcd(c, x)
    if c != 1:
        raise NotInN(f"null vector is not primitive (gcd {c})")
    sums = nullvector_neighbour_sums(g, u)
    for i, (s, x) in enumerate(zip(sums, u), start=1):
        if s % x:
            raise NotInN(f"u_{i} = {x} does not divide the neighbour sum {s}")
    return tuple(s // x for s, x in zip(sums, u))


def nullvector_from_labeling(g: LabeledGraph, m: Sequence[int]) -> tuple[int, ...]:
    """The primitive positive kernel vector of an affine Q(m, g)."""
    _require_connected(g)
    if len(m) != g.n:
        raise NotAffine(f"{len(m)} labels for {g.n} vertices")
    cls = classify_block(g.matrix(m))
    if cls.kind is not Kind.AFFINE:
        raise NotAffine(f"Q(m) is {cls.kind.value}")
    return cls.null_vector


def laplace_labeling(g: LabeledGraph) -> tuple[int, ...]:
    return g.degrees()


def full_graph_affine_test(m: Sequence[int]) -> bool:
    """Q(m, K_n) is affine iff sum 1/(m_i + 1) = 1."""
    return sum(Fraction(1, int(x) + 1) for x in m) == 1


def bush_affine_test(m0: int, leaves: Sequence[int]) -> bool:
    """Q(m) on a star with root label m0 is affine iff m0 = sum 1/m_i."""
    return all(x > 0 for x in leaves) and Fraction(m0) == sum(Fraction(1, int(x)) for x in leaves)


def bush_null_vector(m0: int, leaves: Sequence[int]) -> tuple[int, ...] | None:
    """Kernel (1, 1/m_1, ..., 1/m_n) scaled to a primitive integer vector."""
    if not bush_affine_test(m0, leaves):
        return None
    fr = [Fraction(1)] + [Fraction(1, int(x)) for x in leaves]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    v = [int(x * den) for x in fr]
    c = 0
    for x in v:
        c = gcd(c, x)
    return tuple(x // c for x in v)


D4_AFFINE_LIST = (
    (4, 1, 1, 1, 1), (3, 2, 2, 1, 1), (2, 2, 2, 2, 2), (2, 3, 3, 3, 1),
    (2, 6, 3, 2, 1), (2, 4, 4, 2, 1), (1, 4, 4, 4, 4), (1, 3, 4, 4, 6), (1, 12, 4, 3, 3), (1, 6, 6, 3, 3),
    (1, 12, 12, 3, 2), (1, 15, 10, 3, 2), (1, 18, 9, 3, 2), (1, 24, 8, 3, 2), (1, 42, 7, 3, 2),
    (1, 8, 8, 4, 2), (1, 12, 6, 4, 2), (1, 20, 5, 4, 2), (1, 10, 5, 5, 2), (1, 6, 6, 6, 2),
)
"""Affine labelings of the 4-leaf star (root first), up to leaf order."""
