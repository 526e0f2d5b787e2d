"""Incidence matrix J of a flat collection, Q = J^t J - E, and its blocks.

Ground elements are arbitrary sortable labels (line numbers in practice);
matrices are indexed positionally in ground order.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Sequence

import networkx as nx

from .errors import InvalidCollection
from .linalg import nullspace

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FlatCollection:
    ground: tuple
    flats: tuple[tuple, ...]

    def __post_init__(self):
        ground = tuple(self.ground)
        flats = tuple(tuple(f) for f in self.flats)
        if not flats:
            raise InvalidCollection("a flat collection must be non-empty")
        if len(set(ground)) != len(ground):
            raise InvalidCollection("repeated ground element")
        gset = set(ground)
        for f in flats:
            if not f:
                raise InvalidCollection("empty flat")
            if len(set(f)) != len(f):
                raise InvalidCollection(f"repeated element in flat {f}")
            if not gset.issuperset(f):
                raise InvalidCollection(f"flat {f} is not inside the ground set")
        sets = [set(f) for f in flats]
        for a, b in combinations(range(len(sets)), 2):
            if len(sets[a] & sets[b]) > 1:
                raise InvalidCollection(f"flats {flats[a]} and {flats[b]} share more than one element")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "flats", flats)

    @classmethod
    def covering(cls, flats) -> "FlatCollection":
        """Collection on the union of its flats, ground sorted."""
        flats = tuple(tuple(sorted(f)) for f in flats)
        return cls(tuple(sorted(set().union(*map(set, flats)))), flats)

    @property
    def covers(self) -> bool:
        return set(self.ground) == set().union(*map(set, self.flats))

    def index(self) -> dict:
        return {g: k for k, g in enumerate(self.ground)}


@dataclass(frozen=True)
class BlockMatrix:
    """Symmetric matrix with its graph and indecomposable blocks.

    ``partition`` lists blocks as tuples of labels in ground order, ordered
    by first appearance; ``edges`` are label pairs with q_ij = -1.
    """

    q: Matrix
    labels: tuple
    edges: tuple[tuple, ...] = field(init=False)
    partition: tuple[tuple, ...] = field(init=False)

    def __post_init__(self):
        q = tuple(tuple(int(x) for x in row) for row in self.q)
        labels = tuple(self.labels)
        n = len(labels)
        if len(q) != n or any(len(row) != n for row in q):
            raise InvalidCollection("matrix shape does not match labels")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "labels", labels)
        g = nx.Graph()
        g.add_nodes_from(range(n))
        edges = []
        for i, j in combinations(range(n), 2):
            if q[i][j] != 0 or q[j][i] != 0:
                g.add_edge(i, j)
            if q[i][j] == -1:
                edges.append((labels[i], labels[j]))
        blocks = sorted(sorted(c) for c in nx.connected_components(g))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "partition", tuple(tuple(labels[i] for i in b) for b in blocks))

    @property
    def size(self) -> int:
        return len(self.labels)

    def positions(self, block: Sequence[Hashable]) -> list[int]:
        idx = {g: k for k, g in enumerate(self.labels)}
        return [idx[g] for g in block]

    def block(self, block: Sequence[Hashable]) -> Matrix:
        pos = self.positions(block)
        return tuple(tuple(self.q[i][j] for j in pos) for i in pos)

    def blocks(self):
        for b in self.partition:
            yield b, self.block(b)

    def negated(self) -> Matrix:
        return tuple(tuple(-x for x in row) for row in self.q)


def build_J(c: FlatCollection) -> Matrix:
    """0-1 incidence matrix: one row per flat, one column per ground element."""
    return tuple(tuple(1 if g in set(f) else 0 for g in c.ground) for f in c.flats)


def build_Q(c: FlatCollection) -> BlockMatrix:
    j = build_J(c)
    n = len(c.ground)
    q = [[-1] * n for _ in range(n)]
    for row in j:
        ones = [k for k, x in enumerate(row) if x]
        for a in ones:
            for b in ones:
                q[a][b] += 1
    return BlockMatrix(tuple(map(tuple, q)), c.ground)


def matrix_Q(q: Sequence[Sequence[int]], labels=None) -> BlockMatrix:
    """Wrap a raw symmetric matrix; labels default to 1..n."""
    if labels is None:
        labels = tuple(range(1, len(q) + 1))
    return BlockMatrix(tuple(map(tuple, q)), tuple(labels))


def nullspace_star(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Canonical basis of ``{u : m u = 0, sum(u) = 0}``."""
    if ncols is None:
        ncols = len(m[0])
    rows = [list(r) for r in m] + [[1] * ncols]
    return nullspace(rows, ncols)


def collection_from_J(j: Sequence[Sequence[int]], ground: Sequence) -> FlatCollection:
    """Rebuild the flats from rows of J carrying at least two ones."""
    flats = [tuple(g for g, x in zip(ground, row) if x) for row in j]
    return FlatCollection(tuple(ground), tuple(f for f in flats if len(f) >= 2))
