from fractions import Fraction
from itertools import product

import pytest

from osresonance import errors
from osresonance.labelings import (
    D4_AFFINE_LIST, bush_affine_test, bush_null_vector, complete, cycle, enumerate_affine_labelings,
    full_graph_affine_test, graph, labeling_from_nullvector, laplace_labeling, nullvector_from_labeling,
    path, star,
)
from osresonance.vinberg import Kind, classify_block

import oracles


def leaf_sorted(m):
    return (m[0],) + tuple(sorted(m[1:], reverse=True))


def test_star4_matches_the_twenty_vectors():
    reps = enumerate_affine_labelings(star(4), up_to_symmetry=True)
    assert len(reps) == 20
    assert {leaf_sorted(m) for m in reps} == {leaf_sorted(m) for m in D4_AFFINE_LIST}
    raw = enumerate_affine_labelings(star(4))
    assert {leaf_sorted(m) for m in raw} == {leaf_sorted(m) for m in D4_AFFINE_LIST}


def test_small_graphs():
    assert enumerate_affine_labelings(complete(2)) == [(1, 1)]
    assert enumerate_affine_labelings(star(2)) == [(1, 2, 2), (2, 1, 1)]
    assert enumerate_affine_labelings(graph(1, [])) == [(0,)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_graphs_are_egyptian_fractions(n):
    found = enumerate_affine_labelings(complete(n))
    ref = sorted(tuple(x - 1 for x in t) for t in oracles.egyptian_ordered(n))
    assert found == ref
    assert all(full_graph_affine_test(m) for m in found)


GRAPHS = {
    "path3": path(3), "path4": path(4), "path5": path(5), "path6": path(6),
    "cycle3": cycle(3), "cycle4": cycle(4), "cycle5": cycle(5), "cycle6": cycle(6),
    "star2": star(2), "star3": star(3), "K3": complete(3), "K4": complete(4),
    "paw": graph(4, [(1, 2), (2, 3), (3, 1), (3, 4)]),
}


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_labelings_are_affine_and_round_trip(name):
    g = GRAPHS[name]
    for m in enumerate_affine_labelings(g):
        assert classify_block(g.matrix(m)).kind is Kind.AFFINE
        u = nullvector_from_labeling(g, m)
        assert labeling_from_nullvector(g, u) == m
    assert laplace_labeling(g) in enumerate_affine_labelings(g)
    assert nullvector_from_labeling(g, laplace_labeling(g)) == (1,) * g.n


@pytest.mark.parametrize("name", ["path3", "path4", "cycle3", "cycle4", "star2", "star3", "K3", "paw"])
def test_local_completeness_by_brute_force(name):
    g = GRAPHS[name]
    found = enumerate_affine_labelings(g)
    bound = max(max(m) for m in found) + 2
    assert oracles.labelings_in_box(g.n, g.edges, bound) == found


def test_disconnected_graph_rejected():
    with pytest.raises(errors.Disconnected):
        enumerate_affine_labelings(graph(3, [(1, 2)]))
    with pytest.raises(errors.BadIndex):
        graph(2, [(1, 3)])


def test_nullvector_examples():
    assert labeling_from_nullvector(complete(3), (1, 1, 1)) == (2, 2, 2)
    assert labeling_from_nullvector(star(4), (1, 1, 1, 1, 1)) == (4, 1, 1, 1, 1)
    with pytest.raises(errors.NotInN):
        labeling_from_nullvector(complete(3), (2, 2, 2))
    with pytest.raises(errors.NotInN):
        labeling_from_nullvector(star(2), (1, 2, 3))
    with pytest.raises(errors.NotInN):
        labeling_from_nullvector(star(2), (1, 0, 1))
    with pytest.raises(errors.NotAffine):
        nullvector_from_labeling(star(2), (5, 5, 5))


def test_twenty_list_round_trip():
    g = star(4)
    for m in D4_AFFINE_LIST:
        u = nullvector_from_labeling(g, m)
        assert labeling_from_nullvector(g, u) == m
        assert bush_affine_test(m[0], m[1:])
        assert bush_null_vector(m[0], m[1:]) == u


def test_equation_checks():
    assert full_graph_affine_test((2, 2, 2))
    assert full_graph_affine_test((1, 1)) and not full_graph_affine_test((1, 2))
    for n in range(2, 7):
        assert full_graph_affine_test((n - 1,) * n)
    assert bush_affine_test(1, (2, 2))
    assert bush_affine_test(4, (1, 1, 1, 1))
    assert bush_affine_test(2, (3, 3, 3, 1))
    assert not bush_affine_test(2, (1, 1, 1))
    assert bush_null_vector(1, (2, 2)) == (2, 1, 1)
    assert bush_null_vector(3, (1, 1)) is None


def test_bijection_with_divisibility_vectors():
    """Primitive positive u with u_i dividing the neighbour sum, found by
    brute force, are exactly the null vectors of the enumerated labelings."""
    for g in (path(4), cycle(4), star(3), complete(3)):
        nulls = {nullvector_from_labeling(g, m) for m in enumerate_affine_labelings(g)}
        top = max(max(u) for u in nulls)
        adj = g.neighbours()
        box = set()
        for u in product(range(1, top + 1), repeat=g.n):
            from math import gcd
            c = 0
            for x in u:
                c = gcd(c, x)
            if c == 1 and all(sum(u[j - 1] for j in adj[i]) % u[i - 1] == 0 for i in range(1, g.n + 1)):
                box.add(u)
        assert box == nulls


def test_counts_frozen():
    assert len(enumerate_affine_labelings(path(4))) == 5
    assert len(enumerate_affine_labelings(cycle(5))) == 126
    assert len(enumerate_affine_labelings(complete(4))) == 215
    assert len(enumerate_affine_labelings(path(6))) == 42
    assert len(enumerate_affine_labelings(star(4))) == 263
