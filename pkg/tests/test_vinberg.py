import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from osresonance import errors
from osresonance.incidence import braid
from osresonance.linalg import canonical_basis, matvec, quad_form
from osresonance.qforms import FlatCollection, build_Q, matrix_Q, nullspace_star
from osresonance.vinberg import Kind, classify_block, classify_collection, inertia, leading_minors

import oracles


def test_block_examples():
    c = classify_block([[0]])
    assert c.kind is Kind.AFFINE and c.null_vector == (1,)
    c = classify_block([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert c.kind is Kind.AFFINE and c.null_vector == (1, 1, 1)
    c = classify_block([[0, -1], [-1, 0]])
    assert c.kind is Kind.INDEFINITE and quad_form([[0, -1], [-1, 0]], c.negative_vector) < 0
    c = classify_block([[1, -1], [-1, 2]])
    assert c.kind is Kind.FINITE and c.minors == (1, 1)


def test_collection_examples():
    cc = classify_collection(build_Q(FlatCollection.covering(braid().primes2)))
    assert cc.affine and cc.affine_blocks == ((1, 6), (2, 5), (3, 4))
    cc = classify_collection(build_Q(FlatCollection((1, 2, 3, 4), ((1, 2, 3),))))
    assert not cc.affine and cc.indefinite_block == (1, 2, 3, 4)
    cc = classify_collection(build_Q(FlatCollection((1, 2, 3), ((1, 2, 3),))))
    assert cc.affine and len(cc.affine_blocks) == 3


def test_bad_input():
    with pytest.raises(errors.DomainError):
        classify_block([[1, 2], [2, 1]])
    with pytest.raises(errors.DomainError):
        classify_block([[1, -1], [0, 1]])


def connected_blocks():
    def build(args):
        n, diag, edges = args
        q = [[0] * n for _ in range(n)]
        for k in range(n):
            q[k][k] = diag[k]
        for k in range(1, n):  # spanning path keeps the block connected
            q[k - 1][k] = q[k][k - 1] = -1
        for (i, j), on in zip(combinations(range(n), 2), edges):
            if on:
                q[i][j] = q[j][i] = -1
        return q

    return st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.just(n), st.lists(st.integers(-1, 4), min_size=n, max_size=n),
        st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))).map(build)


@settings(max_examples=300, deadline=None)
@given(connected_blocks())
def test_block_kind_matches_minor_oracle(q):
    c = classify_block(q)
    assert c.kind.value == oracles.oracle_kind(q)
    assert c.check(q)
    pos, neg, zero = inertia(q)
    assert pos + neg + zero == len(q)
    assert (c.kind is Kind.FINITE) == all(m > 0 for m in leading_minors(q))


def test_trichotomy_on_random_collections():
    rng = random.Random(11)
    for _ in range(400):
        ground, flats = oracles.random_collection(rng)
        bm = build_Q(FlatCollection(tuple(ground), tuple(flats)))
        cc = classify_collection(bm)
        kinds = [c.kind for _, c in cc.classes]
        assert kinds.count(Kind.INDEFINITE) <= 1
        assert not (Kind.INDEFINITE in kinds and Kind.AFFINE in kinds)
        for blk, c in cc.classes:
            assert c.check(bm.block(blk))
        if cc.affine:
            check_affine_consequences(ground, flats, bm, cc)


def check_affine_consequences(ground, flats, bm, cc):
    n = len(ground)
    # V(Q)* is spanned by differences of the block-supported kernel vectors
    cert = []
    pos = {g: k for k, g in enumerate(ground)}
    for blk, c in cc.classes:
        if c.kind is Kind.AFFINE:
            v = [0] * n
            for g, x in zip(blk, c.null_vector):
                v[pos[g]] = x
            assert all(x == 0 for x in matvec(bm.q, v))
            cert.append(v)
    ns = nullspace_star(bm.q, n)
    assert len(ns) == max(len(cc.affine_blocks) - 1, 0)
    if cert:
        # each basis vector of V(Q)* lies in the span of the certificates
        assert canonical_basis(cert + list(ns), n) == canonical_basis(cert, n)
    # every flat meets all affine blocks or none
    for f in flats:
        hits = [bool(set(f) & set(b)) for b in cc.affine_blocks]
        assert all(hits) or not any(hits)


def test_raw_matrix_wrapper():
    cc = classify_collection(matrix_Q([[2, -1, 0], [-1, 2, 0], [0, 0, 0]]))
    assert cc.affine and cc.affine_blocks == ((3,),) and cc.finite_blocks == ((1, 2),)
