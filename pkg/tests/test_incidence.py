from math import comb

import pytest

from osresonance import errors
from osresonance.incidence import (
    arrangement_from_incidence, braid, dual_hessian, flats_from_rational_lines, generate, hessian,
    monomial, pair_count_ok, pencil, restricted_flats, subarrangement,
)

import oracles

BRAID = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]


def brute_flats(coeffs):
    """Pairwise intersections grouped by point, with plain cross products."""
    from fractions import Fraction
    pts = {}
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            (a1, b1, c1), (a2, b2, c2) = coeffs[i], coeffs[j]
            p = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
            lead = next(x for x in p if x)
            key = tuple(Fraction(x, lead) for x in p)
            pts.setdefault(key, set()).update((i + 1, j + 1))
    return sorted(tuple(sorted(s)) for s in pts.values())


def test_braid_from_coefficients():
    arr = flats_from_rational_lines(BRAID)
    assert arr.primes2 == ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6))
    assert len(arr.doubles) == 3
    assert list(arr.flats2) == brute_flats(BRAID)


def test_triangle_and_concurrent_pencil():
    tri = flats_from_rational_lines([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert tri.primes2 == () and len(tri.flats2) == 3
    pen = flats_from_rational_lines([(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0)])
    assert pen.flats2 == ((1, 2, 3, 4),)


def test_rational_input_and_errors():
    arr = flats_from_rational_lines([("1/2", 0, 0), (0, "2/3", 0), (1, 1, 1)])
    assert len(arr.flats2) == 3
    with pytest.raises(errors.ZeroLine):
        flats_from_rational_lines([(0, 0, 0), (1, 0, 0)])
    with pytest.raises(errors.DuplicateLine):
        flats_from_rational_lines([(1, 0, 0), (2, 0, 0), (0, 1, 0)])


def test_incidence_constructor():
    assert arrangement_from_incidence(6, braid().primes2).flats2 == braid().flats2
    single = arrangement_from_incidence(3, [[1, 2, 3]])
    assert single.flats2 == ((1, 2, 3),)
    with pytest.raises(errors.PairCollision):
        arrangement_from_incidence(4, [[1, 2, 3], [1, 2, 4]])
    with pytest.raises(errors.BadIndex):
        arrangement_from_incidence(3, [[1, 2, 4]])


@pytest.mark.parametrize("arr", [braid(), hessian(), dual_hessian(), monomial(1), monomial(2),
                                 monomial(3), pencil(5)])
def test_pair_count(arr):
    assert pair_count_ok(arr)
    assert sum(comb(len(f), 2) for f in arr.flats2) == comb(arr.n, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_monomial_counts(r):
    arr = monomial(r)
    assert arr.n == 3 * r + 3
    sizes = sorted(len(f) for f in arr.primes2)
    assert sizes.count(r + 2) == 3 + (r * r if r == 1 else 0)
    assert sizes.count(3) == r * r + (3 if r == 1 else 0)


def test_monomial_one_is_braid():
    assert oracles.incidence_isomorphic(6, monomial(1).primes2, 6, braid().primes2)


def test_hessian_counts():
    arr = hessian()
    assert arr.n == 12 and len(arr.primes2) == 9
    assert all(len(f) == 4 for f in arr.primes2)
    assert all(sum(i in f for f in arr.primes2) == 3 for i in arr.labels)


@pytest.mark.parametrize("make,lines", [(hessian, oracles.hessian_lines),
                                        (dual_hessian, oracles.dual_hessian_lines),
                                        (lambda: monomial(3), oracles.monomial3_lines)])
def test_incidences_match_geometry_over_cube_roots(make, lines):
    arr = make()
    geo = [f for f in oracles.geometric_flats(lines()) if len(f) >= 3]
    assert oracles.incidence_isomorphic(arr.n, arr.primes2, len(lines()), geo)


def test_generate_dispatch():
    assert generate("braid").flats2 == braid().flats2
    assert generate("monomial", "2").flats2 == monomial(2).flats2
    assert generate("dual-hessian").n == 9
    assert generate("latin", 3, 3).n == 9
    with pytest.raises(errors.BadParam):
        generate("braid", 1)
    with pytest.raises(errors.BadParam):
        generate("nothing")
    with pytest.raises(errors.BadParam):
        generate("monomial", "x")


def test_restriction_and_subarrangement():
    arr = hessian()
    lines = (1, 2, 4, 5, 7, 8)
    pts = restricted_flats(arr, lines)
    assert all(set(f) <= set(lines) for f in pts)
    sub, mapping = subarrangement(arr, lines)
    assert mapping == lines and sub.n == 6 and pair_count_ok(sub)
