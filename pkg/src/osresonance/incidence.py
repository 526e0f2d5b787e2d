"""Line arrangements in the projective plane and their rank-2 flats.

Lines are labelled ``1..n`` in user order.  A flat is a sorted tuple of
line labels; ``flats2`` holds every intersection point (double points
included) and ``primes2`` the points of multiplicity at least three.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BadIndex, BadParam, DuplicateLine, PairCollision, ZeroLine
from .linalg import as_fraction, primitive

Flat = tuple[int, ...]


@dataclass(frozen=True)
class Line:
    """The line ``a x + b y + c z = 0``, coefficients in canonical form."""

    coeffs: tuple[int, int, int]

    @classmethod
    def from_rationals(cls, triple) -> "Line":
        if len(triple) != 3:
            raise BadParam(f"line needs three coefficients, got {len(triple)}")
        fr = [as_fraction(x) for x in triple]
        if not any(fr):
            raise ZeroLine("all-zero coefficient triple")
        return cls(primitive(fr))

    def meet(self, other: "Line") -> tuple[int, int, int]:
        """Canonical homogeneous coordinates of the intersection point."""
        a1, b1, c1 = self.coeffs
        a2, b2, c2 = other.coeffs
        p = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
        if not any(p):
            raise DuplicateLine(f"proportional lines {self.coeffs} and {other.coeffs}")
        return primitive(p)


@dataclass(frozen=True)
class Arrangement:
    n: int
    flats2: tuple[Flat, ...]
    lines: tuple[Line, ...] | None = None
    name: str | None = None
    primes2: tuple[Flat, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "primes2", tuple(f for f in self.flats2 if len(f) >= 3))

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def doubles(self) -> tuple[Flat, ...]:
        return tuple(f for f in self.flats2 if len(f) == 2)

    @property
    def is_abstract(self) -> bool:
        return self.lines is None

    def flat_of_pair(self, i: int, j: int) -> Flat:
        """The unique rank-2 flat containing lines ``i`` and ``j``."""
        return self._pair_index()[(min(i, j), max(i, j))]

    def _pair_index(self):
        cache = self.__dict__.get("_pairs")
        if cache is None:
            cache = {}
            for f in self.flats2:
                for p in combinations(f, 2):
                    cache[p] = f
            object.__setattr__(self, "_pairs", cache)
        return cache

    def canonical(self) -> tuple[int, tuple[Flat, ...]]:
        return self.n, self.flats2


def _sorted_flats(flats) -> tuple[Flat, ...]:
    return tuple(sorted(tuple(sorted(f)) for f in flats))


def flats_from_rational_lines(lines, name=None) -> Arrangement:
    """Compute the intersection lattice of lines given by rational triples."""
    ls = [Line.from_rationals(t) for t in lines]
    if len(ls) < 2:
        raise BadParam("need at least two lines")
    points: dict[tuple[int, int, int], set[int]] = {}
    for i, j in combinations(range(len(ls)), 2):
        p = ls[i].meet(ls[j])
        points.setdefault(p, set()).update((i + 1, j + 1))
    return Arrangement(len(ls), _sorted_flats(points.values()), tuple(ls), name)


def arrangement_from_incidence(n: int, flats, name=None) -> Arrangement:
    """Build an abstract arrangement from its multiple points.

    Pairs of lines not covered by any given flat become double points.
    """
    if n < 1:
        raise BadParam("n must be positive")
    given = []
    for f in flats:
        s = tuple(sorted(set(f)))
        if len(s) != len(tuple(f)):
            raise BadIndex(f"repeated line in flat {tuple(f)}")
        if len(s) < 3:
            raise BadParam(f"flat {s} has fewer than three lines")
        if s[0] < 1 or s[-1] > n:
            raise BadIndex(f"flat {s} has a line index outside 1..{n}")
        given.append(s)
    covered: dict[tuple[int, int], Flat] = {}
    for f in given:
        for p in combinations(f, 2):
            if p in covered:
                raise PairCollision(f"flats {covered[p]} and {f} share lines {p}")
            covered[p] = f
    doubles = [p for p in combinations(range(1, n + 1), 2) if p not in covered]
    return Arrangement(n, _sorted_flats(given + doubles), None, name)


# --- named families -------------------------------------------------------

BRAID_COEFFS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1))


def braid() -> Arrangement:
    return flats_from_rational_lines(BRAID_COEFFS, name="braid")


def monomial(r: int) -> Arrangement:
    """Incidence of xyz(x^r - y^r)(x^r - z^r)(y^r - z^r).

    Lines: 1 = x, 2 = y, 3 = z, then x - w^a y, x - w^b z, y - w^c z for
    a, b, c = 0..r-1 with w a primitive r-th root of unity.  The three
    coordinate points carry r + 2 lines; x - w^a y, x - w^b z, y - w^c z
    are concurrent iff c = b - a mod r.
    """
    if not isinstance(r, int) or r < 1:
        raise BadParam("monomial family needs r >= 1")
    xy = [4 + a for a in range(r)]
    xz = [4 + r + b for b in range(r)]
    yz = [4 + 2 * r + c for c in range(r)]
    flats = [[1, 2, *xy], [1, 3, *xz], [2, 3, *yz]]
    for a in range(r):
        for b in range(r):
            flats.append([xy[a], xz[b], yz[(b - a) % r]])
    return arrangement_from_incidence(3 * r + 3, flats, name=f"monomial({r})")


def ag23_lines() -> list[list[tuple[int, int]]]:
    """Lines of the affine plane of order 3, grouped by parallel class."""
    classes = []
    for d in ((1, 0), (0, 1), (1, 1), (1, 2)):
        seen = set()
        cls = []
        for x in range(3):
            for y in range(3):
                pts = frozenset(((x + t * d[0]) % 3, (y + t * d[1]) % 3) for t in range(3))
                if pts not in seen:
                    seen.add(pts)
                    cls.append(sorted(pts))
        classes.append(sorted(cls))
    return classes


def _ag23_incidence():
    points = [(x, y) for x in range(3) for y in range(3)]
    lines = [ln for cls in ag23_lines() for ln in cls]
    return points, lines


def hessian() -> Arrangement:
    """12 lines = lines of AG(2,3) (three per parallel class, classes
    consecutive); 9 quadruple points = points of AG(2,3)."""
    points, lines = _ag23_incidence()
    flats = [[k + 1 for k, ln in enumerate(lines) if p in ln] for p in points]
    return arrangement_from_incidence(12, flats, name="hessian")


def dual_hessian() -> Arrangement:
    """9 lines = points of AG(2,3); 12 triple points = lines of AG(2,3)."""
    points, lines = _ag23_incidence()
    index = {p: k + 1 for k, p in enumerate(points)}
    flats = [[index[p] for p in ln] for ln in lines]
    return arrangement_from_incidence(9, flats, name="dual_hessian")


def pencil(k: int) -> Arrangement:
    """k concurrent lines through (0:0:1)."""
    if k < 2:
        raise BadParam("pencil needs k >= 2")
    coeffs = [(1, 0, 0)] + [(i, 1, 0) for i in range(k - 1)]
    return flats_from_rational_lines(coeffs, name=f"pencil({k})")


def generate(family: str, *params, **kwargs) -> Arrangement:
    """Named example arrangements.

    ``braid``, ``monomial r``, ``hessian``, ``dual_hessian``, ``pencil k``
    and ``latin n ell`` (optionally with ``squares=``).
    """
    family = family.lower().replace("-", "_")
    try:
        if family == "braid":
            _no_params(family, params)
            return braid()
        if family == "monomial":
            (r,) = params
            return monomial(int(r))
        if family == "hessian":
            _no_params(family, params)
            return hessian()
        if family == "dual_hessian":
            _no_params(family, params)
            return dual_hessian()
        if family == "pencil":
            (k,) = params
            return pencil(int(k))
        if family == "latin":
            from .realizer import latin_arrangement

            n, ell = params
            return latin_arrangement(int(n), int(ell), kwargs.get("squares"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParam):
            raise
        raise BadParam(f"bad parameters for {family}: {params!r}") from exc
    raise BadParam(f"unknown family {family!r}")


def _no_params(family, params):
    if params:
        raise BadParam(f"{family} takes no parameters")


def pair_count_ok(arr: Arrangement) -> bool:
    return sum(comb(len(f), 2) for f in arr.flats2) == comb(arr.n, 2)


def point_of_flat(arr: Arrangement, flat: Flat) -> tuple[Fraction, ...] | None:
    if arr.lines is None:
        return None
    i, j = flat[0], flat[1]
    return tuple(Fraction(x) for x in arr.lines[i - 1].meet(arr.lines[j - 1]))


def restricted_flats(arr: Arrangement, lines) -> tuple[Flat, ...]:
    """Rank-2 flats of the subarrangement on ``lines`` (original labels)."""
    keep = set(lines)
    out = set()
    for f in arr.flats2:
        g = tuple(i for i in f if i in keep)
        if len(g) >= 2:
            out.add(g)
    return tuple(sorted(out))


def subarrangement(arr: Arrangement, lines) -> tuple[Arrangement, tuple[int, ...]]:
    """The subarrangement on ``lines``, relabelled 1..k, and the label map
    (new label k+1 is old label ``mapping[k]``)."""
    mapping = tuple(sorted(set(lines)))
    if len(mapping) < 2:
        raise BadParam("a subarrangement needs at least two lines")
    new = {old: k + 1 for k, old in enumerate(mapping)}
    flats = _sorted_flats([new[i] for i in f] for f in restricted_flats(arr, mapping))
    sub_lines = None if arr.lines is None else tuple(arr.lines[i - 1] for i in mapping)
    return Arrangement(len(mapping), flats, sub_lines, None), mapping
