"""Intersection form on the blown-up plane and Euler-characteristic budgets
for pencils whose special fibres are unions of lines.

Everything is exact: quadratic roots are kept as algebraic numbers
(-b + sqrt(D)) / 2a and only ever compared by sign computations.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt

from .errors import BadParam, FlatNotInArrangement, VerificationError
from .incidence import Arrangement
from .qforms import FlatCollection, build_Q
from .resonance import ResonanceComponent


# --- intersection form --------------------------------------------------------

@dataclass(frozen=True)
class BlowupForm:
    matrix: tuple[tuple[int, ...], ...]
    minus_q: tuple[tuple[int, ...], ...]

    @property
    def equal(self) -> bool:
        return self.matrix == self.minus_q


def blowup_intersection_matrix(arr: Arrangement, flats) -> BlowupForm:
    """Intersection numbers of the proper transforms of all lines after
    blowing up the points in ``flats``: self-intersection 1 minus the
    number of blown-up points on the line, 0 for two lines through a
    blown-up point, 1 otherwise.  Checked against -Q on all lines."""
    flats = [tuple(sorted(f)) for f in getattr(flats, "flats", flats)]
    known = set(arr.primes2)
    for f in flats:
        if f not in known:
            raise FlatNotInArrangement(f"{f} is not a multiple point of the arrangement")
    n = arr.n
    on_line = [0] * (n + 1)
    for f in flats:
        for i in f:
            on_line[i] += 1
    chosen = set(flats)
    m = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        m[i - 1][i - 1] = 1 - on_line[i]
        for j in range(i + 1, n + 1):
            meet = arr.flat_of_pair(i, j)
            m[i - 1][j - 1] = m[j - 1][i - 1] = 0 if meet in chosen else 1
    matrix = tuple(map(tuple, m))
    if flats:
        q = build_Q(FlatCollection(arr.labels, tuple(flats))).q
    else:
        q = tuple(tuple(-1 for _ in range(n)) for _ in range(n))
    minus_q = tuple(tuple(-x for x in row) for row in q)
    form = BlowupForm(matrix, minus_q)
    if not form.equal:  # pragma: no cover - identity of the construction
        raise VerificationError("intersection form differs from -Q")
    return form


# --- Euler characteristic of fibrations ---------------------------------------

def fiber_euler(n: int, printed: bool = False) -> Fraction:
    """Euler number of n lines in general position: 2n - n(n-1)/2.

    ``printed=True`` gives 2n - n(n+1)/2 instead.
    """
    return Fraction(2 * n) - Fraction(n * (n + 1 if printed else n - 1), 2)


def e1_groups(n: int) -> int:
    return 3 + n * n


def e2_groups(n: int, k: int, printed: bool = False) -> Fraction:
    return (2 - k) * (3 * n - n * n) + k * fiber_euler(n, printed)


def euler_feasible_k(n: int, printed: bool = False) -> int | None:
    """Largest k >= 0 with E2(n, k) <= E1(n).

    With the default fibre term this is floor(6(n-1)/n).  With the printed
    term E2 - E1 is non-increasing in k for n <= 3 and ``None`` (no bound)
    is returned.
    """
    if not isinstance(n, int) or n < 2:
        raise BadParam("n must be an integer >= 2")
    # E2 - E1 = slope * k - 3 (n - 1)^2
    slope = Fraction(3 * n - n * n) * -1 + fiber_euler(n, printed)
    base = -3 * (n - 1) ** 2
    if slope <= 0:
        return None
    return floor(Fraction(-base) / slope)


def equality_case(n: int, printed: bool = False) -> bool:
    """E1 == E2 at k = n + 1."""
    if not isinstance(n, int) or n < 2:
        raise BadParam("n must be an integer >= 2")
    return e2_groups(n, n + 1, printed) == e1_groups(n)


# --- exact quadratic roots ----------------------------------------------------

def _sign_surd(a: Fraction, b: Fraction, d: Fraction) -> int:
    """Sign of a + b * sqrt(d) for d >= 0."""
    if b == 0 or d == 0:
        return (a > 0) - (a < 0)
    sb = 1 if b > 0 else -1
    if a == 0:
        return sb
    sa = 1 if a > 0 else -1
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 d
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@dataclass(frozen=True)
class QuadraticRoot:
    """The larger real root of a d^2 + b d + c with a > 0 and a real root."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.a <= 0 or self.disc < 0:
            raise BadParam("QuadraticRoot needs a > 0 and a nonnegative discriminant")

    @property
    def disc(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c

    def exact(self) -> Fraction | None:
        """The root if it is rational."""
        d = self.disc
        rn, rd = isqrt(d.numerator), isqrt(d.denominator)
        if rn * rn == d.numerator and rd * rd == d.denominator:
            return (-self.b + Fraction(rn, rd)) / (2 * self.a)
        return None

    def sign_minus(self, x: Fraction) -> int:
        """Sign of (root - x)."""
        # root - x = (-b - 2 a x + sqrt(D)) / 2a, and 2a > 0
        return _sign_surd(-self.b - 2 * self.a * Fraction(x), Fraction(1), self.disc)

    def compare(self, other: "QuadraticRoot") -> int:
        """Sign of (self - other), exactly."""
        # with p the polynomial of ``other``: x > other iff x > vertex and p(x) > 0
        vertex = -other.b / (2 * other.a)
        at = self.sign_minus(vertex)
        if at < 0:
            return -1
        if at == 0:
            return 0 if other.disc == 0 else -1
        # p(self) = A + B sqrt(D) with self = u + v sqrt(D)
        u, v, d = -self.b / (2 * self.a), 1 / (2 * self.a), self.disc
        a2, b2, c2 = other.a, other.b, other.c
        big_a = a2 * (u * u + v * v * d) + b2 * u + c2
        big_b = a2 * 2 * u * v + b2 * v
        return _sign_surd(big_a, big_b, d)

    def interval(self, width: Fraction = Fraction(1, 10 ** 7)) -> tuple[Fraction, Fraction]:
        """Rational (lo, hi) with lo <= root <= hi and hi - lo < width."""
        ex = self.exact()
        if ex is not None:
            return ex, ex
        lo = -self.b / (2 * self.a)
        hi = lo + 1
        while self.sign_minus(hi) > 0:
            hi = lo + 2 * (hi - lo)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            if self.sign_minus(mid) > 0:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def floor(self) -> int:
        lo, hi = self.interval(Fraction(1, 2))
        k = floor(lo)
        while self.sign_minus(k + 1) >= 0:
            k += 1
        while self.sign_minus(k) < 0:
            k -= 1
        return k

    def ceil(self) -> int:
        f = self.floor()
        return f if self.sign_minus(f) == 0 else f + 1

    def __float__(self) -> float:
        lo, hi = self.interval(Fraction(1, 10 ** 15))
        return float((lo + hi) / 2)


@dataclass(frozen=True)
class FBound:
    """E2 - E1 = a d^2 + b d + c as a function of d, and its consequences.

    ``max_d`` is the largest feasible d, or ``None`` when every large d is
    feasible; ``excluded`` lists infeasible d >= 1 in the unbounded case.
    """

    r: int
    k: int
    a: Fraction
    b: Fraction
    c: Fraction
    root: QuadraticRoot | None
    root_exact: Fraction | None
    max_d: int | None
    excluded: tuple[int, ...] = field(default=())
    line_bound: int | None = None

    def value(self, d) -> Fraction:
        return self.a * d * d + self.b * d + self.c

    def feasible(self, d: int) -> bool:
        return d >= 1 and self.value(d) <= 0

    def feasible_d(self, limit: int | None = None) -> list[int]:
        top = self.max_d if self.max_d is not None else limit
        if top is None:
            raise BadParam("feasible set is unbounded; pass a limit")
        return [d for d in range(1, top + 1) if self.feasible(d)]

    def root_interval(self, width=Fraction(1, 10 ** 7)):
        if self.root is not None:
            return self.root.interval(width)
        if self.root_exact is not None:
            return self.root_exact, self.root_exact
        return None


def e2_minus_e1(r: int, k: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of E2 - E1 in d, with E1 = 3 + d k r and
    E2 = (2 - r)(3d - d^2) + r(2d - d(d-1)/2)."""
    a = Fraction(r, 2) - 2
    b = 6 - Fraction(r, 2) - k * r
    return a, b, Fraction(-3)


def f_bound(r: int, k: int) -> FBound:
    if not (isinstance(r, int) and isinstance(k, int)) or r < 1 or k < 1:
        raise BadParam("r and k must be integers >= 1")
    a, b, c = e2_minus_e1(r, k)
    if a > 0:
        root = QuadraticRoot(a, b, c)  # c < 0, so exactly one positive root
        m = root.floor()
        return FBound(r, k, a, b, c, root, root.exact(), m, (), (r + 1) * root.ceil())
    if a == 0:
        if b > 0:
            x = -c / b
            m = floor(x)
            return FBound(r, k, a, b, c, None, x, m, (), (r + 1) * -(-x.numerator // x.denominator))
        if b == 0:
            return FBound(r, k, a, b, c, None, None, None)
        return FBound(r, k, a, b, c, None, None, None)
    # a < 0: E2 - E1 > 0 only strictly between the two real roots, if any
    d = b * b - 4 * a * c
    excluded = ()
    if d > 0:
        neg = QuadraticRoot(-a, -b, -c)  # larger root of the same roots
        top = neg.floor()
        excluded = tuple(x for x in range(1, top + 1) if a * x * x + b * x + c > 0)
    return FBound(r, k, a, b, c, None, None, None, excluded)


def root_limit(k: int) -> int:
    """Limit of the positive root as r grows: 2k + 1."""
    return 2 * k + 1


# --- block / fibre report -------------------------------------------------------

@dataclass(frozen=True)
class FiberReport:
    blocks: tuple[tuple[int, ...], ...]
    affine_blocks: tuple[tuple[int, ...], ...]
    block_sizes: tuple[int, ...]
    points_per_line: int
    euler_k: int | None
    euler_ok: bool | None
    euler_tight: bool | None
    f: FBound
    d: int
    f_ok: bool

    @property
    def consistent(self) -> bool:
        return self.f_ok and self.euler_ok is not False


def block_fiber_consistency(arr: Arrangement, comp: ResonanceComponent) -> FiberReport:
    """Blocks of Q(X) read as special fibres, checked against the Euler
    budgets.  Purely combinatorial: no pencil is constructed."""
    sizes = tuple(len(b) for b in comp.blocks)
    counts = {}
    for f in comp.flats.flats:
        for i in f:
            counts[i] = counts.get(i, 0) + 1
    k = max(counts.values())
    euler_k = euler_ok = tight = None
    if len(set(sizes)) == 1 and sizes[0] >= 2:
        euler_k = euler_feasible_k(sizes[0])
        euler_ok = len(sizes) <= euler_k
        tight = len(sizes) == euler_k
    r = max(len(comp.affine_blocks) - 1, 1)
    fb = f_bound(r, k)
    d = max(len(b) for b in comp.affine_blocks)
    return FiberReport(comp.blocks, comp.affine_blocks, sizes, k, euler_k, euler_ok, tight,
                       fb, d, fb.feasible(d))
