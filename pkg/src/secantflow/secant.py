"""Secant planes of the jet embedding into the extension space.

For a pair of line bundles with degrees d1 > d2 the curve embeds into the
projectivized extension space, which is dual to the space of sections of
the twist (L1 - L2 + K).  A degree-N effective divisor D spans a plane
there; concretely the plane is the column span of the n x N matrix whose
block at a point p of multiplicity k holds the jets of the section basis
at p through order k-1.  Residue functionals against z^-1..z^-k span the
same block, so ranks, intersections and memberships computed from jets are
the ones the geometry dictates.

The degree bound deg D < d1 - d2 keeps every such matrix of full rank N;
within the bound two planes intersect exactly in the plane of the pointwise
gcd of their witnesses.  Both facts are verified per instance, never
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import linalg
from .curve import (
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    INF,
    SectionSpace,
    jet,
    riemann_roch_space,
)
from .polynomials import Poly
from .errors import (
    BasisPoleCollisionError,
    BoundViolationError,
    DegenerateRankError,
    DimensionMismatchError,
    InadmissibleSupportError,
    PoleAtPointError,
)


@dataclass(frozen=True)
class BundlePair:
    """Degrees and divisor representatives of (L1, L2) and the twist M."""

    d1: int
    d2: int
    m: int
    L1_rep: Divisor
    L2_rep: Divisor
    M_rep: Divisor

    def __post_init__(self):
        if self.d1 <= self.d2:
            raise BoundViolationError(
                f"need d1 > d2, got d1 = {self.d1}, d2 = {self.d2}")
        if self.d1 > self.d2 + self.m:
            raise BoundViolationError(
                f"need d1 <= d2 + m, got d1 = {self.d1}, d2 + m = {self.d2 + self.m}")
        for name, deg, rep in (("L1", self.d1, self.L1_rep),
                               ("L2", self.d2, self.L2_rep),
                               ("M", self.m, self.M_rep)):
            if rep.degree != deg:
                raise DimensionMismatchError(
                    f"{name} representative has degree {rep.degree}, expected {deg}")

    @classmethod
    def at_infinity(cls, d1: int, d2: int, m: int) -> BundlePair:
        """Representatives supported at infinity: every affine rational
        point is then admissible as a witness."""
        return cls(d1, d2, m,
                   Divisor({INF: d1}), Divisor({INF: d2}), Divisor({INF: m}))

    @property
    def delta(self) -> int:
        """d1 - d2, the degree bound for secant planes."""
        return self.d1 - self.d2


@dataclass(frozen=True)
class DualClass:
    """A nonzero vector of coordinates in the basis dual to the section
    basis of the twist space; projectively, an extension class."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise DimensionMismatchError("dual class must be nonzero")

    @property
    def n(self) -> int:
        return len(self.coords)

    def normalized(self) -> DualClass:
        """Scale so the first nonzero coordinate is 1."""
        lead = next(c for c in self.coords if c)
        return DualClass(tuple(c / lead for c in self.coords))

    def projectively_equal(self, other: DualClass) -> bool:
        return self.normalized() == other.normalized()


@dataclass(frozen=True)
class SecantPlane:
    """Column span of a witness divisor's jet matrix, with its ambient."""

    curve: HyperellipticCurve
    pair: BundlePair
    witness: Divisor
    span: tuple[tuple[Fraction, ...], ...]  # rows

    @property
    def n_rows(self) -> int:
        return len(self.span)

    @property
    def rank(self) -> int:
        return self.witness.degree

    def matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.span]


@lru_cache(maxsize=None)
def twist_section_space(curve: HyperellipticCurve, pair: BundlePair) -> SectionSpace:
    """Basis of sections of (L1 - L2 + K), the space the jet columns are
    functionals on; dimension g - 1 + (d1 - d2) by duality."""
    D = pair.L1_rep - pair.L2_rep + curve.canonical_divisor()
    space = riemann_roch_space(curve, D)
    expected = curve.genus - 1 + pair.delta
    if space.dim != expected:
        raise DegenerateRankError(
            f"twist space has dimension {space.dim}, expected {expected}")
    return space


@lru_cache(maxsize=None)
def _jet_block(curve: HyperellipticCurve, pair: BundlePair, point, order: int):
    """Columns (orders 0..order-1) of the jet block at one point.

    Jets are taken in a local frame of the twist bundle: when the
    representative divisor L1 - L2 + K carries the point with
    coefficient c, the frame is (x - x0)^(-c) and the jet of a section
    h is the Taylor window of h * (x - x0)^c.  For representatives
    supported away from the point (c = 0) this is the plain function
    jet.
    """
    space = twist_section_space(curve, pair)
    twist = pair.L1_rep - pair.L2_rep + curve.canonical_divisor()
    c = twist.coeff(point)
    try:
        if c >= 0:
            shift = CurveFunction(
                curve, Poly.linear_root(point.x) ** c, Poly.zero())
            jets = [jet(curve, h * shift, point, order - 1).values
                    for h in space.basis]
        else:
            jets = [jet(curve, h, point, order - 1 - c).values[-c:]
                    for h in space.basis]
    except PoleAtPointError as exc:
        raise BasisPoleCollisionError(
            f"a section basis element has a pole at ({point.x}, {point.y}); "
            "choose representatives supported away from the witness") from exc
    return tuple(tuple(jets[i][k] for i in range(space.dim))
                 for k in range(order))


def _validate_witness(curve: HyperellipticCurve, D: Divisor) -> None:
    if D.is_zero() or not D.is_effective() or D.degree < 1:
        raise InadmissibleSupportError(
            f"witness must be effective of degree >= 1, got {D!r}")
    for p, _ in D.items():
        if p.at_infinity:
            raise InadmissibleSupportError("witness support must be affine")
        if p.y == 0:
            raise InadmissibleSupportError(
                f"witness point x = {p.x} is a Weierstrass point")
        if not curve.is_on_curve(p.x, p.y):
            raise InadmissibleSupportError(f"{p!r} is not on the curve")


def embedding_matrix(curve: HyperellipticCurve, pair: BundlePair,
                     D: Divisor) -> list[list[Fraction]]:
    """The n x N jet matrix of D: column block at p holds jets of the
    section basis through order mult(p) - 1.

    Parameters
    ----------
    curve : HyperellipticCurve
    pair : BundlePair
    D : Divisor
        Effective, affine non-Weierstrass support, degree N >= 1.

    Returns
    -------
    list of rows, n x N.
    """
    _validate_witness(curve, D)
    cols: list[tuple[Fraction, ...]] = []
    for p, mult in D.items():
        cols.extend(_jet_block(curve, pair, p, mult))
    return linalg.from_columns(cols)


def point_class(curve: HyperellipticCurve, pair: BundlePair, p) -> DualClass:
    """Image of a curve point in the dual space (the N = 1 column)."""
    (col,) = _jet_block(curve, pair, p, 1)
    return DualClass(col)


def secant_plane(curve: HyperellipticCurve, pair: BundlePair,
                 D: Divisor) -> SecantPlane:
    """The plane spanned by D, for deg D < d1 - d2.

    Raises BoundViolationError outside the degree bound and
    DegenerateRankError if the matrix fails to have rank deg D inside it
    (which the degree bound rules out; it is checked anyway).
    """
    _validate_witness(curve, D)
    if D.degree >= pair.delta:
        raise BoundViolationError(
            f"deg D = {D.degree} must stay below d1 - d2 = {pair.delta}")
    mat = embedding_matrix(curve, pair, D)
    r = linalg.rank(mat)
    if r != D.degree:
        raise DegenerateRankError(
            f"jet matrix of {D!r} has rank {r}, expected {D.degree}")
    return SecantPlane(curve, pair, D, tuple(tuple(row) for row in mat))


def plane_membership(e: DualClass, plane: SecantPlane) -> bool:
    """Exact test: does the class lie on the plane?"""
    if e.n != plane.n_rows:
        raise DimensionMismatchError(
            f"class has {e.n} coordinates, ambient has {plane.n_rows}")
    return linalg.in_column_span(plane.matrix(), list(e.coords))


def plane_intersection(p1: SecantPlane, p2: SecantPlane) -> SecantPlane | None:
    """Intersection of two secant planes within the degree bound.

    The result is the plane of gcd(D1, D2) (pointwise minimum), or None
    when the witnesses share no point.  The identity is verified: the
    exact intersection of the two column spans is computed and compared
    with the gcd plane's span; DegenerateRankError on any mismatch.
    """
    if p1.curve != p2.curve or p1.pair != p2.pair:
        raise DimensionMismatchError("planes live in different ambients")
    curve, pair = p1.curve, p1.pair
    for p in (p1, p2):
        if p.witness.degree >= pair.delta:
            raise BoundViolationError("witness degree outside the plane bound")
    inter = linalg.column_span_intersection(p1.matrix(), p2.matrix())
    E = p1.witness.gcd(p2.witness)
    if E.is_zero():
        if inter:
            raise DegenerateRankError(
                "planes of disjoint witnesses intersect nontrivially")
        return None
    plane_e = secant_plane(curve, pair, E)
    if len(inter) != E.degree or not linalg.column_span_equal(
            linalg.from_columns(inter), plane_e.matrix()):
        raise DegenerateRankError(
            f"span intersection does not match the plane of {E!r}")
    return plane_e


@dataclass(frozen=True)
class StratumResult:
    """Least pool-witness degree of a class, with all minimal witnesses."""

    N: int
    witnesses: tuple[Divisor, ...]
    unique: bool


def pool_divisors(pool, N: int):
    """All effective degree-N divisors supported in the pool, in
    lexicographic pool order (deterministic)."""
    for combo in combinations_with_replacement(range(len(pool)), N):
        yield Divisor([(pool[i], 1) for i in combo])


def stratum_membership(curve: HyperellipticCurve, pair: BundlePair,
                       e: DualClass, pool, maxN: int) -> StratumResult | None:
    """Least N <= maxN with e on the plane of a degree-N pool divisor.

    Exhaustive lexicographic enumeration; returns every witness at the
    minimal degree and whether it is unique.  None when nothing up to
    maxN contains the class.  maxN must stay below d1 - d2 so membership
    is governed by the rank law.
    """
    if maxN >= pair.delta:
        raise BoundViolationError(
            f"maxN = {maxN} must stay below d1 - d2 = {pair.delta}")
    if maxN < 1:
        raise BoundViolationError("maxN must be >= 1")
    if len(set(pool)) != len(pool):
        raise InadmissibleSupportError("pool points must be distinct")
    for N in range(1, maxN + 1):
        hits = [D for D in pool_divisors(pool, N)
                if plane_membership(e, secant_plane(curve, pair, D))]
        if hits:
            return StratumResult(N, tuple(hits), len(hits) == 1)
    return None
