"""Odd hyperelliptic curves, divisors, and exact Riemann-Roch spaces.

The model is y^2 = f(x) with deg f = 2g+1 >= 5 and f squarefree, so there
is a single point at infinity and the genus is g = (deg f - 1)/2.  The two
basic valuations at infinity are v(x) = -2 and v(y) = -(2g+1); since these
have opposite parity, v(a(x) + b(x) y) = min(-2 deg a, -2 deg b - (2g+1))
with no cancellation, which is what makes the dimension bookkeeping exact.

Functions on the curve are represented as (a(x) + b(x) y) / q(x).  Because
f is squarefree the ring Q[x][y]/(y^2 - f) is integrally closed, so every
function regular outside infinity and a prescribed set of affine fibres has
this shape with q supported on those fibres; Riemann-Roch spaces are cut
out of such candidates by exact jet conditions at the support points and
degree bounds at infinity, and the resulting basis is re-certified by
valuation accounting before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import series
from .linalg import nullspace
from .errors import (
    EvenDegreeError,
    GenusTooSmallError,
    NonSquarefreeError,
    PoleAtPointError,
    UnsupportedSupportError,
    WeierstrassPointError,
    ZeroSectionError,
)
from .polynomials import Poly, Scalar, _frac


# ---------------------------------------------------------------------------
# points and curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=False)
class CurvePoint:
    """A closed point of the model: infinity, or an affine point (x0, y0)."""

    at_infinity: bool
    x: Fraction | None = None
    y: Fraction | None = None

    @classmethod
    def infinity(cls) -> CurvePoint:
        return cls(True)

    @classmethod
    def affine(cls, x0: Scalar, y0: Scalar) -> CurvePoint:
        return cls(False, _frac(x0), _frac(y0))

    def sort_key(self):
        if self.at_infinity:
            return (0, Fraction(0), Fraction(0))
        return (1, self.x, self.y)

    def conjugate(self) -> CurvePoint:
        """The hyperelliptic involution (x, y) -> (x, -y); fixes infinity."""
        if self.at_infinity:
            return self
        return CurvePoint(False, self.x, -self.y)

    def __repr__(self) -> str:
        if self.at_infinity:
            return "CurvePoint(inf)"
        return f"CurvePoint({self.x}, {self.y})"


INF = CurvePoint.infinity()


@dataclass(frozen=True)
class HyperellipticCurve:
    """The curve y^2 = f(x), f squarefree of odd degree 2g+1 >= 5."""

    f: Poly
    genus: int

    def weierstrass_degree(self) -> int:
        return self.f.degree

    def is_on_curve(self, x0: Scalar, y0: Scalar) -> bool:
        x0, y0 = _frac(x0), _frac(y0)
        return y0 * y0 == self.f(x0)

    def point(self, x0: Scalar, y0: Scalar) -> CurvePoint:
        """Validated affine point constructor."""
        if not self.is_on_curve(x0, y0):
            raise UnsupportedSupportError(
                f"({x0}, {y0}) does not satisfy y^2 = f(x)")
        return CurvePoint.affine(x0, y0)

    def canonical_divisor(self) -> Divisor:
        return Divisor({INF: 2 * self.genus - 2})

    def y_series(self, x0: Scalar, y0: Scalar, n: int) -> list[Fraction]:
        """Expansion of y in z = x - x0 at the point (x0, y0), y0 != 0."""
        x0, y0 = _frac(x0), _frac(y0)
        if y0 == 0:
            raise WeierstrassPointError(
                f"x = {x0} is a Weierstrass point; z = x - x0 is not a local "
                "parameter for y there")
        if not self.is_on_curve(x0, y0):
            raise UnsupportedSupportError(f"({x0}, {y0}) is not on the curve")
        return list(_y_series_cached(self, x0, y0, n))


@lru_cache(maxsize=None)
def _y_series_cached(curve: HyperellipticCurve, x0: Fraction, y0: Fraction,
                     n: int) -> tuple[Fraction, ...]:
    fa = series.shifted_poly(curve.f, x0, n)
    return tuple(series.sqrt_series(fa, y0, n))


def make_curve(coeffs: Iterable[Scalar]) -> HyperellipticCurve:
    """Build and validate a curve from the coefficients of f (low to high).

    Raises EvenDegreeError, GenusTooSmallError or NonSquarefreeError when
    the polynomial leaves the supported model.
    """
    f = Poly(coeffs)
    if f.degree < 1:
        raise GenusTooSmallError("f must be nonconstant")
    if f.degree % 2 == 0:
        raise EvenDegreeError(
            f"deg f = {f.degree} is even; the model needs one point at infinity")
    if f.degree < 5:
        raise GenusTooSmallError(f"deg f = {f.degree} < 5 gives genus < 2")
    if not f.is_squarefree():
        raise NonSquarefreeError("f has a repeated root")
    return HyperellipticCurve(f, (f.degree - 1) // 2)


_STANDARD_F = {
    2: (4, 4, 0, 0, 0, 1),        # x^5 + 4x + 4
    3: (1, 1, 0, 0, 0, 0, 0, 1),  # x^7 + x + 1
}


def standard_curve(g: int) -> HyperellipticCurve:
    """A fixed squarefree curve of genus g, for identity cross-checks."""
    if g in _STANDARD_F:
        return make_curve(_STANDARD_F[g])
    for a, b in ((4, 4), (1, 1), (2, 1), (3, 1), (1, 2), (5, 3)):
        coeffs = [b, a] + [0] * (2 * g - 1) + [1]
        try:
            return make_curve(coeffs)
        except NonSquarefreeError:
            continue
    raise NonSquarefreeError(f"no standard curve found for genus {g}")


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

class Divisor:
    """A finite formal Z-combination of curve points.

    Immutable; zero multiplicities are dropped and points are kept sorted,
    so equal divisors compare and hash equal.
    """

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[CurvePoint, int] | Iterable[tuple[CurvePoint, int]] = ()):
        if isinstance(coeffs, Mapping):
            coeffs = coeffs.items()
        acc: dict[CurvePoint, int] = {}
        for p, m in coeffs:
            acc[p] = acc.get(p, 0) + int(m)
        items = tuple(sorted(((p, m) for p, m in acc.items() if m != 0),
                             key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "_items", items)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    @classmethod
    def zero(cls) -> Divisor:
        return cls(())

    @classmethod
    def of_point(cls, p: CurvePoint, m: int = 1) -> Divisor:
        return cls(((p, m),))

    def items(self) -> tuple[tuple[CurvePoint, int], ...]:
        return self._items

    def coeff(self, p: CurvePoint) -> int:
        for q, m in self._items:
            if q == p:
                return m
        return 0

    def support(self) -> tuple[CurvePoint, ...]:
        return tuple(p for p, _ in self._items)

    def affine_items(self) -> tuple[tuple[CurvePoint, int], ...]:
        return tuple((p, m) for p, m in self._items if not p.at_infinity)

    @property
    def inf_coeff(self) -> int:
        return self.coeff(INF)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._items)

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(tuple(self._items) + tuple(other._items))

    def __neg__(self) -> Divisor:
        return Divisor(tuple((p, -m) for p, m in self._items))

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor(tuple((p, k * m) for p, m in self._items))

    __rmul__ = __mul__

    def __le__(self, other: Divisor) -> bool:
        pts = set(self.support()) | set(other.support())
        return all(self.coeff(p) <= other.coeff(p) for p in pts)

    def gcd(self, other: Divisor) -> Divisor:
        """Pointwise minimum (largest divisor below both)."""
        pts = set(self.support()) | set(other.support())
        return Divisor({p: min(self.coeff(p), other.coeff(p)) for p in pts})

    def lcm(self, other: Divisor) -> Divisor:
        """Pointwise maximum (smallest divisor above both)."""
        pts = set(self.support()) | set(other.support())
        return Divisor({p: max(self.coeff(p), other.coeff(p)) for p in pts})

    def __eq__(self, other) -> bool:
        if isinstance(other, Divisor):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Divisor", self._items))

    def __repr__(self) -> str:
        if not self._items:
            return "Divisor(0)"
        parts = []
        for p, m in self._items:
            at = "inf" if p.at_infinity else f"({p.x},{p.y})"
            parts.append(f"{m}*{at}")
        return "Divisor(" + " + ".join(parts) + ")"


def validate_support(curve: HyperellipticCurve, D: Divisor) -> None:
    """Check every affine support point is on the curve with y != 0."""
    for p, _ in D.affine_items():
        if not curve.is_on_curve(p.x, p.y):
            raise UnsupportedSupportError(f"{p!r} is not on the curve")
        if p.y == 0:
            raise UnsupportedSupportError(
                f"{p!r} is a Weierstrass point; support must avoid y = 0")


# ---------------------------------------------------------------------------
# functions on the curve
# ---------------------------------------------------------------------------

class CurveFunction:
    """An element (a(x) + b(x) y) / q(x) of the function field.

    The representation is canonical: q is monic and gcd(a, b, q) = 1, so
    equality of functions is equality of the triples.
    """

    __slots__ = ("curve", "a", "b", "den")

    def __init__(self, curve: HyperellipticCurve, a: Poly, b: Poly,
                 den: Poly = Poly.one()):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = a.gcd(b).gcd(den)
        if g.degree > 0:
            a, b, den = a // g, b // g, den // g
        lead = den.leading()
        if lead != 1:
            inv = Fraction(1) / lead
            a, b, den = a * inv, b * inv, den * inv
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CurveFunction is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, curve: HyperellipticCurve) -> CurveFunction:
        return cls(curve, Poly.zero(), Poly.zero())

    @classmethod
    def one(cls, curve: HyperellipticCurve) -> CurveFunction:
        return cls(curve, Poly.one(), Poly.zero())

    @classmethod
    def x(cls, curve: HyperellipticCurve) -> CurveFunction:
        return cls(curve, Poly.x(), Poly.zero())

    @classmethod
    def y(cls, curve: HyperellipticCurve) -> CurveFunction:
        return cls(curve, Poly.zero(), Poly.one())

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def conjugate(self) -> CurveFunction:
        return CurveFunction(self.curve, self.a, -self.b, self.den)

    def norm_numerator(self) -> Poly:
        """The polynomial a^2 - b^2 f  (norm of the numerator a + b y)."""
        return self.a * self.a - self.b * self.b * self.curve.f

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: CurveFunction) -> CurveFunction:
        self._check_same(other)
        a = self.a * other.den + other.a * self.den
        b = self.b * other.den + other.b * self.den
        return CurveFunction(self.curve, a, b, self.den * other.den)

    def __neg__(self) -> CurveFunction:
        return CurveFunction(self.curve, -self.a, -self.b, self.den)

    def __sub__(self, other: CurveFunction) -> CurveFunction:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CurveFunction):
            self._check_same(other)
            a = self.a * other.a + self.b * other.b * self.curve.f
            b = self.a * other.b + self.b * other.a
            return CurveFunction(self.curve, a, b, self.den * other.den)
        c = _frac(other)
        return CurveFunction(self.curve, self.a * c, self.b * c, self.den)

    __rmul__ = __mul__

    def inverse(self) -> CurveFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        # 1/(a+by) = (a-by)/(a^2-b^2 f)
        return CurveFunction(self.curve, self.a * self.den,
                             -self.b * self.den, self.norm_numerator())

    def _check_same(self, other: CurveFunction) -> None:
        if self.curve != other.curve:
            raise ValueError("functions live on different curves")

    def __eq__(self, other) -> bool:
        if isinstance(other, CurveFunction):
            return (self.curve == other.curve and self.a == other.a
                    and self.b == other.b and self.den == other.den)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("CurveFunction", self.curve, self.a, self.b, self.den))

    def __repr__(self) -> str:
        num = f"{self.a!r} + ({self.b!r})*y"
        if self.den == Poly.one():
            return f"CurveFunction({num})"
        return f"CurveFunction(({num}) / ({self.den!r}))"

    # -- local data ---------------------------------------------------------

    def numerator_series(self, x0: Fraction, y0: Fraction, n: int) -> list[Fraction]:
        """Expansion of a + b y at (x0, y0) in z = x - x0, to order n."""
        out = series.shifted_poly(self.a, x0, n)
        if not self.b.is_zero():
            ybr = self.curve.y_series(x0, y0, n)
            out = series.add(out, series.mul(series.shifted_poly(self.b, x0, n), ybr, n))
        return out[:n] + [Fraction(0)] * max(0, n - len(out))


def valuation(curve: HyperellipticCurve, h: CurveFunction, p: CurvePoint) -> int:
    """Exact valuation of h at p (negative at a pole).

    p must be infinity or an affine non-Weierstrass point; the zero
    function raises ZeroSectionError.
    """
    if h.is_zero():
        raise ZeroSectionError("the zero function has no valuation")
    if p.at_infinity:
        vals = []
        if not h.a.is_zero():
            vals.append(-2 * h.a.degree)
        if not h.b.is_zero():
            vals.append(-2 * h.b.degree - curve.weierstrass_degree())
        return min(vals) + 2 * h.den.degree
    if p.y == 0:
        raise WeierstrassPointError(
            f"valuation at the Weierstrass point x = {p.x} is not supported")
    if not curve.is_on_curve(p.x, p.y):
        raise UnsupportedSupportError(f"{p!r} is not on the curve")
    norm = h.norm_numerator()
    if norm.is_zero():
        # a^2 = b^2 f with f squarefree of odd degree forces a = b = 0
        raise ZeroSectionError("degenerate representation of the zero function")
    bound = norm.root_multiplicity(p.x)
    num = h.numerator_series(p.x, p.y, bound + 1)
    v_num = series.valuation(num)
    assert v_num is not None, "norm bound must expose the numerator valuation"
    return v_num - h.den.root_multiplicity(p.x)


def vanishing_order(curve: HyperellipticCurve, h: CurveFunction,
                    p: CurvePoint) -> int:
    """First nonzero jet index of h at p; PoleAtPointError if h has a pole."""
    v = valuation(curve, h, p)
    if v < 0:
        raise PoleAtPointError(f"pole of order {-v} at {p!r}")
    return v


@dataclass(frozen=True)
class JetVector:
    """Taylor coefficients (orders 0..order) of a function at an affine point.

    These coefficients span the same functionals as residues against
    z^-1..z^-(order+1), up to an invertible antitriangular change, so they
    are the working representation of dual classes downstream.
    """

    point: CurvePoint
    order: int
    values: tuple[Fraction, ...]


def jet(curve: HyperellipticCurve, h: CurveFunction, p: CurvePoint,
        order: int) -> JetVector:
    """Jet of h at an affine point to the given order (inclusive).

    Raises WeierstrassPointError at y = 0 or infinity (where z = x - x0 is
    not a parameter), PoleAtPointError when h is not regular at p.
    """
    if order < 0:
        raise ValueError("jet order must be >= 0")
    if p.at_infinity:
        raise WeierstrassPointError("jets at infinity are not supported")
    if p.y == 0:
        raise WeierstrassPointError(
            f"jets at the Weierstrass point x = {p.x} are not supported")
    if not curve.is_on_curve(p.x, p.y):
        raise UnsupportedSupportError(f"{p!r} is not on the curve")
    if h.is_zero():
        return JetVector(p, order, tuple([Fraction(0)] * (order + 1)))
    v_den = h.den.root_multiplicity(p.x)
    n = order + 1 + v_den
    num = h.numerator_series(p.x, p.y, n)
    den = series.shifted_poly(h.den, p.x, n)
    try:
        vals = series.divide(num, den, order + 1)
    except ZeroDivisionError as exc:
        raise PoleAtPointError(f"pole at {p!r}: {exc}") from exc
    return JetVector(p, order, tuple(vals))


# ---------------------------------------------------------------------------
# Riemann-Roch spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionSpace:
    """L(D) = {h : div(h) + D >= 0}, with an exact basis."""

    divisor: Divisor
    dim: int
    basis: tuple[CurveFunction, ...]


def _fibres(D: Divisor) -> dict[Fraction, dict[Fraction, int]]:
    """Group affine support by x-coordinate: x0 -> {y0: mult}."""
    out: dict[Fraction, dict[Fraction, int]] = {}
    for p, m in D.affine_items():
        out.setdefault(p.x, {})[p.y] = m
    return out


def riemann_roch_space(curve: HyperellipticCurve, D: Divisor) -> SectionSpace:
    """Compute L(D) exactly.

    Candidates are (a(x) + b(x) y)/q(x) with q the minimal monic
    denominator allowed by the affine part of D; degree bounds at infinity
    come from v(x) = -2, v(y) = -(2g+1), and the affine conditions are jet
    conditions on a + b y at each support point and its conjugate.  The
    kernel of that exact linear system is the basis.  Each returned basis
    element is re-certified by valuation accounting at every place where it
    could have a pole.

    Parameters
    ----------
    curve : HyperellipticCurve
    D : Divisor
        Support may include infinity and affine non-Weierstrass points,
        with arbitrary integer multiplicities.

    Returns
    -------
    SectionSpace
    """
    validate_support(curve, D)
    w = curve.weierstrass_degree()  # 2g + 1
    n_inf = D.inf_coeff
    fibres = _fibres(D)

    # minimal denominator and required numerator vanishing per point
    q = Poly.one()
    conditions: list[tuple[Fraction, Fraction, int]] = []  # (x0, y0, order)
    for x0, ys in sorted(fibres.items()):
        mults = list(ys.values())
        e0 = max(max(mults), 0)
        if e0:
            q = q * Poly.linear_root(x0) ** e0
        y_ref = next(iter(ys))
        for y0 in (y_ref, -y_ref):
            c = ys.get(y0, 0)
            r = e0 - c
            if r > 0:
                conditions.append((x0, y0, r))

    dq = q.degree
    a_max = (n_inf + 2 * dq) // 2 if n_inf + 2 * dq >= 0 else -1
    b_max = (n_inf + 2 * dq - w) // 2 if n_inf + 2 * dq - w >= 0 else -1
    na = a_max + 1
    nb = b_max + 1
    ncand = na + nb
    if ncand == 0:
        return SectionSpace(D, 0, ())

    rows: list[list[Fraction]] = []
    for x0, y0, r in conditions:
        ybr = curve.y_series(x0, y0, r)
        for t in range(r):
            row = [Fraction(0)] * ncand
            for i in range(na):
                if t <= i:
                    row[i] = Fraction(math.comb(i, t)) * x0 ** (i - t)
            for j in range(nb):
                acc = Fraction(0)
                for s in range(min(j, t) + 1):
                    acc += Fraction(math.comb(j, s)) * x0 ** (j - s) * ybr[t - s]
                row[na + j] = acc
            rows.append(row)

    kernel = nullspace(rows, cols=ncand)

    basis = []
    for v in kernel:
        a = Poly(v[:na])
        b = Poly(v[na:])
        basis.append(CurveFunction(curve, a, b, q))
    space = SectionSpace(D, len(basis), tuple(basis))
    _certify_section_space(curve, space)
    return space


def _certify_section_space(curve: HyperellipticCurve, space: SectionSpace) -> None:
    """Assert div(h) + D >= 0 for each basis element, place by place.

    A candidate (a + b y)/q has poles only over the roots of q and at
    infinity, so checking the support of D, the conjugates of its affine
    support, and infinity is a complete certificate.
    """
    D = space.divisor
    places = {INF}
    for p, _ in D.affine_items():
        places.add(p)
        places.add(p.conjugate())
    for h in space.basis:
        if h.is_zero():
            raise AssertionError("zero function in a Riemann-Roch basis")
        for p in places:
            if valuation(curve, h, p) + D.coeff(p) < 0:
                raise AssertionError(
                    f"basis element {h!r} violates the divisor bound at {p!r}")


def h0_dim(curve: HyperellipticCurve, D: Divisor) -> int:
    return riemann_roch_space(curve, D).dim


def h1_dim(curve: HyperellipticCurve, D: Divisor) -> int:
    """dim H^1(O(D)), computed as dim L(K - D) by duality."""
    return riemann_roch_space(curve, curve.canonical_divisor() - D).dim
