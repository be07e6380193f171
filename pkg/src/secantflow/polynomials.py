"""Dense univariate polynomials over the rationals.

Coefficients are ``fractions.Fraction`` throughout; nothing in here (or in
any module built on top) touches floating point.  The representation is a
trimmed tuple of coefficients in increasing degree order, so polynomials are
immutable and hashable and can key caches.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Union

Scalar = Union[int, Fraction]


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """A polynomial ``c0 + c1*x + ... + cn*x**n`` with exact coefficients.

    >>> p = Poly([1, 0, 2])       # 1 + 2x^2
    >>> p(Fraction(1, 2))
    Fraction(3, 2)
    >>> (p * p).degree
    4
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> Poly:
        return cls(())

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> Poly:
        return cls((0,) * n + (c,))

    @classmethod
    def linear_root(cls, x0: Scalar) -> Poly:
        """x - x0."""
        return cls((-_frac(x0), 1))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-other if isinstance(other, Poly) else Poly.constant(other).__neg__())

    def __rsub__(self, other: Scalar) -> Poly:
        return Poly.constant(other) - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly([a * c for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- calculus and evaluation ---------------------------------------------

    def __call__(self, x0: Scalar) -> Fraction:
        """Evaluate by Horner's rule."""
        x0 = _frac(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, x0: Scalar) -> Poly:
        """The polynomial ``p(x0 + z)`` as a polynomial in z (Taylor shift)."""
        x0 = _frac(x0)
        out = []
        acc = self
        k = 0
        fact = 1
        while not acc.is_zero():
            out.append(acc(x0) / fact)
            acc = acc.derivative()
            k += 1
            fact *= k
        return Poly(out)

    def root_multiplicity(self, x0: Scalar) -> int:
        """Multiplicity of x0 as a root (0 if not a root)."""
        shifted = self.shift(x0)
        for i, c in enumerate(shifted.coeffs):
            if c:
                return i
        raise ZeroDivisionError("every point is a root of the zero polynomial")

    # -- gcd and squarefreeness ----------------------------------------------

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        return self.gcd(self.derivative()).degree == 0

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """All rational roots with multiplicities, sorted.

        Classical p/q search over divisors of the (integerized) constant and
        leading coefficients; complete for rational roots.
        """
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial")
        p = self
        shift0 = 0
        while p[0] == 0 and p.degree > 0:
            p = Poly(p.coeffs[1:])
            shift0 += 1
        roots: list[tuple[Fraction, int]] = []
        if shift0:
            roots.append((Fraction(0), shift0))
        if p.degree > 0:
            den = 1
            for c in p.coeffs:
                den = den * c.denominator // _gcd_int(den, c.denominator)
            ints = [int(c * den) for c in p.coeffs]
            a0, an = ints[0], ints[-1]
            seen = set()
            for pn in _divisors(abs(a0)):
                for qn in _divisors(abs(an)):
                    for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                        if cand in seen:
                            continue
                        seen.add(cand)
                        if p(cand) == 0:
                            roots.append((cand, p.root_multiplicity(cand)))
        roots.sort(key=lambda t: t[0])
        return roots

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Poly(" + " + ".join(parts) + ")"


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
