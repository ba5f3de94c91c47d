"""Fiber polynomials of the curve-valued descent map.

A primitive point t = (x:y) off the zero locus of a cubic form h determines the
curve cut out by w^2 = (y*u - x*v) * h(u,v) * h(x,y); its c-invariants, as x and y
vary, are homogeneous polynomials c4(x,y) and c6(x,y) of degrees 8 and 12.
Eliminating the scaling variable against a fixed curve with invariants
(c4E, c6E) gives the degree-24 polynomial

    j24 = c6E^2 * c4(x,y)^3 - c4E^3 * c6(x,y)^2

which is exactly divisible by h(x,y)^6; the degree-6 quotient is the fiber
polynomial whose rational projective roots are the only candidate solutions
attached to that curve.  The quotient has the uniform content 2^22 * 3^3, and
dividing it out leaves the sextic with coefficient rows C_i(h), D_i(h) below.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .forms import BinaryCubicForm, PairForm, cubic_discriminant, pair_c4, pair_c6

CONTENT_SCALE = 2**22 * 3**3  # uniform content of the undivided sextic


class DescentError(Exception):
    """Internal consistency failure in fiber-polynomial construction."""


@dataclass(frozen=True)
class BivariatePoly:
    """Homogeneous polynomial in (x, y) with integer coefficients.

    coeffs[i] is the coefficient of x^(degree-i) * y^i; the tuple always has
    degree+1 entries.  Content is never silently divided out.
    """

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise TypeError("coefficients must be integers")

    @staticmethod
    def from_cubic(h: BinaryCubicForm) -> "BivariatePoly":
        return BivariatePoly(3, h.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def evaluate(self, x: int, y: int) -> int:
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * x ** (self.degree - i) * y**i
        return acc

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        if self.degree != other.degree:
            raise ValueError("cannot add polynomials of different degrees")
        return BivariatePoly(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        if self.degree != other.degree:
            raise ValueError("cannot subtract polynomials of different degrees")
        return BivariatePoly(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BivariatePoly(self.degree + other.degree, tuple(out))

    def scaled(self, k: int) -> "BivariatePoly":
        return BivariatePoly(self.degree, tuple(k * c for c in self.coeffs))

    def __pow__(self, n: int) -> "BivariatePoly":
        if n < 0:
            raise ValueError("negative power")
        result = BivariatePoly(0, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact(self, divisor: "BivariatePoly") -> "BivariatePoly":
        """Exact quotient by a homogeneous divisor; raises DescentError on remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        n, m = self.degree, divisor.degree
        if m > n:
            raise DescentError("divisor degree exceeds dividend degree")
        rem = list(self.coeffs)
        dvs = divisor.coeffs
        lead = next(i for i, c in enumerate(dvs) if c != 0)
        out = [0] * (n - m + 1)
        # positions index x^(deg-i) y^i; divide like a univariate polynomial led
        # by the first nonzero divisor coefficient
        for i in range(n - m + 1):
            q, r = divmod(rem[i + lead], dvs[lead])
            if r:
                raise DescentError("nonzero remainder in exact polynomial division")
            out[i] = q
            if q:
                for j in range(lead, m + 1):
                    rem[i + j] -= q * dvs[j]
        if any(rem):
            raise DescentError("nonzero remainder in exact polynomial division")
        return BivariatePoly(n - m, tuple(out))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            px, py = self.degree - i, i
            mono = "*".join(
                filter(None, (f"x^{px}" if px > 1 else "x" if px else "", f"y^{py}" if py > 1 else "y" if py else ""))
            )
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(f"{sign}{body}")
        return "".join(terms) or "0"


@dataclass(frozen=True)
class ScaledPoly:
    """An integer polynomial together with a positive rational scale.

    The mathematical value is scale * poly; keeping the two apart lets every
    identity be asserted at the integer level.
    """

    poly: BivariatePoly
    scale: Fraction

    def value_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(self.scale * c for c in self.poly.coeffs)


@dataclass(frozen=True)
class SexticFiber:
    """Degree-6 fiber polynomial attached to one curve and one cubic form."""

    poly: BivariatePoly
    curve_label: str
    h: BinaryCubicForm

    def __post_init__(self):
        if self.poly.degree != 6:
            raise ValueError("fiber polynomial must have degree 6")
        if self.poly.is_zero():
            raise DescentError(
                f"fiber polynomial identically zero for curve {self.curve_label}"
            )


_X = BivariatePoly(1, (1, 0))
_Y = BivariatePoly(1, (0, 1))


def _pair_polys(h: BinaryCubicForm) -> tuple[BivariatePoly, ...]:
    """Linear factor (y*u - x*v) and cubic factor h(x,y)*h(u,v) as coefficient polys in x,y."""
    hp = BivariatePoly.from_cubic(h)
    A0, A1 = _Y, _X.scaled(-1)
    B = tuple(hp.scaled(k) for k in h.coefficients)
    return A0, A1, B


def c4_poly(h: BinaryCubicForm) -> BivariatePoly:
    """c4 of the joint quartic as a degree-8 polynomial in (x, y)."""
    A0, A1, B = _pair_polys(h)
    B0, B1, B2, B3 = B
    s = (
        (A1 * A1 * B1 * B1).scaled(-1)
        + (A1 * A1 * B0 * B2).scaled(3)
        + (A0 * A1 * B1 * B2)
        + (A0 * A0 * B2 * B2).scaled(-1)
        + (A0 * A1 * B0 * B3).scaled(-9)
        + (A0 * A0 * B1 * B3).scaled(3)
    )
    return s.scaled(-16)


def c6_poly(h: BinaryCubicForm) -> BivariatePoly:
    """c6 of the joint quartic as a degree-12 polynomial in (x, y)."""
    A0, A1, B = _pair_polys(h)
    B0, B1, B2, B3 = B
    s = (
        (A1 * A1 * A1 * B1 * B1 * B1).scaled(2)
        + (A1 * A1 * A1 * B0 * B1 * B2).scaled(-9)
        + (A0 * A1 * A1 * B1 * B1 * B2).scaled(-3)
        + (A0 * A1 * A1 * B0 * B2 * B2).scaled(18)
        + (A0 * A0 * A1 * B1 * B2 * B2).scaled(-3)
        + (A0 * A0 * A0 * B2 * B2 * B2).scaled(2)
        + (A1 * A1 * A1 * B0 * B0 * B3).scaled(27)
        + (A0 * A1 * A1 * B0 * B1 * B3).scaled(-27)
        + (A0 * A0 * A1 * B1 * B1 * B3).scaled(18)
        + (A0 * A0 * A1 * B0 * B2 * B3).scaled(-27)
        + (A0 * A0 * A0 * B1 * B2 * B3).scaled(-9)
        + (A0 * A0 * A0 * B0 * B3 * B3).scaled(27)
    )
    return s.scaled(-32)


def c4_at(h: BinaryCubicForm, x: int, y: int) -> int:
    """c4(x, y) evaluated directly through the pair invariant."""
    h0 = h(x, y)
    a, b, c, d = h.coefficients
    return pair_c4(PairForm(y, -x, h0 * a, h0 * b, h0 * c, h0 * d))


def c6_at(h: BinaryCubicForm, x: int, y: int) -> int:
    """c6(x, y) evaluated directly through the pair invariant."""
    h0 = h(x, y)
    a, b, c, d = h.coefficients
    return pair_c6(PairForm(y, -x, h0 * a, h0 * b, h0 * c, h0 * d))


def _clear_pair(c4E: Fraction, c6E: Fraction) -> tuple[int, int, int]:
    """Scale rational curve invariants to integers: returns (M4, M6, d) with
    M4 = d^2*c4E, M6 = d^3*c6E integers."""
    c4E, c6E = Fraction(c4E), Fraction(c6E)
    d = lcm(c4E.denominator, c6E.denominator)
    M4 = c4E * d * d
    M6 = c6E * d**3
    assert M4.denominator == 1 and M6.denominator == 1
    return int(M4), int(M6), d


def j24(h: BinaryCubicForm, c4E: Fraction | int, c6E: Fraction | int) -> ScaledPoly:
    """Degree-24 eliminant c6E^2 * c4(x,y)^3 - c4E^3 * c6(x,y)^2, denominator-cleared."""
    M4, M6, d = _clear_pair(Fraction(c4E), Fraction(c6E))
    c4p = c4_poly(h)
    c6p = c6_poly(h)
    poly = (c4p**3).scaled(M6 * M6) - (c6p * c6p).scaled(M4**3)
    return ScaledPoly(poly, Fraction(1, d**6))


def j6_by_division(h: BinaryCubicForm, c4E: Fraction | int, c6E: Fraction | int) -> ScaledPoly:
    """Exact quotient of the eliminant by h(x,y)^6: the degree-6 fiber polynomial.

    A nonzero remainder signals an arithmetic bug, never a legal input state.
    """
    if cubic_discriminant(h) == 0:
        raise ValueError("degenerate cubic form (zero discriminant)")
    j = j24(h, c4E, c6E)
    h6 = BivariatePoly.from_cubic(h) ** 6
    return ScaledPoly(j.poly.divide_exact(h6), j.scale)


def c_coefficients(h: BinaryCubicForm) -> tuple[int, ...]:
    """a4^3-rows of the content-reduced sextic: entry i multiplies x^(6-i) * y^i."""
    a, b, c, d = h.coefficients
    return tuple(reversed((
        (2 * c**3 - 9 * b * c * d + 27 * a * d * d) ** 2,
        -6 * (2 * c**3 - 9 * b * c * d + 27 * a * d * d) * (-b * c * c + 6 * b * b * d - 9 * a * c * d),
        -3
        * (
            b * b * c**4
            - 24 * a * c**5
            + 18 * b**3 * c * c * d
            + 90 * a * b * c**3 * d
            - 108 * b**4 * d * d
            + 216 * a * b * b * c * d * d
            - 567 * a * a * c * c * d * d
            + 486 * a * a * b * d**3
        ),
        -2
        * (
            13 * b**3 * c**3
            - 72 * a * b * c**4
            - 72 * b**4 * c * d
            + 567 * a * b * b * c * c * d
            - 432 * a * a * c**3 * d
            - 432 * a * b**3 * d * d
            + 243 * a * a * b * c * d * d
            + 729 * a**3 * d**3
        ),
        -3
        * (
            b**4 * c * c
            + 18 * a * b * b * c**3
            - 108 * a * a * c**4
            - 24 * b**5 * d
            + 90 * a * b**3 * c * d
            + 216 * a * a * b * c * c * d
            - 567 * a * a * b * b * d * d
            + 486 * a**3 * c * d * d
        ),
        6 * (b * b * c - 6 * a * c * c + 9 * a * b * d) * (2 * b**3 - 9 * a * b * c + 27 * a * a * d),
        (2 * b**3 - 9 * a * b * c + 27 * a * a * d) ** 2,
    )))


def d_coefficients(h: BinaryCubicForm) -> tuple[int, ...]:
    """a6^2-rows of the content-reduced sextic: entry i multiplies x^(6-i) * y^i."""
    a, b, c, d = h.coefficients
    q = 2 * b * b * c * c - 3 * a * c**3 - 3 * b**3 * d - 9 * a * b * c * d + 81 * a * a * d * d
    return tuple(reversed((
        -27 * (-c * c + 3 * b * d) ** 3,
        -81 * (-b * c + 9 * a * d) * (-c * c + 3 * b * d) ** 2,
        -81 * (-c * c + 3 * b * d) * q,
        -27
        * (-b * c + 9 * a * d)
        * (7 * b * b * c * c - 18 * a * c**3 - 18 * b**3 * d + 36 * a * b * c * d + 81 * a * a * d * d),
        -81 * (-b * b + 3 * a * c) * q,
        -81 * (-b * c + 9 * a * d) * (-b * b + 3 * a * c) ** 2,
        -27 * (-b * b + 3 * a * c) ** 3,
    )))


def j6_closed_form(h: BinaryCubicForm, a4: Fraction | int, a6: Fraction | int) -> ScaledPoly:
    """Content-reduced sextic sum_i (C_i(h) a4^3 + D_i(h) a6^2) x^(6-i) y^i.

    Rational a4, a6 are cleared to a common integer scale, which is recorded.
    """
    a4, a6 = Fraction(a4), Fraction(a6)
    cube, square = a4**3, a6 * a6
    L = lcm(cube.denominator, square.denominator)
    u3 = int(cube * L)
    v2 = int(square * L)
    C = c_coefficients(h)
    D = d_coefficients(h)
    coeffs = tuple(C[i] * u3 + D[i] * v2 for i in range(7))
    return ScaledPoly(BivariatePoly(6, coeffs), Fraction(1, L))


def rational_square_root(s: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if not a square."""
    if s < 0:
        return None
    num, den = s.numerator, s.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def lambda_check(
    h: BinaryCubicForm,
    x0: int,
    y0: int,
    c4E: Fraction | int,
    c6E: Fraction | int,
) -> Fraction | None:
    """Positive rational lambda with c4(x0,y0) = lambda^4 c4E and
    c6(x0,y0) = lambda^6 c6E, if one exists.

    Degenerate invariant patterns (one side vanishing where the other does not)
    yield None rather than an error.
    """
    if gcd(x0, y0) != 1:
        raise ValueError("point must be primitive")
    if h(x0, y0) == 0:
        raise ValueError("point lies on the zero locus of the form")
    c4E, c6E = Fraction(c4E), Fraction(c6E)
    c4v = Fraction(c4_at(h, x0, y0))
    c6v = Fraction(c6_at(h, x0, y0))

    def verify(s: Fraction) -> Fraction | None:
        # s plays the role of lambda^2
        if s <= 0:
            return None
        if c4v != s * s * c4E or c6v != s**3 * c6E:
            return None
        return rational_square_root(s)

    if c4E != 0 and c6E != 0:
        if c4v == 0 or c6v == 0:
            return None
        return verify((c6v / c4v) * (c4E / c6E))
    if c4E == 0:
        if c4v != 0 or c6E == 0 or c6v == 0:
            return None
        # lambda^6 = c6v / c6E: try s = cube root of the ratio squared
        ratio = c6v / c6E
        if ratio <= 0:
            return None
        s = _rational_nth_root(ratio, 3)
        return verify(s) if s is not None else None
    # c6E == 0, c4E != 0
    if c6v != 0 or c4v == 0:
        return None
    ratio = c4v / c4E
    if ratio <= 0:
        return None
    s = rational_square_root(ratio)
    return verify(s) if s is not None else None


def _rational_nth_root(x: Fraction, n: int) -> Fraction | None:
    def iroot(m: int) -> int | None:
        if m < 0:
            if n % 2 == 0:
                return None
            r = iroot(-m)
            return -r if r is not None else None
        lo, hi = 0, max(1, int(round(m ** (1.0 / n))) + 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**n < m:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**n == m else None

    rn = iroot(x.numerator)
    rd = iroot(x.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def twist_factor(
    h: BinaryCubicForm,
    x0: int,
    y0: int,
    c4E: Fraction | int,
    c6E: Fraction | int,
) -> Fraction:
    """Quadratic-twist factor r for which the r-twist of the curve admits
    lambda = +-1 at (x0, y0)."""
    c4E, c6E = Fraction(c4E), Fraction(c6E)
    c4v = Fraction(c4_at(h, x0, y0))
    c6v = Fraction(c6_at(h, x0, y0))
    if c4v == 0 or c6E == 0:
        raise ValueError("twist factor undefined: j-invariant 0/1728 twist ambiguity")
    return (c6v / c4v) * (c4E / c6E)
