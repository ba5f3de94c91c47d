"""Binary cubic and quartic forms and their classical invariants.

Everything here is exact: integer coefficients stay integers, rational
coefficients are :class:`fractions.Fraction`.  No floating point is used
anywhere, since downstream root extraction depends on exact coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rat = int | Fraction


@dataclass(frozen=True)
class BinaryCubicForm:
    """a*x^3 + b*x^2*y + c*x*y^2 + d*y^3 with coprime integer coefficients.

    Degenerate forms (discriminant zero) can be constructed; operations that
    require three distinct projective roots check and reject them.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        coeffs = (self.a, self.b, self.c, self.d)
        if not all(isinstance(v, int) for v in coeffs):
            raise TypeError("cubic form coefficients must be integers")
        if not any(coeffs):
            raise ValueError("zero form")
        g = gcd(gcd(abs(self.a), abs(self.b)), gcd(abs(self.c), abs(self.d)))
        if g != 1:
            raise ValueError(f"coefficients must be coprime (content {g})")

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x: int, y: int) -> int:
        a, b, c, d = self.coefficients
        return a * x**3 + b * x**2 * y + c * x * y**2 + d * y**3

    def discriminant(self) -> int:
        return cubic_discriminant(self)

    def __str__(self) -> str:
        terms = []
        for coef, mono in zip(self.coefficients, ("x^3", "x^2*y", "x*y^2", "y^3")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else ("+" if terms else "")
            mag = abs(coef)
            terms.append(f"{sign}{'' if mag == 1 else mag}{mono}")
        return "".join(terms) or "0"


@dataclass(frozen=True)
class BinaryQuarticForm:
    """A0*u^4 + A1*u^3*v + A2*u^2*v^2 + A3*u*v^3 + A4*v^4 with rational coefficients."""

    A0: Rat
    A1: Rat
    A2: Rat
    A3: Rat
    A4: Rat

    @property
    def coefficients(self):
        return (self.A0, self.A1, self.A2, self.A3, self.A4)


@dataclass(frozen=True)
class PairForm:
    """(A0*u + A1*v) * (B0*u^3 + B1*u^2*v + B2*u*v^2 + B3*v^3), kept factored."""

    A0: Rat
    A1: Rat
    B0: Rat
    B1: Rat
    B2: Rat
    B3: Rat

    def expand(self) -> BinaryQuarticForm:
        A0, A1, B0, B1, B2, B3 = (self.A0, self.A1, self.B0, self.B1, self.B2, self.B3)
        return BinaryQuarticForm(
            A0 * B0,
            A0 * B1 + A1 * B0,
            A0 * B2 + A1 * B1,
            A0 * B3 + A1 * B2,
            A1 * B3,
        )


def cubic_discriminant(h: BinaryCubicForm) -> int:
    """Discriminant of a binary cubic form; vanishes exactly when roots collide."""
    a, b, c, d = h.coefficients
    return 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d


def quartic_I2(q: BinaryQuarticForm) -> Fraction:
    A0, A1, A2, A3, A4 = q.coefficients
    return Fraction(A2 * A2, 12) - Fraction(A1 * A3, 4) + A0 * A4


def quartic_I3(q: BinaryQuarticForm) -> Fraction:
    A0, A1, A2, A3, A4 = q.coefficients
    return (
        Fraction(A2**3, 216)
        - Fraction(A1 * A2 * A3, 48)
        + Fraction(A0 * A3 * A3, 16)
        + Fraction(A1 * A1 * A4, 16)
        - Fraction(A0 * A2 * A4, 6)
    )


def pair_c4(p: PairForm) -> Rat:
    """Degree-4 generating invariant of a (linear, cubic) pair.

    Equals 192 * I2 of the expanded quartic.
    """
    A0, A1, B0, B1, B2, B3 = (p.A0, p.A1, p.B0, p.B1, p.B2, p.B3)
    return -16 * (
        -(A1**2) * B1**2
        + 3 * A1**2 * B0 * B2
        + A0 * A1 * B1 * B2
        - A0**2 * B2**2
        - 9 * A0 * A1 * B0 * B3
        + 3 * A0**2 * B1 * B3
    )


def pair_c6(p: PairForm) -> Rat:
    """Degree-6 generating invariant of a (linear, cubic) pair.

    Equals -13824 * I3 of the expanded quartic.
    """
    A0, A1, B0, B1, B2, B3 = (p.A0, p.A1, p.B0, p.B1, p.B2, p.B3)
    return -32 * (
        2 * A1**3 * B1**3
        - 9 * A1**3 * B0 * B1 * B2
        - 3 * A0 * A1**2 * B1**2 * B2
        + 18 * A0 * A1**2 * B0 * B2**2
        - 3 * A0**2 * A1 * B1 * B2**2
        + 2 * A0**3 * B2**3
        + 27 * A1**3 * B0**2 * B3
        - 27 * A0 * A1**2 * B0 * B1 * B3
        + 18 * A0**2 * A1 * B1**2 * B3
        - 27 * A0**2 * A1 * B0 * B2 * B3
        - 9 * A0**3 * B1 * B2 * B3
        + 27 * A0**3 * B0 * B3**2
    )


def pair_discriminant(p: PairForm) -> Rat:
    """Discriminant of the pair viewed as a single quartic.

    Factors as disc(cubic) * Res(linear, cubic)^2.
    """
    A0, A1, B0, B1, B2, B3 = (p.A0, p.A1, p.B0, p.B1, p.B2, p.B3)
    cubic_disc = -(
        -(B1**2) * B2**2
        + 4 * B0 * B2**3
        + 4 * B1**3 * B3
        - 18 * B0 * B1 * B2 * B3
        + 27 * B0**2 * B3**2
    )
    res = -(A1**3) * B0 + A0 * A1**2 * B1 - A0**2 * A1 * B2 + A0**3 * B3
    return cubic_disc * res**2


def weierstrass_b_invariants(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def weierstrass_c_invariants(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat):
    """(c4, c6, discriminant) of a general Weierstrass quintuple, exactly.

    Satisfies c4^3 - c6^2 = 1728 * disc.
    """
    b2, b4, b6, b8 = weierstrass_b_invariants(a1, a2, a3, a4, a6)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc
