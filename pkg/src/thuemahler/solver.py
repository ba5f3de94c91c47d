"""End-to-end pipeline: conductor bound, per-curve root extraction, S-unit filter.

The solver walks every database curve of admissible conductor, builds the
degree-6 fiber polynomial, extracts its rational projective roots exactly, and
keeps the primitive points whose form value factors over the prime set.  Root
extraction never factors the (routinely astronomical) leading coefficients:
real roots are isolated by Sturm bisection, reconstructed as fractions with
bounded denominator, and re-verified exactly; failure to reconstruct proves the
root irrational, so completeness is preserved.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curves import CurveDatabase, EllipticCurve, curves_with_admissible_conductor, short_model
from .descent import BivariatePoly, SexticFiber, j6_closed_form
from .forms import BinaryCubicForm, cubic_discriminant

# leading/trailing coefficients at most this large are factored outright instead
# of isolating real roots
DIVISOR_ENUMERATION_THRESHOLD = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DegenerateFormError(ValueError):
    """The cubic form has vanishing discriminant."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeSet:
    """Sorted set of distinct primes with their product."""

    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        object.__setattr__(self, "primes", ps)
        for p in ps:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")

    @staticmethod
    def of(*primes: int) -> "PrimeSet":
        return PrimeSet(tuple(primes))

    @property
    def product(self) -> int:
        m = 1
        for p in self.primes:
            m *= p
        return m

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


@dataclass(frozen=True)
class Solution:
    """Primitive projective point with S-unit form value and witnessing curve."""

    x: int
    y: int
    value: int
    sign: int
    factorization: dict[int, int]
    curve_label: str | None = None
    conductor: int | None = None

    @property
    def point(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class SolutionSet:
    """Canonically ordered solutions plus the inputs and bounds of the run."""

    solutions: tuple[Solution, ...]
    h: BinaryCubicForm
    primes: PrimeSet
    nmax: int | None = None
    db_max_conductor: int | None = None
    curves_considered: int = 0

    def points(self) -> list[tuple[int, int]]:
        return [s.point for s in self.solutions]

    def __len__(self):
        return len(self.solutions)


def _factorize_small(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def conductor_bound(h: BinaryCubicForm, S: PrimeSet) -> int:
    """Largest conductor the per-point curve can have: 2^8 times, for each odd
    prime in S or dividing the discriminant, p^1 off the discriminant
    (multiplicative reduction only), p^2 on it, with ceiling 3^5 at p = 3."""
    delta = cubic_discriminant(h)
    if delta == 0:
        raise DegenerateFormError("cubic form has zero discriminant")
    odd = set(p for p in S if p != 2)
    odd |= set(p for p in _factorize_small(delta) if p != 2)
    n = 2**8
    for p in sorted(odd):
        if delta % p != 0:
            n *= p
        elif p == 3:
            n *= 3**5
        else:
            n *= p * p
    return n


def is_s_unit(n: int, S: PrimeSet) -> tuple[int, dict[int, int]] | None:
    """(sign, exponent map) if |n| factors over S, else None.  n = 0 is an error."""
    if n == 0:
        raise ValueError("zero is not an S-unit")
    sign = 1 if n > 0 else -1
    m = abs(n)
    fac: dict[int, int] = {}
    for p in S:
        while m % p == 0:
            m //= p
            fac[p] = fac.get(p, 0) + 1
    if m != 1:
        return None
    return sign, fac


# ---------------------------------------------------------------------------
# exact rational root extraction
# ---------------------------------------------------------------------------


def _strip(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_eval(poly: list[int], v: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * v + c
    return acc


def _poly_derivative(poly: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(poly)][1:]


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = num[:]
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - len(den)
        coef = num[-1] / den[-1]
        q[shift] = coef
        for i, c in enumerate(den):
            num[shift + i] -= coef * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _primitive(poly: list[int]) -> list[int]:
    g = 0
    for c in poly:
        g = gcd(g, abs(c))
    if g <= 1:
        return poly[:]
    return [c // g for c in poly]


def _int_gcd_poly(f: list[int], g: list[int]) -> list[int]:
    """gcd of integer polynomials, primitive, via Euclid over Q."""
    a = [Fraction(c) for c in f]
    b = [Fraction(c) for c in g]
    while b and any(b):
        _, r = _poly_divmod_frac(a, b)
        a, b = b, r
    # clear denominators, make primitive
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    return _primitive(_strip(ints))


def _square_free_part(poly: list[int]) -> list[int]:
    d = _poly_derivative(poly)
    g = _int_gcd_poly(poly, d)
    if len(g) <= 1:
        return poly[:]
    q, r = _poly_divmod_frac([Fraction(c) for c in poly], [Fraction(c) for c in g])
    assert not any(r)
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive(_strip([int(c * den) for c in q]))


def _sturm_chain(poly: list[int]) -> list[list[Fraction]]:
    chain = [[Fraction(c) for c in poly], [Fraction(c) for c in _poly_derivative(poly)]]
    while len(chain[-1]) > 0 and any(chain[-1]):
        _, r = _poly_divmod_frac(chain[-2], chain[-1])
        if not r or not any(r):
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list[list[Fraction]], v: Fraction) -> int:
    signs = []
    for poly in chain:
        val = _poly_eval(poly, v)
        if val != 0:
            signs.append(1 if val > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_bound(poly: list[int]) -> Fraction:
    lead = abs(poly[-1])
    m = max(abs(c) for c in poly[:-1]) if len(poly) > 1 else 0
    return Fraction(m, lead) + 1


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi:
        return lo
    fl = lo.numerator // lo.denominator  # floor
    if Fraction(fl) >= lo or Fraction(fl + 1) <= hi:
        # an integer lies in the interval
        k = fl if Fraction(fl) >= lo else fl + 1
        return Fraction(k)
    frac_lo = lo - fl
    frac_hi = hi - fl
    inner = _simplest_between(1 / frac_hi, 1 / frac_lo)
    return fl + 1 / inner


def _divisors_within(n: int, cap: int | None = None) -> list[int]:
    fac = _factorize_small(n)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots_univariate(poly: list[int]) -> list[Fraction]:
    """All rational roots (without multiplicity) of an integer polynomial,
    coefficients low to high."""
    poly = _strip(poly[:])
    if not poly:
        raise ValueError("zero polynomial")
    roots: list[Fraction] = []
    # strip zero roots
    shift = 0
    while poly[0] == 0:
        poly.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(poly) <= 1:
        return roots
    work = _primitive(poly)
    lead, trail = abs(work[-1]), abs(work[0])
    if lead <= DIVISOR_ENUMERATION_THRESHOLD and trail <= DIVISOR_ENUMERATION_THRESHOLD:
        for q in _divisors_within(lead):
            for p in _divisors_within(trail):
                if gcd(p, q) != 1:
                    continue
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(work, cand) == 0 and cand not in roots:
                        roots.append(cand)
        return sorted(roots)
    roots.extend(_isolated_rational_roots(work))
    return sorted(set(roots))


def _isolated_rational_roots(work: list[int]) -> list[Fraction]:
    sf = _square_free_part(work)
    if len(sf) <= 1:
        return []
    chain = _sturm_chain(sf)
    bound = _root_bound(sf)
    den_bound = abs(sf[-1])
    # bisect until each interval isolates at most one root, then refine
    intervals = [(-bound, bound)]
    isolated: list[tuple[Fraction, Fraction]] = []
    while intervals:
        lo, hi = intervals.pop()
        n = _sign_variations(chain, lo) - _sign_variations(chain, hi)
        if n <= 0:
            continue
        if n == 1:
            isolated.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _poly_eval(sf, mid) == 0:
            # rational midpoint is a root; split strictly around it, keeping
            # the new endpoints off the root set so Sturm counts stay valid
            isolated.append((mid, mid))
            eps = (hi - lo) / 4
            while _poly_eval(sf, mid - eps) == 0 or _poly_eval(sf, mid + eps) == 0:
                eps /= 2
            intervals.append((lo, mid - eps))
            intervals.append((mid + eps, hi))
        else:
            intervals.append((lo, mid))
            intervals.append((mid, hi))
    out = []
    target = Fraction(1, 2 * den_bound * den_bound)
    for lo, hi in isolated:
        if lo == hi:
            out.append(lo)
            continue
        # refine by bisection to below the reconstruction window
        while hi - lo > target:
            mid = (lo + hi) / 2
            vm = _poly_eval(sf, mid)
            if vm == 0:
                lo = hi = mid
                break
            if _poly_eval(sf, lo) * vm < 0:
                hi = mid
            else:
                lo = mid
        if lo == hi:
            out.append(lo)
            continue
        cand = _simplest_between(lo, hi)
        if cand.denominator <= den_bound and _poly_eval(sf, cand) == 0:
            out.append(cand)
        # otherwise: no rational with denominator <= lead fits the window,
        # so the isolated root is irrational
    return out


def rational_roots_sextic(p: BivariatePoly) -> list[tuple[int, int]]:
    """All primitive projective roots (x : y), canonical sign, of a homogeneous
    polynomial; complete, each root re-verified by exact evaluation."""
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined root set")
    pts: list[tuple[int, int]] = []
    if p.coeffs[0] == 0:
        pts.append((1, 0))
    # dehomogenize: coefficient of z^(deg-i) is coeffs[i]
    uni = list(reversed(p.coeffs))
    for z in rational_roots_univariate(uni):
        x, y = z.numerator, z.denominator
        pts.append((x, y))
    for x, y in pts:
        if p.evaluate(x, y) != 0:
            raise AssertionError(f"root verification failed at ({x}, {y})")
        if gcd(x, y) != 1:
            raise AssertionError(f"non-primitive root ({x}, {y})")
    return sorted(set(pts))


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


def sextic_fiber(h: BinaryCubicForm, curve: EllipticCurve) -> SexticFiber:
    A, B = short_model(curve)
    sp = j6_closed_form(h, A, B)
    return SexticFiber(poly=sp.poly, curve_label=curve.label, h=h)


def _candidates_for_curve(args) -> list[tuple[int, int, str, int]]:
    h, curve = args
    fiber = sextic_fiber(h, curve)
    out = []
    for x, y in rational_roots_sextic(fiber.poly):
        if h(x, y) == 0:
            continue
        out.append((x, y, curve.label, curve.conductor))
    return out


def solve(
    h: BinaryCubicForm,
    S: PrimeSet,
    db: CurveDatabase,
    include_trivial: bool = False,
    jobs: int = 1,
) -> SolutionSet:
    """Complete solution set of h(x,y) = +-(S-unit), conditional on database
    completeness up to the conductor bound.

    Curve enumeration always uses S widened by 2 and the discriminant primes;
    solutions are filtered against the caller's S.
    """
    delta = cubic_discriminant(h)
    if delta == 0:
        raise DegenerateFormError("cubic form has zero discriminant")
    nmax = conductor_bound(h, S)
    curves = curves_with_admissible_conductor(db, nmax)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_candidates_for_curve, ((h, c) for c in curves), chunksize=4))
    else:
        batches = [_candidates_for_curve((h, c)) for c in curves]

    best: dict[tuple[int, int], tuple[int, str]] = {}
    for batch in batches:
        for x, y, label, conductor in batch:
            x, y = _canonical_point(x, y)
            key = (x, y)
            wit = (conductor, label)
            if key not in best or wit < best[key]:
                best[key] = wit
    solutions = []
    for (x, y), (conductor, label) in best.items():
        if y == 0 and not include_trivial:
            continue
        value = h(x, y)
        su = is_s_unit(value, S)
        if su is None:
            continue
        sign, fac = su
        solutions.append(
            Solution(x=x, y=y, value=value, sign=sign, factorization=fac, curve_label=label, conductor=conductor)
        )
    if include_trivial and h(1, 0) != 0 and (1, 0) not in {s.point for s in solutions}:
        su = is_s_unit(h(1, 0), S)
        if su is not None:
            sign, fac = su
            solutions.append(Solution(1, 0, h(1, 0), sign, fac, None, None))
    solutions.sort(key=lambda s: (s.x, s.y))
    return SolutionSet(
        solutions=tuple(solutions),
        h=h,
        primes=S,
        nmax=nmax,
        db_max_conductor=db.max_conductor,
        curves_considered=len(curves),
    )


def _canonical_point(x: int, y: int) -> tuple[int, int]:
    if y < 0 or (y == 0 and x < 0):
        return (-x, -y)
    return (x, y)


def count_curves(db: CurveDatabase, nmax: int) -> int:
    """Number of admissible records for the bound (database insufficiency is an error)."""
    return len(curves_with_admissible_conductor(db, nmax))
