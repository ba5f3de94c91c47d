"""Minimal Weierstrass models and conductors, for fixture tooling and validation.

Not part of the public solving surface: the solver only consumes curve records.
This module turns exact (c4, c6) invariants into the reduced globally minimal
model (Laska-Kraus-Connell) and computes conductor exponents with Tate's
algorithm, which is how the committed database fixtures are generated and
cross-checked against their stated conductors.
"""
from fractions import Fraction


from .forms import weierstrass_c_invariants as c_invariants
from .forms import weierstrass_b_invariants as b_invariants


INF = 10**9


def vp(n, p):
    if n == 0:
        return INF
    n = abs(int(n))
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorize(n):
    n = abs(int(n))
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# valid b2 values for a reduced model (a1, a3 in {0,1}, a2 in {-1,0,1}), keyed
# by the residue of -c6 mod 12; other residues admit no integral model
_B2_BY_RESIDUE = {0: 0, 1: 1, 4: 4, 5: 5, 8: -4, 9: -3}


def model_from_c4c6(c4, c6):
    """Reduced integral model [a1,a2,a3,a4,a6] with the given invariants, or None."""
    b2 = _B2_BY_RESIDUE.get((-c6) % 12)
    if b2 is None:
        return None
    if (b2 * b2 - c4) % 24:
        return None
    b4 = (b2 * b2 - c4) // 24
    num = -(b2**3) + 36 * b2 * b4 - c6
    if num % 216:
        return None
    b6 = num // 216
    if b6 % 4 not in (0, 1):
        return None
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    a6 = (b6 - a3) // 4
    if (b4 - a1 * a3) % 2:
        return None
    a4 = (b4 - a1 * a3) // 2
    model = (a1, a2, a3, a4, a6)
    cc4, cc6, _ = c_invariants(*model)
    if (cc4, cc6) != (c4, c6):
        return None
    return model


def minimal_model_from_c4c6(c4q, c6q):
    """Reduced globally minimal model for the Q-isomorphism class of curves whose
    invariants are (c4q, c6q) up to (lambda^4, lambda^6) scaling."""
    c4q, c6q = Fraction(c4q), Fraction(c6q)
    # clear denominators
    dens = factorize(c4q.denominator)
    for p, e in factorize(c6q.denominator).items():
        dens[p] = max(dens.get(p, 0), 0)
    u = 1
    for p in set(factorize(c4q.denominator)) | set(factorize(c6q.denominator)):
        e = max(
            -(-vp(c4q.denominator, p) // 4),
            -(-vp(c6q.denominator, p) // 6),
        )
        u *= p**e
    c4 = int(c4q * u**4)
    c6 = int(c6q * u**6)
    # ensure 1728 | c4^3 - c6^2
    for p in (2, 3):
        while (c4**3 - c6**2) % 1728 and vp(c4**3 - c6**2, p) < vp(1728, p):
            c4 *= p**4
            c6 *= p**6
    assert (c4**3 - c6**2) % 1728 == 0
    disc = (c4**3 - c6**2) // 1728
    assert disc != 0
    # descale prime by prime as far as an integral model exists
    primes = set(factorize(disc)) | (set(factorize(c4)) if c4 else set())
    for p in sorted(primes):
        while True:
            if min(vp(c4, p) // 4, vp(c6, p) // 6, vp(disc, p) // 12) < 1:
                break
            nc4, nc6 = c4 // p**4, c6 // p**6
            if model_from_c4c6(nc4, nc6) is None:
                break
            c4, c6 = nc4, nc6
            disc = (c4**3 - c6**2) // 1728
    m = model_from_c4c6(c4, c6)
    assert m is not None, (c4, c6)
    return m


def transform(ai, r, s, t, u=1):
    a1, a2, a3, a4, a6 = ai
    A1 = Fraction(a1 + 2 * s, u)
    A2 = Fraction(a2 - s * a1 + 3 * r - s * s, u**2)
    A3 = Fraction(a3 + r * a1 + 2 * t, u**3)
    A4 = Fraction(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, u**4)
    A6 = Fraction(a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1, u**6)
    out = (A1, A2, A3, A4, A6)
    assert all(x.denominator == 1 for x in out), (ai, r, s, t, u)
    return tuple(int(x) for x in out)


def _root_multiplicities(coeffs, p):
    """coeffs low->high over Z; roots of the reduction mod p with multiplicities."""
    roots = {}
    base = [c % p for c in coeffs]
    for x in range(p):
        cs = list(base)
        mult = 0
        while True:
            if all(c == 0 for c in cs):
                break
            val = 0
            for c in reversed(cs):
                val = (val * x + c) % p
            if val:
                break
            # synthetic division by (X - x)
            quot = []
            acc = 0
            for c in reversed(cs):
                acc = (acc * x + c) % p
                quot.append(acc)
            rem = quot.pop()
            assert rem == 0
            cs = list(reversed(quot))
            mult += 1
        if mult:
            roots[x] = mult
    return roots


def _quad_separable(quad, p):
    """quad = [c, b, a] low->high, leading a nonzero mod p; distinct roots in closure."""
    c, b, a = quad
    if p == 2:
        return b % 2 == 1
    return (b * b - 4 * a * c) % p != 0


def _cubic_separable(P, p):
    d, c, b, a = P
    disc = 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d
    return disc % p != 0


_PAPADOPOULOS = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}


def tate(ai, p):
    """Tate's algorithm at p for a model minimal at p.

    Returns (conductor exponent, Kodaira symbol).  For p >= 5 there is no wild
    ramification, so additive reduction always has exponent 2 and the symbol
    follows from the valuations alone.
    """
    ai = tuple(int(x) for x in ai)
    while True:
        c4, c6, disc = c_invariants(*ai)
        n = vp(disc, p)
        if n == 0:
            return 0, "I0"
        if vp(c4, p) == 0:
            return 1, f"I{n}"
        if p >= 5:
            symbol = _PAPADOPOULOS.get(n, f"I{n - 6}*" if n > 6 else "?")
            return 2, symbol
        # move the singular point to the origin: p | a3', a4', a6'
        moved = None
        for r in range(p):
            for t in range(p):
                cand = transform(ai, r, 0, t)
                if all(vp(cand[i], p) >= 1 for i in (2, 3, 4)):
                    moved = cand
                    break
            if moved:
                break
        assert moved is not None, (ai, p)
        ai = moved
        a1, a2, a3, a4, a6 = ai
        if vp(a6, p) < 2:
            return n, "II"
        _, _, _, b8 = b_invariants(*ai)
        if vp(b8, p) < 3:
            return n - 1, "III"
        _, _, b6, _ = b_invariants(*ai)
        if vp(b6, p) < 3:
            return n - 2, "IV"
        # normalize: p|a1,a2 ; p^2|a3,a4 ; p^3|a6
        norm = None
        for s in range(p):
            for r in range(0, p * p, p):
                for t in range(0, p * p, p):
                    cand = transform(ai, r, s, t)
                    if (
                        vp(cand[0], p) >= 1
                        and vp(cand[1], p) >= 1
                        and vp(cand[2], p) >= 2
                        and vp(cand[3], p) >= 2
                        and vp(cand[4], p) >= 3
                    ):
                        norm = cand
                        break
                if norm:
                    break
            if norm:
                break
        assert norm is not None, ("normalize", ai, p)
        ai = norm
        a1, a2, a3, a4, a6 = ai
        P = [a6 // p**3, a4 // p**2, a2 // p, 1]
        if _cubic_separable(P, p):
            return n - 4, "I0*"
        roots = _root_multiplicities(P, p)
        maxmult = max(roots.values())
        if maxmult == 2:
            alpha = next(x for x, m in roots.items() if m == 2)
            ai = transform(ai, p * alpha, 0, 0)
            a1, a2, a3, a4, a6 = ai
            assert vp(a2, p) == 1 and vp(a4, p) >= 3 and vp(a6, p) >= 4, (ai, p)
            m = 1
            while True:
                k = (m + 1) // 2
                if m % 2 == 1:
                    quad = [-(a6 // p ** (2 * k + 2)), a3 // p ** (k + 1), 1]
                    if _quad_separable(quad, p):
                        return n - 4 - m, f"I{m}*"
                    rr = _root_multiplicities(quad, p)
                    beta = next(x for x, mm in rr.items() if mm == 2)
                    ai = transform(ai, 0, 0, beta * p ** (k + 1))
                else:
                    quad = [a6 // p ** (2 * k + 3), a4 // p ** (k + 2), a2 // p]
                    if _quad_separable(quad, p):
                        return n - 4 - m, f"I{m}*"
                    rr = _root_multiplicities(quad, p)
                    delta = next(x for x, mm in rr.items() if mm == 2)
                    ai = transform(ai, delta * p ** (k + 1), 0, 0)
                a1, a2, a3, a4, a6 = ai
                m += 1
        # triple root
        alpha = next(x for x, m in roots.items() if m == 3)
        ai = transform(ai, p * alpha, 0, 0)
        a1, a2, a3, a4, a6 = ai
        assert vp(a2, p) >= 2 and vp(a4, p) >= 3 and vp(a6, p) >= 4
        quad = [-(a6 // p**4), a3 // p**2, 1]
        if _quad_separable(quad, p):
            return n - 6, "IV*"
        rr = _root_multiplicities(quad, p)
        beta = next(x for x, mm in rr.items() if mm == 2)
        ai = transform(ai, 0, 0, beta * p**2)
        a1, a2, a3, a4, a6 = ai
        if vp(a4, p) < 4:
            return n - 7, "III*"
        if vp(a6, p) < 6:
            return n - 8, "II*"
        # not minimal at p: descale and rerun
        ai = (
            ai[0] // p,
            ai[1] // p**2,
            ai[2] // p**3,
            ai[3] // p**4,
            ai[4] // p**6,
        )


def conductor(ai, primes=None):
    """Conductor of the integral model ai. If primes is given it must contain all
    bad primes; returns None if disc has a prime factor outside it."""
    _, _, disc = c_invariants(*ai)
    assert disc != 0
    if primes is None:
        bad = sorted(factorize(disc))
    else:
        n = abs(disc)
        bad = []
        for p in sorted(set(primes)):
            if n % p == 0:
                bad.append(p)
                while n % p == 0:
                    n //= p
        if n != 1:
            return None
    N = 1
    for p in bad:
        f, _ = tate(ai, p)
        N *= p**f
    return N
