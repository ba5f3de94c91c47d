"""Independent brute-force search over a coordinate box, used as ground truth.

Enumerates y from 1 to H and x from -H to H, strips the allowed primes from
h(x, y) by exact division, and keeps pairs whose value reduces to +-1.  The
inner loop is vectorised with 64-bit integers when the value bound permits,
with a pure-Python fallback that is always exact.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from .forms import BinaryCubicForm
from .solver import PrimeSet, Solution, SolutionSet, is_s_unit

_INT64_SAFE = 2**62


def _value_bound(h: BinaryCubicForm, H: int) -> int:
    return sum(abs(c) for c in h.coefficients) * H**3


def brute_force(
    h: BinaryCubicForm, S: PrimeSet, H: int, include_trivial: bool = False
) -> SolutionSet:
    """All canonical coprime (x, y) with max(|x|, |y|) <= H and h(x, y) an S-unit.

    Sound and complete within the box.
    """
    if H < 1:
        raise ValueError("height bound must be at least 1")
    if _value_bound(h, H) < _INT64_SAFE:
        pairs = _scan_numpy(h, S, H)
    else:
        pairs = _scan_python(h, S, H)
    solutions = []
    for x, y in pairs:
        value = h(x, y)
        su = is_s_unit(value, S)
        if su is None:
            raise AssertionError(f"scan produced non-S-unit at ({x}, {y})")
        sign, fac = su
        solutions.append(Solution(x=x, y=y, value=value, sign=sign, factorization=fac))
    if include_trivial and h(1, 0) != 0:
        su = is_s_unit(h(1, 0), S)
        if su is not None:
            sign, fac = su
            solutions.append(Solution(1, 0, h(1, 0), sign, fac))
    solutions.sort(key=lambda s: (s.x, s.y))
    return SolutionSet(solutions=tuple(solutions), h=h, primes=S)


def _scan_numpy(h: BinaryCubicForm, S: PrimeSet, H: int) -> list[tuple[int, int]]:
    a, b, c, d = h.coefficients
    xs = np.arange(-H, H + 1, dtype=np.int64)
    x2 = xs * xs
    x3 = x2 * xs
    out: list[tuple[int, int]] = []
    for y in range(1, H + 1):
        v = a * x3 + (b * y) * x2 + (c * y * y) * xs + d * y**3
        v = np.abs(v)
        active = v > 0
        for p in S:
            idx = np.nonzero(active & (v % p == 0))[0]
            while idx.size:
                v[idx] //= p
                idx = idx[v[idx] % p == 0]
        hits = np.nonzero(active & (v == 1))[0]
        for i in hits.tolist():
            x = int(xs[i])
            if gcd(x, y) == 1:
                out.append((x, y))
    return out


def _scan_python(h: BinaryCubicForm, S: PrimeSet, H: int) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for y in range(1, H + 1):
        for x in range(-H, H + 1):
            if gcd(x, y) != 1:
                continue
            v = abs(h(x, y))
            if v == 0:
                continue
            for p in S:
                while v % p == 0:
                    v //= p
            if v == 1:
                out.append((x, y))
    return out
