import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thuemahler import (
    BinaryCubicForm,
    BivariatePoly,
    DegenerateFormError,
    PrimeSet,
    conductor_bound,
    count_curves,
    is_s_unit,
    j6_closed_form,
    rational_roots_sextic,
    short_model,
    solve,
)
from thuemahler.solver import rational_roots_univariate

from conftest import assert_matches_golden, golden_table


class TestPrimeSet:
    def test_sorts_and_dedupes(self):
        assert PrimeSet((13, 2, 7, 2)).primes == (2, 7, 13)

    def test_rejects_composites(self):
        with pytest.raises(ValueError):
            PrimeSet((2, 9))

    def test_product(self):
        assert PrimeSet.of(2, 7, 11, 13).product == 2002


class TestConductorBound:
    def test_unit_equation(self):
        assert conductor_bound(BinaryCubicForm(0, 1, -1, 0), PrimeSet.of(2, 7, 11, 13)) == 256256

    def test_discriminant_prime_squared(self):
        assert conductor_bound(BinaryCubicForm(0, 1, 0, 7), PrimeSet.of(2, 3, 5, 7)) == 188160

    def test_discriminant_square(self):
        assert conductor_bound(BinaryCubicForm(1, -1, -4, -1), PrimeSet.of(2, 5, 13)) == 216320

    def test_three_dividing_discriminant_capped_at_fifth_power(self):
        # delta(x^3 + y^3) = -27
        assert conductor_bound(BinaryCubicForm(1, 0, 0, 1), PrimeSet.of(2, 3, 5)) == 2**8 * 3**5 * 5

    def test_discriminant_primes_added_outside_s(self):
        # delta = -28: 7 enters squared although S omits it
        assert conductor_bound(BinaryCubicForm(0, 1, 0, 7), PrimeSet.of(2,)) == 2**8 * 7**2

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateFormError):
            conductor_bound(BinaryCubicForm(0, 0, 0, 1), PrimeSet.of(2,))


class TestIsSUnit:
    def test_positive(self):
        assert is_s_unit(737280, PrimeSet.of(2, 3, 5)) == (1, {2: 14, 3: 2, 5: 1})

    def test_negative(self):
        assert is_s_unit(-182, PrimeSet.of(2, 7, 13)) == (-1, {2: 1, 7: 1, 13: 1})

    def test_not_smooth(self):
        assert is_s_unit(15, PrimeSet.of(2, 3)) is None

    def test_unit(self):
        assert is_s_unit(1, PrimeSet.of(2,)) == (1, {})
        assert is_s_unit(-1, PrimeSet.of(2,)) == (-1, {})

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            is_s_unit(0, PrimeSet.of(2,))


class TestRationalRoots:
    def test_pure_power(self):
        assert rational_roots_sextic(BivariatePoly(6, (1, 0, 0, 0, 0, 0, 0))) == [(0, 1)]

    def test_point_at_infinity(self):
        # y * x^5: roots (1:0) and (0:1)
        assert rational_roots_sextic(BivariatePoly(6, (0, 1, 0, 0, 0, 0, 0))) == [(0, 1), (1, 0)]

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            rational_roots_sextic(BivariatePoly(6, (0,) * 7))

    def test_small_factored_sextic(self):
        # (2x - y)(x + 3y)(x - y)(x^2 + 1y^2)(x + y) expanded
        factors = [(2, -1), (1, 3), (1, -1), (1, 1)]
        poly = BivariatePoly(2, (1, 0, 1))
        for a, b in factors:
            poly = poly * BivariatePoly(1, (a, b))
        roots = rational_roots_sextic(poly)
        assert roots == sorted([(1, 2), (-3, 1), (1, 1), (-1, 1)])

    def test_univariate_rational_root_theorem_path(self):
        # 6x^2 - 5x + 1 = (3x-1)(2x-1)
        assert rational_roots_univariate([1, -5, 6]) == [Fraction(1, 3), Fraction(1, 2)]

    def test_huge_coefficients_use_isolation(self):
        p1, q1 = 10**15 + 37, 10**14 + 31  # coprime large root p1/q1
        big = 10**16 + 61
        poly = BivariatePoly(1, (q1, -p1))
        poly = poly * BivariatePoly(2, (1, 0, big))
        poly = poly * BivariatePoly(2, (big, 1, 1))
        poly = poly * BivariatePoly(1, (1, 1))
        roots = rational_roots_sextic(poly)
        assert roots == sorted([(p1, q1), (-1, 1)])

    def test_repeated_roots_reported_once(self):
        poly = BivariatePoly(1, (1, -2)) ** 3 * BivariatePoly(1, (3, 1)) ** 3
        assert rational_roots_sextic(poly) == [(-1, 3), (2, 1)]

    @given(
        st.lists(
            st.tuples(st.integers(-30, 30), st.integers(1, 30)),
            min_size=1,
            max_size=3,
        ),
        st.integers(1, 50),
    )
    @settings(max_examples=60, deadline=None)
    def test_recovers_constructed_roots(self, pairs, scale):
        from math import gcd

        pts = []
        poly = BivariatePoly(0, (scale,))
        for p, q in pairs:
            g = gcd(abs(p), q)
            pts.append((p // g, q // g))
            poly = poly * BivariatePoly(1, (q // g, -(p // g)))
        # pad with an irreducible quadratic factor to reach even degree
        while poly.degree < 6:
            if poly.degree <= 4:
                poly = poly * BivariatePoly(2, (1, 1, 1))
            else:
                poly = poly * BivariatePoly(1, (1, 0))
                pts.append((0, 1))
        canonical = set()
        for x, y in pts:
            canonical.add((x, y) if y > 0 or (y == 0 and x > 0) else (-x, -y))
        assert rational_roots_sextic(poly) == sorted(canonical)


class TestFiberRoots:
    def test_roots_of_printed_factorisation(self, db3840, h_unit):
        curve = db3840.by_label("960e6")
        poly = j6_closed_form(h_unit, *short_model(curve)).poly
        roots = rational_roots_sextic(poly)
        assert set(roots) == {(128, 3), (-125, 3), (128, 125), (-3, 125), (125, 128), (3, 128)}

    def test_irreducible_fiber_has_no_roots(self, db3840, h_unit):
        curve = db3840.by_label("960e5")
        poly = j6_closed_form(h_unit, *short_model(curve)).poly
        assert rational_roots_sextic(poly) == []


class TestSolve:
    def test_unit_equation_two_primes(self, db768, h_unit):
        result = solve(h_unit, PrimeSet.of(2, 3), db768)
        assert len(result) == 21

    def test_only_two(self, db768, h_unit):
        result = solve(h_unit, PrimeSet.of(2,), db768)
        assert result.points() == [(-1, 1), (1, 2), (2, 1)]
        labels = {s.curve_label for s in result.solutions}
        assert labels == {"256c2"}

    def test_monotone_in_s(self, db768, h_unit):
        small = solve(h_unit, PrimeSet.of(2,), db768)
        large = solve(h_unit, PrimeSet.of(2, 3), db768)
        assert set(small.points()) <= set(large.points())

    def test_deterministic_across_runs_and_jobs(self, db768, h_unit):
        a = solve(h_unit, PrimeSet.of(2, 3), db768)
        b = solve(h_unit, PrimeSet.of(2, 3), db768)
        assert a.solutions == b.solutions
        c = solve(h_unit, PrimeSet.of(2, 3), db768, jobs=2)
        assert a.solutions == c.solutions

    def test_solutions_reverified(self, db768, h_unit):
        from math import gcd

        result = solve(h_unit, PrimeSet.of(2, 3), db768)
        for s in result.solutions:
            assert gcd(s.x, s.y) == 1
            assert s.y > 0
            assert h_unit(s.x, s.y) == s.value != 0
            assert is_s_unit(s.value, result.primes) == (s.sign, s.factorization)

    def test_trivial_point_flag(self, db216320, h_disc169):
        S = PrimeSet.of(2, 5, 13)
        without = solve(h_disc169, S, db216320)
        with_flag = solve(h_disc169, S, db216320, include_trivial=True)
        assert (1, 0) not in set(without.points())
        assert (1, 0) in set(with_flag.points())
        assert len(with_flag) == len(without) + 1

    def test_degenerate_form_rejected(self, db768):
        with pytest.raises(DegenerateFormError):
            solve(BinaryCubicForm(0, 0, 0, 1), PrimeSet.of(2,), db768)

    def test_insufficient_database(self, db768, h_unit):
        from thuemahler import DatabaseInsufficientError

        with pytest.raises(DatabaseInsufficientError):
            solve(h_unit, PrimeSet.of(2, 3, 431), db768)

    def test_run_metadata(self, db768, h_unit):
        result = solve(h_unit, PrimeSet.of(2, 3), db768)
        assert result.nmax == 768
        assert result.db_max_conductor == 768
        assert result.curves_considered == len(db768)

    def test_subset_of_table_two(self, db768, h_unit):
        rows = [
            r
            for r in golden_table(2)["solutions"]
            if all(p in (2, 3) for p in map(int, r["factorization"]))
        ]
        result = solve(h_unit, PrimeSet.of(2, 3), db768)
        assert_matches_golden(result, rows)


class TestCountCurves:
    def test_counts_fixture(self, db256256):
        assert count_curves(db256256, 256256) == len(db256256)

    def test_insufficient(self, db768):
        from thuemahler import DatabaseInsufficientError

        with pytest.raises(DatabaseInsufficientError):
            count_curves(db768, 10**6)

    def test_bad_bound(self, db768):
        with pytest.raises(ValueError):
            count_curves(db768, -5)
