import io

import pytest

from thuemahler import (
    CurveParseError,
    DatabaseInsufficientError,
    EllipticCurve,
    curves_with_admissible_conductor,
    lambda_check,
    parse_allcurves,
    short_model,
    weierstrass_c_invariants,
)

SAMPLE = """\
# sample records
11 a 1 [0,-1,1,-10,-20] 0 5
11 a 2 [0,-1,1,-7820,-263580] 0 1
14 a 1 [1,0,1,4,-6] 0 6
960 e 5 [0,-1,0,-18465,971937]
960 e 6 [0, -1, 0, -21345, -1190943]
"""


class TestParsing:
    def test_known_line(self):
        db = parse_allcurves(io.StringIO("11 a 1 [0,-1,1,-10,-20] 0 5"))
        (rec,) = db.records
        assert rec.label == "11a1"
        assert rec.conductor == 11
        assert rec.a_invariants == (0, -1, 1, -10, -20)
        assert rec.rank == 0 and rec.torsion == 5

    def test_empty_input(self):
        db = parse_allcurves(io.StringIO(""))
        assert len(db) == 0
        assert db.max_conductor == 0

    def test_sample_file(self):
        db = parse_allcurves(io.StringIO(SAMPLE))
        assert len(db) == 5
        assert db.max_conductor == 960
        assert db.by_label("960e6").a_invariants == (0, -1, 0, -21345, -1190943)
        assert [r.label for r in db.by_conductor(11)] == ["11a1", "11a2"]

    def test_optional_rank_torsion(self):
        db = parse_allcurves(io.StringIO("960 e 5 [0,-1,0,-18465,971937]"))
        assert db.records[0].rank is None
        assert db.records[0].torsion is None

    def test_spaces_after_commas_tolerated(self):
        db = parse_allcurves(io.StringIO("11 a 1 [0, -1, 1, -10, -20] 0 5"))
        assert db.records[0].a_invariants == (0, -1, 1, -10, -20)

    def test_malformed_line_reports_number(self):
        text = "11 a 1 [0,-1,1,-10,-20] 0 5\n11 a 2 [0,-1,1,oops] 0 1"
        with pytest.raises(CurveParseError) as err:
            parse_allcurves(io.StringIO(text))
        assert err.value.lineno == 2

    def test_singular_record_rejected(self):
        with pytest.raises(CurveParseError):
            parse_allcurves(io.StringIO("1 a 1 [0,0,0,0,0] 0 1"))

    def test_complete_to_directive(self):
        db = parse_allcurves(io.StringIO("# complete_to: 5000\n11 a 1 [0,-1,1,-10,-20] 0 5"))
        assert db.max_conductor == 5000

    def test_explicit_bound_overrides(self):
        db = parse_allcurves(io.StringIO("11 a 1 [0,-1,1,-10,-20] 0 5"), max_conductor=768)
        assert db.max_conductor == 768

    def test_round_trip(self):
        db = parse_allcurves(io.StringIO(SAMPLE))
        again = parse_allcurves(io.StringIO(db.dump()))
        assert again.records == db.records
        assert again.max_conductor == db.max_conductor


class TestEllipticCurve:
    def test_label_conductor_mismatch(self):
        with pytest.raises(ValueError):
            EllipticCurve("11a1", 12, 0, -1, 1, -10, -20)

    def test_c_invariants(self):
        rec = EllipticCurve("11a1", 11, 0, -1, 1, -10, -20)
        assert (rec.c4, rec.c6) == (496, 20008)
        assert rec.discriminant == -161051


class TestShortModel:
    def test_known_curve(self):
        rec = EllipticCurve("11a1", 11, 0, -1, 1, -10, -20)
        assert short_model(rec) == (-27 * 496, -54 * 20008)
        assert short_model(rec) == (-13392, -1080432)

    def test_already_short_rescales_by_square(self):
        rec = EllipticCurve("64a1", 64, 0, 0, 0, 5, 3)
        A, B = short_model(rec)
        assert (A, B) == (1296 * 5, 46656 * 3)

    def test_invariants_scale_by_six_powers(self):
        rec = EllipticCurve("11a1", 11, 0, -1, 1, -10, -20)
        A, B = short_model(rec)
        c4, c6, _ = weierstrass_c_invariants(0, 0, 0, A, B)
        assert c4 == 6**4 * rec.c4
        assert c6 == 6**6 * rec.c6

    def test_preserves_j_invariant(self):
        rec = EllipticCurve("960e6", 960, 0, -1, 0, -21345, -1190943)
        A, B = short_model(rec)
        c4, c6, disc = weierstrass_c_invariants(0, 0, 0, A, B)
        from fractions import Fraction

        assert Fraction(c4**3, c4**3 - c6**2) == Fraction(rec.c4**3, rec.c4**3 - rec.c6**2)

    def test_960e6_matches_printed_rational_model(self):
        # y^2 = x^3 - (64036/3) x - 32347568/27 is the same curve
        from fractions import Fraction

        rec = EllipticCurve("960e6", 960, 0, -1, 0, -21345, -1190943)
        c4r, c6r, _ = weierstrass_c_invariants(
            0, 0, 0, Fraction(-64036, 3), Fraction(-32347568, 27)
        )
        assert (c4r, c6r) == (rec.c4, rec.c6)


class TestAdmissibleConductors:
    def test_divisibility_filter(self):
        db = parse_allcurves(io.StringIO(SAMPLE), max_conductor=1000)
        got = curves_with_admissible_conductor(db, 960)
        assert [r.label for r in got] == ["960e5", "960e6"]
        brute = sorted(
            (r for r in db.records if 960 % r.conductor == 0),
            key=lambda r: (r.conductor, r.label),
        )
        assert got == brute

    def test_insufficient_database(self):
        db = parse_allcurves(io.StringIO(SAMPLE))
        with pytest.raises(DatabaseInsufficientError) as err:
            curves_with_admissible_conductor(db, 961 * 2)
        assert err.value.needed == 1922
        assert err.value.available == 960

    def test_rejects_nonpositive_bound(self):
        db = parse_allcurves(io.StringIO(SAMPLE))
        with pytest.raises(ValueError):
            curves_with_admissible_conductor(db, 0)
