import json
from pathlib import Path

import pytest

from thuemahler.cli import format_factorization, main

DATA = Path(__file__).parent / "data"
DB768 = str(DATA / "curves" / "allcurves_768.txt")
DB3840 = str(DATA / "curves" / "allcurves_3840.txt")
DB256256 = str(DATA / "curves" / "allcurves_256256.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFormatFactorization:
    def test_rendering(self):
        assert format_factorization(1, {2: 1, 7: 1, 13: 1}) == "2·7·13"
        assert format_factorization(-1, {2: 3, 7: 1}) == "-1·2^3·7"
        assert format_factorization(1, {}) == "1"
        assert format_factorization(-1, {}) == "-1"


class TestSolveCommand:
    def test_markdown_output(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,3", "--db", DB768
        )
        assert code == 0
        assert "21 solutions" in out
        assert "| (-8, 1) | 72 | 2^3·3^2 | 192c3 | 2^6·3 |" in out

    def test_known_row_table_one(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,7,11,13", "--db", DB256256
        )
        assert code == 0
        assert "| (-13, 1) | 182 | 2·7·13 | 5824b2 | 2^6·7·13 |" in out

    def test_json_and_md_agree(self, capsys):
        code, md, _ = run(
            capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,3", "--db", DB768
        )
        code2, js, _ = run(
            capsys,
            "solve", "--cubic", "0,1,-1,0", "--primes", "2,3", "--db", DB768,
            "--format", "json",
        )
        assert code == code2 == 0
        payload = json.loads(js)
        assert payload["nmax"] == "768"
        md_rows = [
            line
            for line in md.splitlines()
            if line.startswith("| (") and not line.startswith("| (x, y)")
        ]
        assert len(md_rows) == len(payload["solutions"]) == 21
        md_points = {r.split("|")[1].strip() for r in md_rows}
        json_points = {f"({s['x']}, {s['y']})" for s in payload["solutions"]}
        assert md_points == json_points

    def test_csv_agrees(self, capsys):
        _, csv, _ = run(
            capsys,
            "solve", "--cubic", "0,1,-1,0", "--primes", "2,3", "--db", DB768,
            "--format", "csv",
        )
        rows = csv.strip().splitlines()
        assert rows[0] == "x,y,value,sign,factorization,curve,conductor_factorization"
        assert len(rows) == 22

    def test_degenerate_cubic_exit_3(self, capsys):
        code, _, err = run(
            capsys, "solve", "--cubic", "0,0,0,1", "--primes", "2", "--db", DB768
        )
        assert code == 3
        assert "discriminant" in err or "degenerate" in err

    def test_insufficient_database_exit_4(self, capsys):
        code, _, err = run(
            capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,3,431", "--db", DB768
        )
        assert code == 4
        assert "database insufficient" in err

    def test_missing_database_exit_2(self, capsys, monkeypatch):
        monkeypatch.delenv("THUEMAHLER_DB", raising=False)
        code, _, err = run(capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,3")
        assert code == 2
        assert "THUEMAHLER_DB" in err

    def test_env_var_database(self, capsys, monkeypatch):
        monkeypatch.setenv("THUEMAHLER_DB", DB768)
        code, out, _ = run(capsys, "solve", "--cubic", "0,1,-1,0", "--primes", "2,3")
        assert code == 0
        assert "21 solutions" in out

    def test_bad_flags_exit_2(self, capsys):
        code, _, _ = run(capsys, "solve", "--cubic", "0,1,-1,0")
        assert code == 2


class TestOracleCommand:
    def test_three_rows(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--cubic", "0,1,-1,0", "--primes", "2", "--height", "10"
        )
        assert code == 0
        assert "oracle (complete within height 10)" in out
        assert out.count("| (") == 3

    def test_zero_height_usage_error(self, capsys):
        code, _, _ = run(
            capsys, "oracle", "--cubic", "0,1,-1,0", "--primes", "2", "--height", "0"
        )
        assert code == 2

    def test_five_rows_height_100(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--cubic", "0,1,0,-7", "--primes", "2,5,7,11", "--height", "100"
        )
        assert code == 0
        assert out.count("| (") == 5


class TestStatsCommand:
    def test_sweep_with_insufficient_rows(self, capsys):
        code, out, _ = run(
            capsys,
            "stats", "--cubic", "0,1,-1,0", "--base-primes", "2",
            "--vary-prime-range", "3..7", "--db", DB768,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "p,count,m"
        assert "3,21,3" in lines
        assert "5,db-insufficient," in lines
        assert "7,db-insufficient," in lines
        # 4 and 6 skipped: not prime

    def test_varying_the_smallest_prime(self, capsys):
        code, out, _ = run(
            capsys,
            "stats", "--cubic", "0,1,-1,0", "--base-primes", "3",
            "--vary-prime-range", "2..2", "--db", DB768,
        )
        assert code == 0
        assert "2,21,3" in out

    def test_m_column_blank_when_not_congruent(self, capsys):
        db = str(DATA / "curves" / "allcurves_216320.txt")
        code, out, _ = run(
            capsys,
            "stats", "--cubic", "1,-1,-4,-1", "--base-primes", "2,5",
            "--vary-prime-range", "13..13", "--db", db,
        )
        assert code == 0
        assert "13,35," in out


class TestJ6Command:
    def test_symbolic_template(self, capsys):
        code, out, _ = run(capsys, "j6", "--cubic", "0,1,-1,0")
        assert code == 0
        assert "C=4 D=27" in out

    def test_no_rational_roots(self, capsys):
        code, out, _ = run(
            capsys, "j6", "--cubic", "0,1,-1,0", "--curve", "[0,-1,0,-18465,971937]"
        )
        assert code == 0
        assert "no rational roots" in out

    def test_six_linear_factors(self, capsys):
        code, out, _ = run(
            capsys, "j6", "--cubic", "0,1,-1,0", "--curve", "[0,-1,0,-21345,-1190943]"
        )
        assert code == 0
        assert "factors into linear terms" in out
        assert "(3:128)" in out or "(3, 128)" in out

    def test_curve_label_lookup(self, capsys):
        code, out, _ = run(
            capsys, "j6", "--cubic", "0,1,-1,0", "--curve-label", "960e6", "--db", DB3840
        )
        assert code == 0
        assert "960e6" in out
        assert "factors into linear terms" in out

    def test_unknown_label(self, capsys):
        code, _, _ = run(
            capsys, "j6", "--cubic", "0,1,-1,0", "--curve-label", "11a1", "--db", DB768
        )
        assert code == 2
