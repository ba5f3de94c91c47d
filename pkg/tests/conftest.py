import json
from pathlib import Path

import pytest

from thuemahler import BinaryCubicForm, PrimeSet, load_allcurves

DATA = Path(__file__).parent / "data"


def golden_table(n: int) -> dict:
    return json.loads((DATA / "golden" / f"table{n:02d}.json").read_text())


def fixture_db(bound: int):
    return load_allcurves(DATA / "curves" / f"allcurves_{bound}.txt")


@pytest.fixture(scope="session")
def db768():
    return fixture_db(768)


@pytest.fixture(scope="session")
def db3840():
    return fixture_db(3840)


@pytest.fixture(scope="session")
def db256256():
    return fixture_db(256256)


@pytest.fixture(scope="session")
def db188160():
    return fixture_db(188160)


@pytest.fixture(scope="session")
def db216320():
    return fixture_db(216320)


@pytest.fixture(scope="session")
def h_unit():
    return BinaryCubicForm(0, 1, -1, 0)


@pytest.fixture(scope="session")
def h_rn7():
    return BinaryCubicForm(0, 1, 0, 7)


@pytest.fixture(scope="session")
def h_disc169():
    return BinaryCubicForm(1, -1, -4, -1)


@pytest.fixture(scope="session")
def table_runs(db256256, db188160, db216320, db768, h_unit, h_rn7, h_disc169):
    """Solver results for the four benchmark runs, shared across tests."""
    from thuemahler import solve

    return {
        "t768": solve(h_unit, PrimeSet.of(2, 3), db768),
        "t1": solve(h_unit, PrimeSet.of(2, 7, 11, 13), db256256),
        "t4": solve(h_rn7, PrimeSet.of(2, 3, 5, 7), db188160),
        "t13": solve(h_disc169, PrimeSet.of(2, 5, 13), db216320),
    }


def assert_matches_golden(result, rows, check_labels=True):
    """Compare a SolutionSet against golden rows (x, y, value, factorization, label)."""
    got = {(s.x, s.y): s for s in result.solutions}
    want = {(r["x"], r["y"]): r for r in rows}
    assert sorted(got) == sorted(want), (
        f"point sets differ: extra={sorted(set(got) - set(want))} "
        f"missing={sorted(set(want) - set(got))}"
    )
    for key, row in want.items():
        sol = got[key]
        if "value" in row:
            assert sol.value == row["value"], (key, sol.value, row["value"])
        if "sign" in row:
            assert sol.sign == row["sign"]
            assert sol.factorization == {int(p): e for p, e in row["factorization"].items()}
        if check_labels and "label" in row:
            assert sol.curve_label == row["label"], (key, sol.curve_label, row["label"])
