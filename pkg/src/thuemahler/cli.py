"""Command-line surface: solve, oracle, stats, j6.

Exit codes are a stable contract for scripting: 0 success, 2 usage error,
3 degenerate input, 4 insufficient database.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveDatabase, DatabaseInsufficientError, load_allcurves, short_model
from .descent import c_coefficients, d_coefficients, j6_closed_form
from .forms import BinaryCubicForm
from .oracle import brute_force
from .solver import (
    DegenerateFormError,
    PrimeSet,
    SolutionSet,
    _factorize_small,
    rational_roots_sextic,
    solve,
)

DB_ENV_VAR = "THUEMAHLER_DB"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_DB_INSUFFICIENT = 4


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    """Everything one invocation produced, re-derivable from the solution set."""

    result: SolutionSet
    mode: str
    db_path: str | None = None
    db_checksum: str | None = None
    elapsed: float = 0.0
    height: int | None = None

    def solution_rows(self):
        rows = []
        for s in self.result.solutions:
            row = {
                "x": s.x,
                "y": s.y,
                "value": s.value,
                "sign": s.sign,
                "factorization": s.factorization,
                "curve": s.curve_label,
                "conductor_factorization": _factorize_small(s.conductor) if s.conductor else None,
            }
            rows.append(row)
        return rows

    def to_json(self) -> str:
        payload = {
            "input": {
                "cubic": list(self.result.h.coefficients),
                "primes": list(self.result.primes),
            },
            "mode": self.mode,
            "nmax": str(self.result.nmax) if self.result.nmax is not None else None,
            "curves_considered": self.result.curves_considered,
            "database": {
                "path": self.db_path,
                "max_conductor": self.result.db_max_conductor,
                "checksum": self.db_checksum,
            },
            "height": self.height,
            "elapsed_seconds": round(self.elapsed, 3),
            "solutions": [
                {
                    "x": str(r["x"]),
                    "y": str(r["y"]),
                    "value": str(r["value"]),
                    "sign": r["sign"],
                    "factorization": {str(p): e for p, e in sorted(r["factorization"].items())},
                    "curve": r["curve"],
                    "conductor_factorization": (
                        {str(p): e for p, e in sorted(r["conductor_factorization"].items())}
                        if r["conductor_factorization"]
                        else None
                    ),
                }
                for r in self.solution_rows()
            ],
        }
        return json.dumps(payload, indent=1)

    def to_markdown(self) -> str:
        head = [
            f"cubic: {self.result.h}   primes: {{{', '.join(map(str, self.result.primes))}}}",
        ]
        if self.mode == "oracle":
            head.append(f"oracle (complete within height {self.height})")
        else:
            head.append(
                f"conductor bound {self.result.nmax}, curves considered {self.result.curves_considered}"
            )
        head.append(f"{len(self.result)} solutions")
        lines = head + [
            "",
            "| (x, y) | h(x, y) | factorization | curve | conductor |",
            "|---|---|---|---|---|",
        ]
        for r in self.solution_rows():
            cond = (
                format_factorization(1, r["conductor_factorization"])
                if r["conductor_factorization"]
                else ""
            )
            lines.append(
                "| ({}, {}) | {} | {} | {} | {} |".format(
                    r["x"],
                    r["y"],
                    r["value"],
                    format_factorization(r["sign"], r["factorization"]),
                    r["curve"] or "",
                    cond,
                )
            )
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = ["x,y,value,sign,factorization,curve,conductor_factorization"]
        for r in self.solution_rows():
            cond = (
                format_factorization(1, r["conductor_factorization"])
                if r["conductor_factorization"]
                else ""
            )
            lines.append(
                f"{r['x']},{r['y']},{r['value']},{r['sign']},"
                f"{format_factorization(r['sign'], r['factorization'])},{r['curve'] or ''},{cond}"
            )
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return {"md": self.to_markdown, "json": self.to_json, "csv": self.to_csv}[fmt]()


def format_factorization(sign: int, fac: dict[int, int]) -> str:
    parts = [] if sign > 0 else ["-1"]
    for p, e in sorted(fac.items()):
        parts.append(str(p) if e == 1 else f"{p}^{e}")
    return "·".join(parts) if parts else "1"


def _parse_cubic(text: str) -> BinaryCubicForm:
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --cubic value {text!r}") from exc
    if len(parts) != 4:
        raise UsageError("--cubic needs exactly four comma-separated integers")
    try:
        return BinaryCubicForm(*parts)
    except ValueError as exc:
        raise DegenerateFormError(str(exc)) from exc


def _parse_primes(text: str) -> PrimeSet:
    try:
        parts = [int(t) for t in text.split(",")]
        return PrimeSet(tuple(parts))
    except ValueError as exc:
        raise UsageError(f"bad --primes value {text!r}: {exc}") from exc


def _load_db(args) -> tuple[CurveDatabase, str]:
    path = getattr(args, "db", None) or os.environ.get(DB_ENV_VAR)
    if not path:
        raise UsageError(
            f"no curve database: pass --db PATH or set {DB_ENV_VAR}"
        )
    db = load_allcurves(path)
    return db, path


def _checksum(path: str) -> str:
    import hashlib

    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        digest.update(fh.read())
    return digest.hexdigest()[:16]


def cmd_solve(args) -> int:
    h = _parse_cubic(args.cubic)
    S = _parse_primes(args.primes)
    db, path = _load_db(args)
    t0 = time.monotonic()
    result = solve(h, S, db, include_trivial=args.include_trivial, jobs=args.jobs)
    report = RunReport(
        result=result,
        mode="solve",
        db_path=path,
        db_checksum=_checksum(path),
        elapsed=time.monotonic() - t0,
    )
    print(report.render(args.format))
    return EXIT_OK


def cmd_oracle(args) -> int:
    h = _parse_cubic(args.cubic)
    S = _parse_primes(args.primes)
    if args.height < 1:
        raise UsageError("--height must be at least 1")
    t0 = time.monotonic()
    result = brute_force(h, S, args.height, include_trivial=args.include_trivial)
    report = RunReport(result=result, mode="oracle", elapsed=time.monotonic() - t0, height=args.height)
    print(report.render(args.format))
    return EXIT_OK


def cmd_stats(args) -> int:
    h = _parse_cubic(args.cubic)
    base = _parse_primes(args.base_primes)
    try:
        lo, hi = (int(t) for t in args.vary_prime_range.split(".."))
    except ValueError as exc:
        raise UsageError("--vary-prime-range expects LO..HI") from exc
    db, _ = _load_db(args)
    print("p,count,m")
    running: dict[int, list[int]] = {1: [], 3: []}
    for p in range(max(2, lo), hi + 1):
        try:
            S = PrimeSet(tuple(base) + (p,))
        except ValueError:
            continue  # not prime
        if len(S) != len(base) + 1:
            continue  # p already in the base set
        try:
            result = solve(h, S, db, jobs=args.jobs)
        except DatabaseInsufficientError:
            print(f"{p},db-insufficient,")
            continue
        count = len(result)
        m = (count - 3) // 6 if count % 6 == 3 else None
        print(f"{p},{count},{m if m is not None else ''}")
        if p % 4 in (1, 3):
            running[p % 4].append(count)
    for residue in (1, 3):
        vals = running[residue]
        if vals:
            print(f"# running average over p = {residue} (mod 4): {sum(vals) / len(vals):.3f}")
    return EXIT_OK


def _curve_invariants_from_args(args, db: CurveDatabase | None):
    from .forms import weierstrass_c_invariants

    if args.curve:
        text = args.curve.strip().lstrip("[").rstrip("]")
        try:
            ai = [Fraction(t) for t in text.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --curve value {args.curve!r}") from exc
        if len(ai) != 5:
            raise UsageError("--curve needs five a-invariants")
        c4, c6, disc = weierstrass_c_invariants(*ai)
        if disc == 0:
            raise DegenerateFormError("curve is singular")
        return -27 * c4, -54 * c6, "ad-hoc"
    if args.curve_label:
        if db is None:
            raise UsageError("--curve-label requires --db")
        try:
            rec = db.by_label(args.curve_label)
        except KeyError:
            raise UsageError(f"curve {args.curve_label!r} not in database")
        A, B = short_model(rec)
        return A, B, rec.label
    return None, None, None


def cmd_j6(args) -> int:
    h = _parse_cubic(args.cubic)
    db = None
    if args.db or os.environ.get(DB_ENV_VAR):
        try:
            db, _ = _load_db(args)
        except UsageError:
            db = None
    A, B, label = _curve_invariants_from_args(args, db)
    if A is None:
        C = c_coefficients(h)
        D = d_coefficients(h)
        print("fiber sextic: sum_i (C_i*a4^3 + D_i*a6^2) * x^(6-i)*y^i")
        for i in range(7):
            print(f"  i={i}: C={C[i]} D={D[i]}")
        return EXIT_OK
    sp = j6_closed_form(h, A, B)
    print(f"curve: {label}")
    print(f"fiber sextic (scale {sp.scale}):")
    print(f"  {sp.poly}")
    roots = rational_roots_sextic(sp.poly)
    if not roots:
        print("no rational roots")
        return EXIT_OK
    factors = _linear_factors(sp.poly, roots)
    print("rational roots: " + ", ".join(f"({x}:{y})" for x, y in roots))
    if factors is not None:
        print("factors into linear terms: " + factors)
    return EXIT_OK


def _linear_factors(poly, roots) -> str | None:
    """Factored form over Q when the sextic splits into linear factors."""
    from .descent import BivariatePoly, DescentError

    remaining = poly
    parts = []
    total = 0
    for x0, y0 in roots:
        mult = 0
        lin = BivariatePoly(1, (y0, -x0))
        while True:
            try:
                nxt = remaining.divide_exact(lin)
            except DescentError:
                break
            remaining = nxt
            mult += 1
        total += mult
        parts.append(f"({y0}*x - {x0}*y)" + (f"^{mult}" if mult > 1 else ""))
    if total != 6:
        return None
    content = remaining.coeffs[0] if remaining.degree == 0 else None
    lead = f"{content} * " if content not in (1, None) else ""
    return lead + " * ".join(parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thuemahler",
        description="Exact solver for cubic Thue-Mahler equations h(x,y) = +-(S-unit)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, db=True):
        p.add_argument("--cubic", required=True, help="a,b,c,d coefficients of the cubic form")
        p.add_argument("--format", choices=("md", "json", "csv"), default="md")
        p.add_argument("--jobs", type=int, default=1)
        if db:
            p.add_argument("--db", help=f"allcurves database path (default ${DB_ENV_VAR})")

    ps = sub.add_parser("solve", help="complete solution set via the curve database")
    common(ps)
    ps.add_argument("--primes", required=True, help="comma-separated primes of S")
    ps.add_argument("--include-trivial", action="store_true", help="include the point (1, 0)")
    ps.set_defaults(func=cmd_solve)

    po = sub.add_parser("oracle", help="brute-force search within a height box")
    common(po, db=False)
    po.add_argument("--primes", required=True)
    po.add_argument("--height", type=int, required=True)
    po.add_argument("--include-trivial", action="store_true")
    po.set_defaults(func=cmd_oracle)

    pt = sub.add_parser("stats", help="solution counts as one prime varies")
    common(pt)
    pt.add_argument("--base-primes", required=True)
    pt.add_argument("--vary-prime-range", required=True, help="LO..HI")
    pt.set_defaults(func=cmd_stats)

    pj = sub.add_parser("j6", help="print the fiber sextic for a curve (or the symbolic template)")
    common(pj)
    pj.add_argument("--curve", help="[a1,a2,a3,a4,a6] of a curve")
    pj.add_argument("--curve-label", help="database label, requires --db")
    pj.set_defaults(func=cmd_j6)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateFormError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except DatabaseInsufficientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DB_INSUFFICIENT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
