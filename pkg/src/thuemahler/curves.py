"""Elliptic-curve records, allcurves-format ingestion and conductor lookup.

The database file format is one curve per line, whitespace-separated:

    <conductor> <class-letters> <index> [a1,a2,a3,a4,a6] <rank> <torsion>

Rank and torsion are optional.  Lines beginning with '#' are ignored; a comment
of the form '# complete_to: N' declares the completeness bound of the file
(useful for committed subsets, where the largest stored conductor understates
the bound the extraction was run with).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .forms import weierstrass_c_invariants

_LABEL_RE = re.compile(r"^(\d+)([a-z]+)(\d+)$")
_LINE_RE = re.compile(
    r"^(\d+)\s+([a-z]+)\s+(\d+)\s+\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\](?:\s+(-?\d+))?(?:\s+(\d+))?\s*$"
)
_COMPLETE_RE = re.compile(r"^#\s*complete_to\s*:\s*(\d+)\s*$")


class CurveParseError(ValueError):
    """Malformed database line; carries the 1-based line number."""

    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class DatabaseInsufficientError(RuntimeError):
    """The database completeness bound is below the conductor bound of a run."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"database insufficient: need completeness up to conductor {needed}, "
            f"database covers {available}"
        )


@dataclass(frozen=True)
class EllipticCurve:
    """One database record: label, conductor and integral a-invariants."""

    label: str
    conductor: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    rank: int | None = None
    torsion: int | None = None

    def __post_init__(self):
        m = _LABEL_RE.match(self.label)
        if not m or int(m.group(1)) != self.conductor:
            raise ValueError(
                f"label {self.label!r} does not carry conductor {self.conductor}"
            )
        if self.discriminant == 0:
            raise ValueError(f"curve {self.label} is singular")

    @property
    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def c4(self) -> int:
        return weierstrass_c_invariants(*self.a_invariants)[0]

    @property
    def c6(self) -> int:
        return weierstrass_c_invariants(*self.a_invariants)[1]

    @property
    def discriminant(self) -> int:
        return weierstrass_c_invariants(*self.a_invariants)[2]

    def to_line(self) -> str:
        cls, idx = _LABEL_RE.match(self.label).group(2, 3)
        parts = [
            str(self.conductor),
            cls,
            idx,
            "[" + ",".join(str(a) for a in self.a_invariants) + "]",
        ]
        if self.rank is not None:
            parts.append(str(self.rank))
            if self.torsion is not None:
                parts.append(str(self.torsion))
        return " ".join(parts)


@dataclass(frozen=True)
class CurveDatabase:
    """Immutable conductor-indexed collection of curve records."""

    records: tuple[EllipticCurve, ...]
    max_conductor: int
    index: dict[int, tuple[EllipticCurve, ...]] = field(repr=False, default=None)

    def __post_init__(self):
        idx: dict[int, list[EllipticCurve]] = {}
        for rec in self.records:
            idx.setdefault(rec.conductor, []).append(rec)
        object.__setattr__(self, "index", {n: tuple(rs) for n, rs in idx.items()})
        if self.records and self.max_conductor < max(idx):
            raise ValueError("max_conductor below a stored conductor")

    def __len__(self) -> int:
        return len(self.records)

    def by_conductor(self, n: int) -> tuple[EllipticCurve, ...]:
        return self.index.get(n, ())

    def by_label(self, label: str) -> EllipticCurve:
        m = _LABEL_RE.match(label)
        if not m:
            raise KeyError(label)
        for rec in self.by_conductor(int(m.group(1))):
            if rec.label == label:
                return rec
        raise KeyError(label)

    def dump(self) -> str:
        lines = [f"# complete_to: {self.max_conductor}"]
        lines += [rec.to_line() for rec in self.records]
        return "\n".join(lines) + "\n"


def parse_allcurves(
    lines: Iterable[str], max_conductor: int | None = None
) -> CurveDatabase:
    """Parse allcurves-format text into a database.

    The completeness bound is taken from, in order of precedence: the
    max_conductor argument, a '# complete_to: N' comment, the largest stored
    conductor.  Aborts with CurveParseError at the first malformed line.
    """
    records: list[EllipticCurve] = []
    declared: int | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _COMPLETE_RE.match(line)
            if m:
                declared = int(m.group(1))
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise CurveParseError(lineno, line, "unrecognised record syntax")
        cond, cls, idx = int(m.group(1)), m.group(2), m.group(3)
        ai = tuple(int(m.group(k)) for k in range(4, 9))
        rank = int(m.group(9)) if m.group(9) is not None else None
        torsion = int(m.group(10)) if m.group(10) is not None else None
        try:
            rec = EllipticCurve(f"{cond}{cls}{idx}", cond, *ai, rank=rank, torsion=torsion)
        except ValueError as exc:
            raise CurveParseError(lineno, line, str(exc)) from exc
        records.append(rec)
    stored_max = max((r.conductor for r in records), default=0)
    bound = max_conductor if max_conductor is not None else (declared if declared is not None else stored_max)
    return CurveDatabase(records=tuple(records), max_conductor=bound)


def load_allcurves(path, max_conductor: int | None = None) -> CurveDatabase:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_allcurves(fh, max_conductor=max_conductor)


def short_model(curve: EllipticCurve) -> tuple[int, int]:
    """(A, B) with y^2 = x^3 + A x + B isomorphic over Q to the curve.

    A = -27*c4, B = -54*c6: the substitution is by the square 36, so the model
    keeps the exact isomorphism class while clearing a1, a2, a3.
    """
    return -27 * curve.c4, -54 * curve.c6


def curves_with_admissible_conductor(db: CurveDatabase, nmax: int) -> list[EllipticCurve]:
    """All records whose conductor divides nmax.

    Requires nmax <= db.max_conductor, otherwise the completeness guarantee
    behind the enumeration is void and the lookup refuses to run.
    """
    if nmax <= 0:
        raise ValueError("conductor bound must be positive")
    if nmax > db.max_conductor:
        raise DatabaseInsufficientError(nmax, db.max_conductor)
    out = [rec for rec in db.records if nmax % rec.conductor == 0]
    out.sort(key=lambda rec: (rec.conductor, rec.label))
    return out
