"""Published reference counts (n = 3..30) and the odd-n exterior closed form.

Rows are loaded from ``data/reference.csv`` exactly as printed.  A handful of
printed cells are contradicted either by their own row or by the brute-force
oracle; those are listed in ``data/errata.csv`` and applied by default.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from typing import Optional

from .errors import InvalidArgumentError, SimuorbError, UnsupportedError

KS = range(2, 8)
COUNT_COLUMNS = ("N_int", "N_ext", "N_total", "M_int", "M_ext", "M_total")


class ChecksumError(SimuorbError):
    pass


@dataclass(frozen=True)
class ReferenceRow:
    n: int
    N_int: int
    N_ext: int
    N_total: int
    M_int: int
    M_ext: int
    M_total: int
    a: dict
    a_tilde: dict

    def consistency_errors(self) -> list[str]:
        errs = []
        if self.N_total != self.n + self.N_int + self.N_ext:
            errs.append(f"N_total {self.N_total} != n + N_int + N_ext")
        if self.M_total != 1 + self.M_int + self.M_ext:
            errs.append(f"M_total {self.M_total} != 1 + M_int + M_ext")
        center = 1 if self.n % 2 == 0 else 0
        if sum(self.a.values()) + center != self.N_int:
            errs.append("sum of a_k plus center != N_int")
        if sum(self.a_tilde.values()) != self.N_ext:
            errs.append("sum of a~_k != N_ext")
        return errs


@dataclass(frozen=True)
class Erratum:
    n: int
    column: str
    printed: int
    corrected: int
    evidence: str


def _read(name: str) -> bytes:
    return resources.files("simuorb").joinpath("data").joinpath(name).read_bytes()


def verify_checksums() -> None:
    for line in _read("SHA256SUMS").decode().splitlines():
        digest, name = line.split()
        if hashlib.sha256(_read(name)).hexdigest() != digest:
            raise ChecksumError(f"reference data file {name} does not match its checksum")


def _cell(v: str) -> int:
    return int(v) if v else 0


@lru_cache(maxsize=None)
def _printed_rows() -> dict[int, ReferenceRow]:
    verify_checksums()
    rows = {}
    for rec in csv.DictReader(io.StringIO(_read("reference.csv").decode())):
        n = int(rec["n"])
        a = {k: _cell(rec[f"a_{k}"]) for k in KS if rec[f"a_{k}"]}
        at = {k: _cell(rec[f"atilde_{k}"]) for k in KS if rec[f"atilde_{k}"]}
        counts = {c: int(rec[c]) for c in COUNT_COLUMNS}
        rows[n] = ReferenceRow(n=n, a=a, a_tilde=at, **counts)
    return rows


@lru_cache(maxsize=None)
def errata() -> tuple[Erratum, ...]:
    verify_checksums()
    out = []
    for rec in csv.DictReader(io.StringIO(_read("errata.csv").decode())):
        out.append(
            Erratum(int(rec["n"]), rec["column"], int(rec["printed"]), int(rec["corrected"]), rec["evidence"])
        )
    return tuple(out)


def reference(n: int, corrected: bool = True) -> Optional[ReferenceRow]:
    """Embedded row for 3 <= n <= 30, or None outside that range."""
    row = _printed_rows().get(n)
    if row is None or not corrected:
        return row
    fixes = {e.column: e.corrected for e in errata() if e.n == n}
    return replace(row, **fixes) if fixes else row


def reference_range() -> range:
    rows = _printed_rows()
    return range(min(rows), max(rows) + 1)


def exterior_closed_form(n: int) -> int:
    """Number of exterior intersection points for odd n."""
    if n < 3:
        raise InvalidArgumentError(f"n must be >= 3, got {n}")
    if n % 2 == 0:
        raise UnsupportedError("no closed form is known for even n")
    num = n * (2 * n**3 - 15 * n**2 + 34 * n - 21)
    assert num % 24 == 0
    return num // 24


def compare_row(summary, row: ReferenceRow) -> list[str]:
    """Cells where a computed summary disagrees with a reference row."""
    diffs = []
    for c in COUNT_COLUMNS:
        got, want = getattr(summary, c), getattr(row, c)
        if got != want:
            diffs.append(f"n={row.n} {c}: computed {got}, reference {want}")
    for name, label in (("a", "a"), ("a_tilde", "a~")):
        got, want = getattr(summary, name), getattr(row, name)
        for k in sorted(set(got) | set(want)):
            if got.get(k, 0) != want.get(k, 0):
                diffs.append(f"n={row.n} {label}_{k}: computed {got.get(k, 0)}, reference {want.get(k, 0)}")
    return diffs
