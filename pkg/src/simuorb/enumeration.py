"""Triple-loop generators for the canonical triplets of exterior and interior orbits.

Each generator returns a :class:`TripletTable`, a columnar, sorted and
duplicate-free sequence of :class:`TripletRecord`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .errors import InvalidArgumentError
from .geometry import Triplet


class GeneratorCase(enum.IntEnum):
    EXT_SIMPLE = kernels.EXT_SIMPLE  # Case 1
    EXT_COMPLEX_A = kernels.EXT_COMPLEX_A  # Case 2, no endpoint of (k,l) on arc(i,j)
    EXT_COMPLEX_B = kernels.EXT_COMPLEX_B  # Case 2, both endpoints on arc(i,j)
    INT_A = kernels.INT_A  # Case 3, z_k on arc(i,j)
    INT_B = kernels.INT_B  # Case 3, z_k on arc(j,i)

    @property
    def is_exterior(self) -> bool:
        return self <= GeneratorCase.EXT_COMPLEX_B


EXTERIOR_CASES = (GeneratorCase.EXT_SIMPLE, GeneratorCase.EXT_COMPLEX_A, GeneratorCase.EXT_COMPLEX_B)
INTERIOR_CASES = (GeneratorCase.INT_A, GeneratorCase.INT_B)


@dataclass(frozen=True)
class TripletRecord:
    triplet: Triplet
    sqrt_radius: float
    case: GeneratorCase


class TripletTable(Sequence[TripletRecord]):
    """Column store of triplets sorted by decreasing sqrt(J), then (p, q, r)."""

    def __init__(self, n, p, q, r, sqrt_radius, case, radius_key=None):
        self.n = int(n)
        self.p = np.asarray(p, dtype=np.int64)
        self.q = np.asarray(q, dtype=np.int64)
        self.r = np.asarray(r, dtype=np.int64)
        self.sqrt_radius = np.asarray(sqrt_radius, dtype=np.float64)
        self.case = np.asarray(case, dtype=np.int8)
        # extended-precision sqrt(J) used for grouping; falls back to sqrt_radius
        if radius_key is None:
            radius_key = self.sqrt_radius
        self.radius_key = np.asarray(radius_key, dtype=np.longdouble)

    @classmethod
    def build(cls, n: int, cases) -> "TripletTable":
        """Generate, deduplicate and sort canonically."""
        return cls.from_raw(*raw_records(n, cases)).sorted()

    @classmethod
    def from_raw(cls, n, p, q, r, case, key) -> "TripletTable":
        return cls(n, p, q, r, key.astype(np.float64), case, key)

    def sorted(self) -> "TripletTable":
        """Order by decreasing sqrt(J), ties broken by (p, q, r).

        Sorting on the double-precision radius is safe: rounding is monotone
        and distinct orbits are many ulps apart.
        """
        order = np.argsort(_row_key(self.n, self.p, self.q, self.r), kind="stable")
        order = order[np.argsort(-self.sqrt_radius[order], kind="stable")]
        return TripletTable(
            self.n,
            self.p[order],
            self.q[order],
            self.r[order],
            self.sqrt_radius[order],
            self.case[order],
            self.radius_key[order],
        )

    def __len__(self) -> int:
        return len(self.p)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return TripletTable(
                self.n,
                self.p[idx],
                self.q[idx],
                self.r[idx],
                self.sqrt_radius[idx],
                self.case[idx],
                self.radius_key[idx],
            )
        return TripletRecord(
            Triplet(int(self.p[idx]), int(self.q[idx]), int(self.r[idx]), self.n),
            float(self.sqrt_radius[idx]),
            GeneratorCase(int(self.case[idx])),
        )

    def __iter__(self) -> Iterator[TripletRecord]:
        for idx in range(len(self)):
            yield self[idx]

    def triplets(self) -> list[tuple[int, int, int]]:
        return list(zip(self.p.tolist(), self.q.tolist(), self.r.tolist()))

    def index_of(self, p: int, q: int, r: int) -> Optional[int]:
        hit = np.flatnonzero((self.p == p) & (self.q == q) & (self.r == r))
        return int(hit[0]) if len(hit) else None


def _row_key(n, p, q, r):
    # r lies in (-n, n), so this key orders rows by (p, q, r)
    return (p * n + q) * (2 * n) + (r + n)


def raw_records(n: int, cases):
    """Run the loops for ``cases``, drop duplicate (p, q, r) and evaluate sqrt(J).

    Rows keep generator order; the lowest case tag wins a duplicate.
    """
    p, q, r, case = kernels.generate_many(n, sorted(int(c) for c in cases))
    # the cases partition the triplets in practice; only pay for a sort when
    # a duplicate actually shows up
    if kernels.has_duplicates(n, p, q, r):
        _, first = np.unique(_row_key(n, p, q, r), return_index=True)
        first.sort()
        p, q, r, case = p[first], q[first], r[first], case[first]
    return n, p, q, r, case, kernels.radius_key(n, p, q, r)


def _check_n(n: int) -> None:
    if n < 5:
        raise InvalidArgumentError(f"triplet generators need n >= 5, got {n}")


def _gen(n: int, cases) -> TripletTable:
    _check_n(n)
    return TripletTable.build(n, cases)


def gen_exterior_simple(n: int) -> TripletTable:
    return _gen(n, [GeneratorCase.EXT_SIMPLE])


def gen_exterior_complex_a(n: int) -> TripletTable:
    return _gen(n, [GeneratorCase.EXT_COMPLEX_A])


def gen_exterior_complex_b(n: int) -> TripletTable:
    return _gen(n, [GeneratorCase.EXT_COMPLEX_B])


def gen_interior_a(n: int) -> TripletTable:
    return _gen(n, [GeneratorCase.INT_A])


def gen_interior_b(n: int) -> TripletTable:
    return _gen(n, [GeneratorCase.INT_B])


def gen_exterior(n: int) -> TripletTable:
    """Union of the three exterior generators."""
    return _gen(n, EXTERIOR_CASES)


def gen_interior(n: int) -> TripletTable:
    """Union of the two interior generators (center configuration excluded)."""
    return _gen(n, INTERIOR_CASES)


@dataclass(frozen=True)
class CenterSeed:
    """The single point where the n/2 diameters of an even n-gon meet."""

    n: int
    points: int = 1

    @property
    def multiplicity(self) -> int:
        return self.n // 2


def center_orbit(n: int) -> Optional[CenterSeed]:
    if n % 2 or n < 4:
        return None
    return CenterSeed(n)
