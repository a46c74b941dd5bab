"""Orbits: radius grouping, equivalence classes, multiplicities and per-n totals.

The bulk path works on whole columns of a :class:`TripletTable`.  The
object-level functions (``group_by_radius``, ``partition_classes`` ...) are
thin views over the same machinery.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .enumeration import (
    EXTERIOR_CASES,
    INTERIOR_CASES,
    TripletTable,
    center_orbit,
    raw_records,
)
from .errors import AmbiguousGroupingError, InvalidArgumentError, InvariantViolationError
from .geometry import (
    RADIUS_TOL,
    SHIFT_TOL,
    PlanePoint,
    Triplet,
    point_coords,
    quadruplet_of,
)

# Grouping runs on the extended-precision radius key.  With 64-bit mantissas
# rounding noise stays below 2e-16 while distinct orbits (n <= 120) differ by
# at least 7e-13; relative gaps between the two thresholds are reported as
# ambiguous instead of being guessed.  Without extended precision the
# thresholds fall back to double-precision values, reliable up to n ~ 66.
EXTENDED_PRECISION = bool(np.finfo(np.longdouble).eps < 1e-18)
GAP_TOL = 1e-14 if EXTENDED_PRECISION else 1e-9
AMBIGUITY_FLOOR = 1e-15 if EXTENDED_PRECISION else 1e-12
INTERIOR_MULTIPLICITY_BOUND = 7


class Region(enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    CENTER = "center"


@dataclass(frozen=True)
class Tolerances:
    radius: float = RADIUS_TOL
    shift: float = SHIFT_TOL
    gap: float = GAP_TOL
    ambiguity: float = AMBIGUITY_FLOOR

    def __post_init__(self):
        for name in ("radius", "shift", "gap", "ambiguity"):
            if not getattr(self, name) > 0:
                raise InvalidArgumentError(f"tolerance {name} must be positive")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class RadiusGroup:
    sqrt_radius: float
    table: TripletTable
    region: Optional[Region] = None


@dataclass(frozen=True)
class EquivalenceLinks:
    """Known equivalences inside one group: member dst anchored at shift meets src at 0."""

    src: np.ndarray
    dst: np.ndarray
    shift: np.ndarray

    def __len__(self) -> int:
        return len(self.src)

    def as_tuples(self, table: TripletTable) -> list[tuple[tuple, tuple, int]]:
        trip = table.triplets()
        return [
            (trip[a], trip[b], int(s))
            for a, b, s in zip(self.src.tolist(), self.dst.tolist(), self.shift.tolist())
        ]


@dataclass(frozen=True)
class EquivalenceClass:
    label: int
    anchor: Triplet
    members: tuple[tuple[Triplet, int], ...]  # (triplet, shift relative to anchor)
    multiplicity: int

    def line_pairs(self) -> set[tuple[int, int]]:
        return class_line_pairs(self.members)


@dataclass(frozen=True)
class Orbit:
    n: int
    sqrt_radius: float
    region: Region
    n_classes: int
    cardinality: int
    multiplicity: int
    mult_histogram: dict[int, int]
    classes: tuple[EquivalenceClass, ...] = ()


@dataclass(frozen=True)
class ArrangementSummary:
    n: int
    N_int: int
    N_ext: int
    N_total: int
    M_int: int
    M_ext: int
    M_total: int
    a: dict[int, int]
    a_tilde: dict[int, int]
    orbits: tuple[Orbit, ...] = field(default=(), repr=False, compare=False)


def class_line_pairs(members) -> set[tuple[int, int]]:
    """Distinct lines through the anchor point, as sorted vertex-index pairs."""
    pairs = set()
    for t, rho in members:
        n = t.n
        for a, b in ((rho, rho + t.p), (rho + t.p + t.r, rho + t.p + t.q + t.r)):
            a, b = a % n, b % n
            pairs.add((min(a, b), max(a, b)))
    return pairs


# --------------------------------------------------------------------------- grouping


def _group_bounds(sqrt_j: np.ndarray, tol: Tolerances):
    if len(sqrt_j) == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    scale = np.maximum(sqrt_j.dtype.type(1), sqrt_j[:-1])
    gaps = sqrt_j[:-1] - sqrt_j[1:]
    if np.any(gaps < -tol.ambiguity * scale):
        raise InvalidArgumentError("records must be sorted by decreasing sqrt radius")
    split = gaps > tol.gap * scale
    grey = (~split) & (gaps > tol.ambiguity * scale)
    if np.any(grey):
        k = int(np.flatnonzero(grey)[0])
        pair = (float(sqrt_j[k]), float(sqrt_j[k + 1]))
        raise AmbiguousGroupingError(
            f"radii {pair[0]!r} and {pair[1]!r} are neither equal nor separated", pair
        )
    starts = np.concatenate(([0], np.flatnonzero(split) + 1)).astype(np.int64)
    ends = np.concatenate((starts[1:], [len(sqrt_j)])).astype(np.int64)
    return starts, ends


def group_by_radius(
    records: TripletTable, region: Optional[Region] = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[RadiusGroup]:
    """Split records (sorted by decreasing sqrt J) wherever consecutive radii separate."""
    starts, ends = _group_bounds(records.radius_key, tol)
    return [
        RadiusGroup(float(records.radius_key[a:b].mean()), records[a:b], region)
        for a, b in zip(starts.tolist(), ends.tolist())
    ]


# ------------------------------------------------------------------ known equivalences


def _rules(n, p, q, r):
    """Closed-form equivalences: (mask, target p, target q, target r, shift)."""
    s = n - (p + q + r)
    complex_ = r * s < 0
    every = np.ones(len(p), dtype=bool)
    yield every, q, p, s, p + r
    yield complex_, q, n - p, -q - r, p + r
    yield complex_, n - p, n - q, p + q + r - n, p
    yield complex_, n - q, p, -p - r, p + q + r
    pq_n = p + q == n
    yield pq_n, n - p, n - p, -n + p - r, p + r
    yield pq_n, n - p, p, r, p
    yield pq_n, p, p, -p - r, r
    if n % 2 == 0:
        h = n // 2
        q_half = q == h
        yield q_half, np.full_like(p, h), p, r, p + r - h
        yield q_half, p, np.full_like(p, h), r + h, np.zeros_like(p)
        yield q_half, p, p, 2 * r, np.zeros_like(p)
    if n % 12 == 0:
        yield from _rules_twelve(n, p, q, r)


# (anchor, target, shift) in units of n/12
_TWELVE = (
    ((1, 5, 2), (7, 2, 1), -4),
    ((1, 5, 2), (1, 2, 3), 0),
    ((1, 2, 2), (1, 7, 1), 0),
    ((1, 2, 2), (2, 5, 4), 3),
    ((1, 1, 3), (1, 4, 2), 0),
    ((1, 1, 3), (1, 8, 1), 0),
    ((1, 1, 3), (4, 4, 1), -2),
    ((4, 4, -1), (4, 3, -2), 0),
    ((4, 4, -1), (3, 4, -2), 2),
    ((7, 7, -3), (8, 8, -7), 1),
    ((7, 7, -3), (5, 8, -2), -1),
    ((7, 7, -3), (8, 5, -2), 1),
    ((7, 7, -3), (7, 8, -5), 0),
    ((7, 7, -3), (8, 7, -5), 1),
)


def _rules_twelve(n, p, q, r):
    k = n // 12
    for (a, b, c), (d, e, f), rho in _TWELVE:
        mask = (p == a * k) & (q == b * k) & (r == c * k)
        yield (
            mask,
            np.full_like(p, d * k),
            np.full_like(p, e * k),
            np.full_like(p, f * k),
            np.full_like(p, rho * k),
        )


def _filter_links(n, p, q, r, group_id):
    """Vectorized lookup of every closed-form equivalence whose target is present."""
    n = int(n)
    key = ((group_id * n + p) * n + q) * n + (r % n)
    order = np.argsort(key, kind="stable")
    sorted_key = key[order]
    srcs, dsts, shifts = [], [], []
    idx = np.arange(len(p), dtype=np.int64)
    for mask, tp, tq, tr, rho in _rules(n, p, q, r):
        if not mask.any():
            continue
        tp, tq, tr = tp % n, tq % n, tr % n
        ok = mask & (tp != 0) & (tq != 0)
        if not ok.any():
            continue
        tkey = ((group_id[ok] * n + tp[ok]) * n + tq[ok]) * n + tr[ok]
        pos = np.searchsorted(sorted_key, tkey)
        pos = np.minimum(pos, len(sorted_key) - 1)
        hit = sorted_key[pos] == tkey
        src = idx[ok][hit]
        dst = order[pos[hit]]
        keep = src != dst
        srcs.append(src[keep])
        dsts.append(dst[keep])
        shifts.append(rho[ok][hit][keep] % n)
    if not srcs:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(srcs), np.concatenate(dsts), np.concatenate(shifts)


def known_equivalence_filter(group: RadiusGroup) -> EquivalenceLinks:
    """Links within one radius group implied by the closed-form equivalences."""
    t = group.table
    gid = np.zeros(len(t), dtype=np.int64)
    src, dst, shift = _filter_links(t.n, t.p, t.q, t.r, gid)
    return EquivalenceLinks(src, dst, shift)


# ------------------------------------------------------------------------ resolution


@dataclass
class _Resolved:
    """Per-item class assignment over one region's table."""

    starts: np.ndarray
    ends: np.ndarray
    group_of: np.ndarray  # group index per item
    class_of: np.ndarray  # class index per item (classes ordered by anchor position)
    shift: np.ndarray  # shift relative to the class anchor
    class_anchor: np.ndarray  # item index of each class anchor
    class_group: np.ndarray
    class_mult: np.ndarray
    filter_links: int
    fallback_links: int


def _resolve(table: TripletTable, starts, ends, tol: Tolerances, use_filter: bool = True):
    n = table.n
    size = len(table)
    p, q, r = table.p, table.q, table.r
    group_of = np.zeros(size, dtype=np.int64)
    for g, (a, b) in enumerate(zip(starts.tolist(), ends.tolist())):
        group_of[a:b] = g
    if use_filter:
        src, dst, shift = _filter_links(n, p, q, r, group_of)
    else:
        src = dst = shift = np.empty(0, dtype=np.int64)
    parent, pot, conflicts = kernels.union_links(size, n, src, dst, shift)
    if conflicts:
        raise InvariantViolationError(f"{conflicts} contradictory closed-form shifts (n={n})")
    x, y = kernels.anchor_points(n, p, q, r)
    m_src, m_dst, m_shift = kernels.match_roots(
        n, starts, ends, parent, x, y, table.sqrt_radius, tol.shift, tol.radius
    )
    if len(m_src):
        parent, pot, conflicts = kernels.union_links(size, n, m_src, m_dst, m_shift, parent, pot)
        if conflicts:
            raise InvariantViolationError(f"{conflicts} contradictory arc-distance shifts (n={n})")
    roots, class_of = np.unique(parent, return_inverse=True)
    # anchor = lexicographically smallest member of each class
    order = np.lexsort((r, q, p, class_of))
    first = np.ones(size, dtype=bool)
    first[1:] = class_of[order][1:] != class_of[order][:-1]
    class_anchor = order[first]
    rel = (pot - pot[class_anchor][class_of]) % n
    # reorder classes by anchor position for deterministic labels
    relabel = np.argsort(class_anchor, kind="stable")
    inverse = np.empty_like(relabel)
    inverse[relabel] = np.arange(len(relabel))
    class_anchor = class_anchor[relabel]
    class_of = inverse[class_of]
    # multiplicity: distinct lines through each anchor point
    a1, b1 = rel % n, (rel + p) % n
    a2, b2 = (rel + p + r) % n, (rel + p + q + r) % n
    l1 = np.minimum(a1, b1) * n + np.maximum(a1, b1)
    l2 = np.minimum(a2, b2) * n + np.maximum(a2, b2)
    cls2 = np.concatenate((class_of, class_of))
    uniq = np.unique(cls2 * (n * n) + np.concatenate((l1, l2)))
    class_mult = np.bincount(uniq // (n * n), minlength=len(class_anchor)).astype(np.int64)
    return _Resolved(
        starts,
        ends,
        group_of,
        class_of,
        rel,
        class_anchor,
        group_of[class_anchor],
        class_mult,
        len(src),
        len(m_src),
    )


def _resolve_chunked(table, starts, ends, tol, use_filter, threads):
    """Resolve contiguous runs of groups in worker processes and stitch the results."""
    chunks = np.array_split(np.arange(len(starts)), threads)
    jobs = []
    for c in chunks:
        if len(c) == 0:
            continue
        lo, hi = int(starts[c[0]]), int(ends[c[-1]])
        jobs.append((lo, table[lo:hi], starts[c] - lo, ends[c] - lo))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_resolve, sub, s, e, tol, use_filter) for _, sub, s, e in jobs]
        parts = [f.result() for f in futures]
    class_off = 0
    group_off = 0
    fields = {k: [] for k in ("group_of", "class_of", "shift", "class_anchor", "class_group", "class_mult")}
    fl = fb = 0
    for (lo, _, _, _), part in zip(jobs, parts):
        fields["group_of"].append(part.group_of + group_off)
        fields["class_of"].append(part.class_of + class_off)
        fields["shift"].append(part.shift)
        fields["class_anchor"].append(part.class_anchor + lo)
        fields["class_group"].append(part.class_group + group_off)
        fields["class_mult"].append(part.class_mult)
        class_off += len(part.class_anchor)
        group_off += len(part.starts)
        fl += part.filter_links
        fb += part.fallback_links
    cat = {k: np.concatenate(v) for k, v in fields.items()}
    return _Resolved(starts, ends, **cat, filter_links=fl, fallback_links=fb)


def _classes_of(table: TripletTable, res: _Resolved, class_ids) -> tuple[EquivalenceClass, ...]:
    n = table.n
    members_by_class: dict[int, list] = {int(c): [] for c in class_ids}
    wanted = np.isin(res.class_of, np.asarray(list(class_ids), dtype=np.int64))
    for idx in np.flatnonzero(wanted).tolist():
        c = int(res.class_of[idx])
        t = Triplet(int(table.p[idx]), int(table.q[idx]), int(table.r[idx]), n)
        members_by_class[c].append((t, int(res.shift[idx])))
    out = []
    for label, c in enumerate(class_ids):
        a = int(res.class_anchor[c])
        anchor = Triplet(int(table.p[a]), int(table.q[a]), int(table.r[a]), n)
        members = tuple(sorted(members_by_class[int(c)], key=lambda m: m[0].as_tuple()))
        out.append(EquivalenceClass(label, anchor, members, int(res.class_mult[c])))
    return tuple(out)


def partition_classes(
    group: RadiusGroup, use_filter: bool = True, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[EquivalenceClass]:
    """Exact partition of one radius group into equivalence classes."""
    t = group.table
    starts = np.array([0], dtype=np.int64)
    ends = np.array([len(t)], dtype=np.int64)
    res = _resolve(t, starts, ends, tol, use_filter)
    return list(_classes_of(t, res, range(len(res.class_anchor))))


def compute_multiplicities(orbit: Orbit, n: Optional[int] = None) -> dict[int, int]:
    """Histogram multiplicity -> number of points, from the class line pairs."""
    if orbit.region is Region.CENTER:
        return {orbit.n // 2: 1}
    n = orbit.n if n is None else n
    hist: Counter = Counter()
    for cls in orbit.classes:
        m = len(cls.line_pairs())
        if orbit.region is Region.INTERIOR and m > INTERIOR_MULTIPLICITY_BOUND:
            raise InvariantViolationError(
                f"interior point of multiplicity {m} on orbit {orbit.sqrt_radius} (n={n})"
            )
        hist[m] += n
    return dict(sorted(hist.items()))


def materialize_points(orbit: Orbit, n: Optional[int] = None) -> list[PlanePoint]:
    """All points of an orbit; requires an orbit built with class detail."""
    n = orbit.n if n is None else n
    if orbit.region is Region.CENTER:
        return [PlanePoint(0.0, 0.0)]
    if not orbit.classes:
        raise InvalidArgumentError("orbit carries no class detail; analyze with detail=True")
    return [point_coords(quadruplet_of(i, cls.anchor)) for cls in orbit.classes for i in range(n)]


# ----------------------------------------------------------------------- summaries


def _region_orbits(table, region, tol, use_filter, detail, threads):
    starts, ends = _group_bounds(table.radius_key, tol)
    if len(starts) == 0:
        return []
    if threads > 1 and len(starts) > 1:
        res = _resolve_chunked(table, starts, ends, tol, use_filter, threads)
    else:
        res = _resolve(table, starts, ends, tol, use_filter)
    n = table.n
    if region is Region.INTERIOR and len(res.class_mult) and res.class_mult.max() > INTERIOR_MULTIPLICITY_BOUND:
        bad = int(np.argmax(res.class_mult))
        raise InvariantViolationError(
            f"interior multiplicity {int(res.class_mult[bad])} exceeds {INTERIOR_MULTIPLICITY_BOUND} (n={n})"
        )
    means = (np.add.reduceat(table.radius_key, starts) / (ends - starts)).astype(np.float64)
    # classes are ordered by anchor position, hence grouped by radius group
    class_start = np.searchsorted(res.class_group, np.arange(len(starts)))
    class_end = np.searchsorted(res.class_group, np.arange(len(starts)), side="right")
    orbits = []
    for g in range(len(starts)):
        c0, c1 = int(class_start[g]), int(class_end[g])
        mults = res.class_mult[c0:c1].tolist()
        hist = Counter()
        for m in mults:
            hist[m] += n
        classes = _classes_of(table, res, range(c0, c1)) if detail else ()
        orbits.append(
            Orbit(
                n=n,
                sqrt_radius=float(means[g]),
                region=region,
                n_classes=c1 - c0,
                cardinality=n * (c1 - c0),
                multiplicity=max(mults),
                mult_histogram=dict(sorted(hist.items())),
                classes=classes,
            )
        )
    return orbits


def analyze(
    n: int,
    detail: bool = False,
    use_filter: bool = True,
    tol: Tolerances = DEFAULT_TOLERANCES,
    threads: int = 1,
    timings: Optional[dict] = None,
) -> list[Orbit]:
    """All orbits of the arrangement, sorted by decreasing radius.

    When ``timings`` is a dict it receives wall times in seconds for
    ``generate_ext``, ``orbits_ext``, ``generate_int`` and ``orbits_int``.
    """
    if n < 3:
        raise InvalidArgumentError(f"n must be >= 3, got {n}")
    clock = {} if timings is None else timings
    orbits: list[Orbit] = []
    if n >= 5:
        for region, cases, tag in (
            (Region.EXTERIOR, EXTERIOR_CASES, "ext"),
            (Region.INTERIOR, INTERIOR_CASES, "int"),
        ):
            t0 = time.perf_counter()
            raw = raw_records(n, cases)
            t1 = time.perf_counter()
            table = TripletTable.from_raw(*raw).sorted()
            orbits += _region_orbits(table, region, tol, use_filter, detail, threads)
            t2 = time.perf_counter()
            clock[f"generate_{tag}"] = t1 - t0
            clock[f"orbits_{tag}"] = t2 - t1
    seed = center_orbit(n)
    if seed is not None:
        orbits.append(
            Orbit(n, 0.0, Region.CENTER, 1, 1, seed.multiplicity, {seed.multiplicity: 1})
        )
    return orbits


def summary_from_orbits(n: int, orbits) -> ArrangementSummary:
    n_int = n_ext = m_int = m_ext = 0
    a: Counter = Counter()
    a_t: Counter = Counter()
    for o in orbits:
        if o.region is Region.EXTERIOR:
            n_ext += o.cardinality
            m_ext += 1
            a_t.update(o.mult_histogram)
        else:
            n_int += o.cardinality
            m_int += 1
            if o.region is Region.INTERIOR:
                a.update(o.mult_histogram)
    return ArrangementSummary(
        n=n,
        N_int=n_int,
        N_ext=n_ext,
        N_total=n + n_int + n_ext,
        M_int=m_int,
        M_ext=m_ext,
        M_total=1 + m_int + m_ext,
        a=dict(sorted(a.items())),
        a_tilde=dict(sorted(a_t.items())),
        orbits=tuple(orbits),
    )


def summarize(
    n: int,
    use_filter: bool = True,
    tol: Tolerances = DEFAULT_TOLERANCES,
    threads: int = 1,
    detail: bool = False,
    timings: Optional[dict] = None,
) -> ArrangementSummary:
    """Point and orbit counts with multiplicity histograms for the n-gon."""
    orbits = analyze(n, detail=detail, use_filter=use_filter, tol=tol, threads=threads, timings=timings)
    return summary_from_orbits(n, orbits)


__all__ = [
    "Region",
    "Tolerances",
    "RadiusGroup",
    "EquivalenceLinks",
    "EquivalenceClass",
    "Orbit",
    "ArrangementSummary",
    "group_by_radius",
    "known_equivalence_filter",
    "partition_classes",
    "compute_multiplicities",
    "materialize_points",
    "analyze",
    "summarize",
    "summary_from_orbits",
]
