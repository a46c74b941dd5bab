"""Brute-force ground truth built from raw line intersections.

Nothing here uses triplets or the closed-form radius: every chord line of the
n-gon is intersected with every other one, coincident intersections are
merged, and radii, cardinalities and multiplicities are read off the clusters.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .errors import OracleRangeError, ParallelLinesError
from .geometry import PlanePoint
from .orbits import (
    ArrangementSummary,
    Orbit,
    Region,
    Tolerances,
    _group_bounds,
    summary_from_orbits,
)

ORACLE_MAX_N = 30
MERGE_TOL = 1e-9
AMBIGUITY_TOL = 1e-7
CIRCLE_TOL = 1e-9
DET_TOL = 1e-12
# point radii carry double-precision noise (~1e-14); distinct orbits for
# n <= 30 are at least 2e-6 apart
ORACLE_TOLERANCES = Tolerances(gap=1e-9, ambiguity=1e-12)


@dataclass(frozen=True)
class OraclePoint:
    coords: PlanePoint
    incident_lines: frozenset  # of (a, b) vertex pairs with a < b
    radius: float

    @property
    def multiplicity(self) -> int:
        return len(self.incident_lines)


@dataclass(frozen=True)
class OracleResult:
    n: int
    points: tuple[OraclePoint, ...]
    summary: ArrangementSummary
    reliable: bool = True
    min_separation: float = math.inf
    warnings: tuple[str, ...] = field(default=())


def _vertices(n):
    m = np.arange(n)
    return np.cos(2.0 * np.pi * m / n), np.sin(2.0 * np.pi * m / n)


def _intersections(n):
    """All pairwise chord-line intersections, skipping pairs sharing a vertex."""
    vx, vy = _vertices(n)
    a, b = np.triu_indices(n, 1)
    la, lb = np.triu_indices(len(a), 1)
    a1, b1, a2, b2 = a[la], b[la], a[lb], b[lb]
    distinct = (a1 != a2) & (a1 != b2) & (b1 != a2) & (b1 != b2)
    la, lb = la[distinct], lb[distinct]
    a1, b1, a2, b2 = a1[distinct], b1[distinct], a2[distinct], b2[distinct]
    # P = A1 + t (B1 - A1), solve against the second line
    d1x, d1y = vx[b1] - vx[a1], vy[b1] - vy[a1]
    d2x, d2y = vx[b2] - vx[a2], vy[b2] - vy[a2]
    det = d1x * d2y - d1y * d2x
    ok = np.abs(det) > DET_TOL
    wx, wy = vx[a2] - vx[a1], vy[a2] - vy[a1]
    t = (wx * d2y - wy * d2x)[ok] / det[ok]
    x = vx[a1][ok] + t * d1x[ok]
    y = vy[a1][ok] + t * d1y[ok]
    return x, y, a[la[ok]], b[la[ok]], a[lb[ok]], b[lb[ok]]


def _clusters(x, y):
    pts = np.column_stack((x, y))
    tree = cKDTree(pts)
    pairs = tree.query_pairs(MERGE_TOL, output_type="ndarray")
    size = len(pts)
    graph = coo_matrix(
        (np.ones(len(pairs), dtype=np.int8), (pairs[:, 0], pairs[:, 1])), shape=(size, size)
    )
    _, labels = connected_components(graph, directed=False)
    return labels


def brute_force(n: int) -> OracleResult:
    """Intersect every pair of chord lines of the regular n-gon."""
    if not 3 <= n <= ORACLE_MAX_N:
        raise OracleRangeError(f"oracle supports 3 <= n <= {ORACLE_MAX_N}, got {n}")
    x, y, a1, b1, a2, b2 = _intersections(n)
    rad = np.hypot(x, y)
    off_circle = np.abs(rad - 1.0) > CIRCLE_TOL
    x, y, a1, b1, a2, b2 = (v[off_circle] for v in (x, y, a1, b1, a2, b2))
    points: list[OraclePoint] = []
    warnings: list[str] = []
    reliable = True
    min_sep = math.inf
    if len(x):
        labels = _clusters(x, y)
        k = labels.max() + 1
        cx = np.bincount(labels, x, k) / np.bincount(labels, minlength=k)
        cy = np.bincount(labels, y, k) / np.bincount(labels, minlength=k)
        # clusters closer than the ambiguity radius cannot be told apart safely
        ctree = cKDTree(np.column_stack((cx, cy)))
        near = ctree.query_pairs(AMBIGUITY_TOL, output_type="ndarray")
        if len(near):
            reliable = False
            warnings.append(f"{len(near)} cluster pairs within {AMBIGUITY_TOL:g}")
        dist, _ = ctree.query(np.column_stack((cx, cy)), k=2) if k > 1 else (None, None)
        if dist is not None:
            min_sep = float(dist[:, 1].min())
        spread = np.hypot(x - cx[labels], y - cy[labels]).max()
        if spread > MERGE_TOL:
            reliable = False
            warnings.append(f"cluster spread {spread:.3g} exceeds merge radius")
        lines: list[set] = [set() for _ in range(k)]
        for lab, p1, q1, p2, q2 in zip(labels.tolist(), a1.tolist(), b1.tolist(), a2.tolist(), b2.tolist()):
            lines[lab].add((p1, q1))
            lines[lab].add((p2, q2))
        for lab in range(k):
            px, py = float(cx[lab]), float(cy[lab])
            points.append(OraclePoint(PlanePoint(px, py), frozenset(lines[lab]), math.hypot(px, py)))
    points.sort(key=lambda p: (-p.radius, math.atan2(p.coords.y, p.coords.x)))
    return OracleResult(
        n, tuple(points), _summarize_points(n, points), reliable, min_sep, tuple(warnings)
    )


def _summarize_points(n, points) -> ArrangementSummary:
    orbits: list[Orbit] = []
    center = [p for p in points if p.radius <= CIRCLE_TOL]
    for region, sel in (
        (Region.EXTERIOR, [p for p in points if p.radius > 1.0 + CIRCLE_TOL]),
        (Region.INTERIOR, [p for p in points if CIRCLE_TOL < p.radius < 1.0 - CIRCLE_TOL]),
    ):
        if not sel:
            continue
        radii = np.array([p.radius for p in sel])
        starts, ends = _group_bounds(radii, ORACLE_TOLERANCES)
        for s, e in zip(starts.tolist(), ends.tolist()):
            hist = Counter(p.multiplicity for p in sel[s:e])
            orbits.append(
                Orbit(
                    n=n,
                    sqrt_radius=float(radii[s:e].mean()),
                    region=region,
                    n_classes=(e - s) // n,
                    cardinality=e - s,
                    multiplicity=max(hist),
                    mult_histogram=dict(sorted(hist.items())),
                )
            )
    for p in center:
        orbits.append(
            Orbit(n, 0.0, Region.CENTER, 1, 1, p.multiplicity, {p.multiplicity: 1})
        )
    return summary_from_orbits(n, orbits)


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def _orbit_key(o: Orbit):
    return (o.region.value, o.cardinality, tuple(sorted(o.mult_histogram.items())))


def compare(n: int, summary: ArrangementSummary, oracle: OracleResult | None = None) -> list[Discrepancy]:
    """Differences between a pipeline summary and the brute-force oracle (empty = agreement)."""
    oracle = brute_force(n) if oracle is None else oracle
    out: list[Discrepancy] = []
    if not oracle.reliable:
        out.extend(Discrepancy("oracle-unreliable", w) for w in oracle.warnings)
    ref = oracle.summary
    for name in ("N_int", "N_ext", "N_total", "M_int", "M_ext", "M_total", "a", "a_tilde"):
        got, want = getattr(summary, name), getattr(ref, name)
        if got != want:
            out.append(Discrepancy("total", f"{name}: pipeline {got} vs oracle {want}"))
    mine = sorted(summary.orbits, key=lambda o: -o.sqrt_radius)
    theirs = sorted(ref.orbits, key=lambda o: -o.sqrt_radius)
    if len(mine) != len(theirs):
        out.append(Discrepancy("orbit-count", f"pipeline {len(mine)} vs oracle {len(theirs)}"))
    i = j = 0
    while i < len(mine) and j < len(theirs):
        a, b = mine[i], theirs[j]
        if abs(a.sqrt_radius - b.sqrt_radius) <= MERGE_TOL * max(1.0, b.sqrt_radius):
            if _orbit_key(a) != _orbit_key(b):
                out.append(
                    Discrepancy(
                        "orbit",
                        f"radius {b.sqrt_radius:.12g}: pipeline {_orbit_key(a)} vs oracle {_orbit_key(b)}",
                    )
                )
            i += 1
            j += 1
        elif a.sqrt_radius > b.sqrt_radius:
            out.append(Discrepancy("radius", f"{a.sqrt_radius:.12g} only in pipeline"))
            i += 1
        else:
            out.append(Discrepancy("radius", f"{b.sqrt_radius:.12g} only in oracle"))
            j += 1
    out.extend(Discrepancy("radius", f"{o.sqrt_radius:.12g} only in pipeline") for o in mine[i:])
    out.extend(Discrepancy("radius", f"{o.sqrt_radius:.12g} only in oracle") for o in theirs[j:])
    return out


def cocyclic_j(alpha_a: float, alpha_b: float, alpha_c: float, alpha_d: float, radius: float = 1.0) -> float:
    """Squared distance from the center to the meeting point of chords AB and CD.

    The four points sit at angles alpha_* on a circle of the given radius.
    """
    half = 0.5 * (alpha_a + alpha_b - alpha_c - alpha_d)
    s = math.sin(half)
    if abs(s) < DET_TOL:
        raise ParallelLinesError("chords AB and CD are parallel")
    u = math.cos(0.5 * (alpha_a - alpha_b))
    v = math.cos(0.5 * (alpha_c - alpha_d))
    return radius * radius * (u * u + v * v - 2.0 * u * v * math.cos(half)) / (s * s)
