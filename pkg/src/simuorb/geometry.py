"""Exact path-length combinatorics and the radius / arc-length kernel.

Vertices of the regular n-gon are ``z_m = exp(2*pi*i*m/n)``.  Every angle is
evaluated as ``cos(k*pi/n)`` with ``k`` an exact integer reduced modulo ``2n``
so that results do not depend on accumulated floating-point angles.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidArgumentError, NotCocyclicError, ParallelLinesError

RADIUS_TOL = 1e-10
SHIFT_TOL = 1e-7
DET_TOL = 1e-12


def cos_pi(k: int, n: int) -> float:
    """cos(k*pi/n) with k reduced exactly modulo 2n."""
    return math.cos(math.pi * (k % (2 * n)) / n)


def sin_pi(k: int, n: int) -> float:
    return math.sin(math.pi * (k % (2 * n)) / n)


def vertex(m: int, n: int) -> tuple[float, float]:
    m %= n
    return math.cos(2.0 * math.pi * m / n), math.sin(2.0 * math.pi * m / n)


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    @property
    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def close_to(self, other: "PlanePoint", tol: float = 1e-9) -> bool:
        return math.hypot(self.x - other.x, self.y - other.y) <= tol


@dataclass(frozen=True)
class Quadruplet:
    """Four vertex indices; (i, j) spans the first line, (k, l) the second."""

    i: int
    j: int
    k: int
    l: int  # noqa: E741
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise InvalidArgumentError(f"n must be >= 3, got {self.n}")
        for v in (self.i, self.j, self.k, self.l):
            if not 0 <= v < self.n:
                raise InvalidArgumentError(f"vertex index {v} outside [0, {self.n - 1}]")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.k, self.l)


@dataclass(frozen=True, order=True)
class Triplet:
    """Shape descriptor (p, q, r) of an inscribed quadrilateral, s = n - (p+q+r).

    p and q are the path lengths of the two chords, r the signed gap between
    them.  Simple shapes have r, s > 0 (r may then exceed n/2); crossing
    shapes have r*s < 0 with |r| <= n/2.
    """

    p: int
    q: int
    r: int
    n: int

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise InvalidArgumentError(f"n must be >= 3, got {n}")
        if not (1 <= self.p <= n - 1 and 1 <= self.q <= n - 1):
            raise InvalidArgumentError(f"p, q must lie in [1, {n - 1}]: {self}")
        if self.r % n == 0 or self.s % n == 0:
            raise InvalidArgumentError(f"r and s must be nonzero modulo n: {self}")

    @property
    def s(self) -> int:
        return self.n - (self.p + self.q + self.r)

    @property
    def is_simple(self) -> bool:
        return self.r > 0 and self.s > 0

    @property
    def is_parallel(self) -> bool:
        return (self.p + self.q + 2 * self.r) % self.n == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


class QuadKind(enum.Enum):
    SIMPLE = "simple"  # Case 1
    COMPLEX_EXTERIOR = "complex-exterior"  # Case 2
    COMPLEX_INTERIOR = "complex-interior"  # Case 3

    @property
    def is_simple(self) -> bool:
        return self is QuadKind.SIMPLE


@dataclass(frozen=True)
class Classification:
    kind: QuadKind
    wraps: tuple[tuple[int, int], ...]  # consecutive pairs crossing z_0
    arc_counts: tuple[int, int]
    admissible: bool


def delta(i: int, j: int, n: int) -> int:
    """Length of the counter-clockwise path from z_i to z_j, in [1, n-1]."""
    if i == j:
        raise InvalidArgumentError(f"delta needs distinct indices, got {i}")
    return j - i if i < j else n + j - i


def signed_delta(i: int, j: int, n: int) -> int:
    """Shortest signed path from z_i to z_j; a half turn is reported as +n/2."""
    forward = delta(i, j, n)
    backward = -delta(j, i, n)
    return forward if forward <= -backward else backward


def _in_arc(a: int, b: int, x: int, n: int) -> bool:
    return 0 < delta(a, x, n) < delta(a, b, n)


def _check_distinct(q: Quadruplet) -> None:
    if len(set(q.as_tuple())) != 4:
        raise InvalidArgumentError(f"quadruplet {q.as_tuple()} has a repeated index")


def classify_quadruplet(q: Quadruplet) -> Classification:
    """Simple / complex classification with the set of pairs wrapping past z_0."""
    _check_distinct(q)
    i, j, k, ell, n = q.i, q.j, q.k, q.l, q.n
    c1 = _in_arc(i, j, k, n) + _in_arc(i, j, ell, n)
    c2 = _in_arc(k, ell, i, n) + _in_arc(k, ell, j, n)
    wraps = tuple(
        (a, b) for a, b in ((i, j), (j, k), (k, ell), (ell, i)) if delta(a, b, n) == n + b - a
    )
    if c1 == c2 == 1:
        kind = QuadKind.COMPLEX_INTERIOR
    elif c1 != c2:
        kind = QuadKind.COMPLEX_EXTERIOR
    else:
        kind = QuadKind.SIMPLE
    admissible = kind is not QuadKind.SIMPLE or c1 == 0
    return Classification(kind, wraps, (c1, c2), admissible)


def admissible_form(q: Quadruplet) -> Quadruplet:
    """Reorder a simple quadruplet within its two pairs so that it is admissible."""
    cls = classify_quadruplet(q)
    if cls.admissible:
        return q
    return Quadruplet(q.j, q.i, q.l, q.k, q.n)


def triplet_of(q: Quadruplet) -> Triplet:
    """(p, q, r) of a quadruplet; non-admissible simple orderings are reordered first."""
    q = admissible_form(q)
    cls = classify_quadruplet(q)
    n = q.n
    p = delta(q.i, q.j, n)
    qq = delta(q.k, q.l, n)
    r = delta(q.j, q.k, n) if cls.kind.is_simple else signed_delta(q.j, q.k, n)
    if (p + qq + 2 * r) % n == 0:
        raise ParallelLinesError(f"lines of {q.as_tuple()} are parallel (n={n})")
    return Triplet(p, qq, r, n)


def quadruplet_of(i: int, t: Triplet) -> Quadruplet:
    n = t.n
    return Quadruplet(i % n, (i + t.p) % n, (i + t.p + t.r) % n, (i + t.p + t.q + t.r) % n, n)


def radius_sq(t: Triplet) -> float:
    """Squared radius J of the orbit carrying the points of ``t``."""
    n = t.n
    m = t.p + t.q + 2 * t.r
    if m % n == 0:
        raise ParallelLinesError(f"triplet {t.as_tuple()} describes parallel lines")
    cp, cq, cm = cos_pi(t.p, n), cos_pi(t.q, n), cos_pi(m, n)
    sm = sin_pi(m, n)
    return (cp * cp + cq * cq - 2.0 * cp * cq * cm) / (sm * sm)


def radius_sq_quadruplet(q: Quadruplet) -> float:
    """Squared distance from the origin to z_{i,j,k,l}, straight from the indices.

    Uses the vertical-line variant when i + j = 0 (mod n).
    """
    i, j, k, ell, n = q.i, q.j, q.k, q.l, q.n
    if i == j or k == ell:
        raise InvalidArgumentError(f"{q.as_tuple()} does not define two lines")
    if (i + j - (k + ell)) % n == 0:
        raise ParallelLinesError(f"lines of {q.as_tuple()} are parallel (n={n})")
    c_kl = cos_pi(k - ell, n)
    if (i + j) % n == 0 and (k + ell) % n != 0:
        c_ii = cos_pi(2 * i, n)
        c_klp = cos_pi(k + ell, n)
        s_klp = sin_pi(k + ell, n)
        return (c_ii * c_ii + c_kl * c_kl - 2.0 * c_ii * c_kl * c_klp) / (s_klp * s_klp)
    c_ij = cos_pi(i - j, n)
    theta = i + j - (k + ell)
    ct, st = cos_pi(theta, n), sin_pi(theta, n)
    return (c_ij * c_ij + c_kl * c_kl - 2.0 * c_ij * c_kl * ct) / (st * st)


def point_coords(q: Quadruplet) -> PlanePoint:
    """Intersection of line (z_i, z_j) with line (z_k, z_l) by a 2x2 solve."""
    ax, ay = vertex(q.i, q.n)
    bx, by = vertex(q.j, q.n)
    cx, cy = vertex(q.k, q.n)
    dx, dy = vertex(q.l, q.n)
    ux, uy = bx - ax, by - ay
    vx, vy = dx - cx, dy - cy
    det = ux * vy - uy * vx
    if abs(det) < DET_TOL or q.i == q.j or q.k == q.l:
        raise ParallelLinesError(f"lines of {q.as_tuple()} are parallel (n={q.n})")
    wx, wy = cx - ax, cy - ay
    t = (wx * vy - wy * vx) / det
    return PlanePoint(ax + t * ux, ay + t * uy)


def point_closed_form(q: Quadruplet) -> PlanePoint:
    """Trigonometric closed form for z_{i,j,k,l}; used for cross-validation only."""
    i, j, k, ell, n = q.i, q.j, q.k, q.l, q.n
    theta = i + j - (k + ell)
    st = sin_pi(theta, n)
    if abs(st) < DET_TOL:
        raise ParallelLinesError(f"lines of {q.as_tuple()} are parallel (n={n})")
    s_ijp, c_ijp = sin_pi(i + j, n), cos_pi(i + j, n)
    s_klp, c_klp = sin_pi(k + ell, n), cos_pi(k + ell, n)
    c_ijm, c_klm = cos_pi(i - j, n), cos_pi(k - ell, n)
    x = (s_ijp * c_klm - c_ijm * s_klp) / st
    y = (c_ijm * c_klp - c_ijp * c_klm) / st
    return PlanePoint(x, y)


def _same_radius(j1: float, j2: float, tol: float) -> bool:
    return abs(j1 - j2) <= tol * max(1.0, abs(j1), abs(j2))


@dataclass(frozen=True)
class ArcDistance:
    d: float  # arc length on the orbit, >= 0
    rho_real: float  # d / sqrt(J) in units of 2*pi/n, in [0, n/2]
    radius_sq: float


def arc_inner(t1: Triplet, t2: Triplet) -> float:
    """Dot product of the two anchor-0 points through the 2x2 matrix form."""
    n = t1.n
    p1, q1, r1 = t1.p, t1.q, t1.r
    p2, q2, r2 = t2.p, t2.q, t2.r
    a11 = cos_pi(2 * (p1 - p2) + (q1 - q2) + 2 * (r1 - r2), n)
    a12 = -cos_pi(p1 - (2 * p2 + q2 + 2 * r2), n)
    a21 = -cos_pi((2 * p1 + q1 + 2 * r1) - p2, n)
    a22 = cos_pi(p1 - p2, n)
    v1 = (cos_pi(p1, n), cos_pi(q1, n))
    v2 = (cos_pi(p2, n), cos_pi(q2, n))
    form = v2[0] * (a11 * v1[0] + a12 * v1[1]) + v2[1] * (a21 * v1[0] + a22 * v1[1])
    denom = sin_pi(p1 + q1 + 2 * r1, n) * sin_pi(p2 + q2 + 2 * r2, n)
    return form / denom


def arc_distance(t1: Triplet, t2: Triplet, radius_tol: float = RADIUS_TOL) -> ArcDistance:
    """Arc length between the anchor-0 points of two cocyclic triplets.

    The cosine of the angle comes from the matrix form; the sine from the
    cross product of the solved points, so the angle stays accurate near 0
    and pi where arccos alone loses half the digits.
    """
    if t1.n != t2.n:
        raise InvalidArgumentError("triplets belong to different arrangements")
    j1, j2 = radius_sq(t1), radius_sq(t2)
    if not _same_radius(j1, j2, radius_tol):
        raise NotCocyclicError(f"{t1.as_tuple()} and {t2.as_tuple()} lie on different orbits")
    jm = 0.5 * (j1 + j2)
    if jm == 0.0:
        return ArcDistance(0.0, 0.0, 0.0)
    dot = arc_inner(t1, t2)
    a = point_coords(quadruplet_of(0, t1))
    b = point_coords(quadruplet_of(0, t2))
    cross = abs(a.x * b.y - a.y * b.x)
    angle = math.atan2(cross, dot)
    return ArcDistance(math.sqrt(jm) * angle, angle * t1.n / (2.0 * math.pi), jm)


def check_equivalent(
    t1: Triplet,
    t2: Triplet,
    radius_tol: float = RADIUS_TOL,
    shift_tol: float = SHIFT_TOL,
) -> Optional[int]:
    """Shift rho in [0, n) such that t2 anchored at rho meets t1 anchored at 0.

    Returns None when the two n-point families differ.
    """
    try:
        arc = arc_distance(t1, t2, radius_tol)
    except NotCocyclicError:
        return None
    rho = round(arc.rho_real)
    if abs(arc.rho_real - rho) >= shift_tol:
        return None
    n = t1.n
    target = point_coords(quadruplet_of(0, t1))
    tol = 1e-9 * max(1.0, math.sqrt(arc.radius_sq))
    for cand in (rho, -rho):
        if point_coords(quadruplet_of(cand, t2)).close_to(target, tol):
            return cand % n
    return None
