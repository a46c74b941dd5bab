import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simuorb import (
    QuadKind,
    Region,
    Triplet,
    analyze,
    check_equivalent,
    classify_quadruplet,
    gen_exterior,
    gen_interior,
    quadruplet_of,
    radius_sq,
    triplet_of,
)
from simuorb.orbits import _TWELVE


def is_valid(n, p, q, r):
    s = n - p - q - r
    return all(v % n for v in (r, s, p + r, q + r)) and (p + q + 2 * r) % n != 0


@st.composite
def triplets(draw, max_n=60):
    n = draw(st.integers(5, max_n))
    p = draw(st.integers(1, n - 1))
    q = draw(st.integers(1, n - 1))
    r = draw(st.integers(-(n - 1), n - 1).filter(lambda r: is_valid(n, p, q, r)))
    return Triplet(p, q, r, n)


def random_triplets(count, max_n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(5, max_n)
        p, q, r = rng.randint(1, n - 1), rng.randint(1, n - 1), rng.randint(-(n - 1), n - 1)
        if is_valid(n, p, q, r):
            out.append(Triplet(p, q, r, n))
    return out


def images(t):
    n, p, q, r, s = t.n, t.p, t.q, t.r, t.s
    return [Triplet(q, p, r, n), Triplet(p, q, s, n), Triplet(n - p, q, p + r, n), Triplet(n - p, q, -q - r, n)]


def close(a, b):
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15)


def check_symmetries(t):
    j = radius_sq(t)
    # numerator <= (|cos p| + |cos q|)^2 <= 4, |sin((p+q+2r)pi/n)| >= sin(pi/n)
    assert 0.0 <= j <= 4.0 / math.sin(math.pi / t.n) ** 2 * (1 + 1e-12)
    for u in images(t):
        assert close(radius_sq(u), j), (t, u)


def test_radius_symmetries_sweep():
    for t in random_triplets(10_000, 60, seed=2024):
        check_symmetries(t)


@settings(max_examples=300, deadline=None)
@given(triplets())
def test_radius_symmetries_hypothesis(t):
    check_symmetries(t)


@settings(max_examples=200, deadline=None)
@given(triplets(max_n=40))
def test_radius_matches_high_precision(t):
    mpmath.mp.dps = 40
    n, p, q = t.n, t.p, t.q
    cp, cq = mpmath.cospi(mpmath.mpf(p) / n), mpmath.cospi(mpmath.mpf(q) / n)
    m = mpmath.mpf(p + q + 2 * t.r) / n
    exact = (cp**2 + cq**2 - 2 * cp * cq * mpmath.cospi(m)) / mpmath.sinpi(m) ** 2
    assert math.isclose(radius_sq(t), float(exact), rel_tol=1e-12, abs_tol=1e-15)


@st.composite
def generated(draw, max_n=25):
    n = draw(st.integers(5, max_n))
    table = gen_exterior(n) if draw(st.booleans()) else gen_interior(n)
    p, q, r = table.triplets()[draw(st.integers(0, len(table) - 1))]
    return Triplet(p, q, r, n)


@settings(max_examples=300, deadline=None)
@given(generated())
def test_roundtrip_and_sign_law_hypothesis(t):
    quad = quadruplet_of(0, t)
    assert triplet_of(quad) == t
    simple = classify_quadruplet(quad).kind is QuadKind.SIMPLE
    assert simple == (t.r > 0 and t.s > 0)
    assert (not simple) == (t.r * t.s < 0)


@pytest.mark.parametrize("n", range(5, 21))
def test_shift_algebra(n):
    for orbit in analyze(n, detail=True):
        for cls in orbit.classes:
            members = [m for m, _ in cls.members]
            rho = {(a, b): check_equivalent(a, b) for a in members for b in members}
            for (a, b), v in rho.items():
                assert v is not None
                assert (v + rho[(b, a)]) % n == 0
            for a in members:
                for b in members:
                    for c in members:
                        assert (rho[(a, b)] + rho[(b, c)] - rho[(a, c)]) % n == 0


def class_index(classes, t):
    hits = [(c, check_equivalent(c.anchor, t)) for c in classes]
    hits = [(c, s) for c, s in hits if s is not None]
    assert len(hits) == 1, t
    return hits[0]


@pytest.mark.parametrize("n", [12, 24, 36])
def test_twelve_fold_equivalences_found_without_filter(n):
    k = n // 12
    orbits = analyze(n, detail=True, use_filter=False)
    for a, b, rho in _TWELVE:
        t1, t2 = Triplet(*(k * v for v in a), n), Triplet(*(k * v for v in b), n)
        j = math.sqrt(radius_sq(t1))
        region = Region.EXTERIOR if j > 1 else Region.INTERIOR
        orbit = [o for o in orbits if o.region is region and abs(o.sqrt_radius - j) <= 1e-9 * max(1, j)]
        assert len(orbit) == 1
        c1, s1 = class_index(orbit[0].classes, t1)
        c2, s2 = class_index(orbit[0].classes, t2)
        assert c1 is c2
        assert (s2 - s1 - k * rho) % n == 0
