import math

import numpy as np
import pytest

from simuorb import (
    GeneratorCase,
    InvalidArgumentError,
    QuadKind,
    Triplet,
    center_orbit,
    classify_quadruplet,
    gen_exterior,
    gen_exterior_complex_a,
    gen_exterior_complex_b,
    gen_exterior_simple,
    gen_interior,
    gen_interior_a,
    gen_interior_b,
    group_by_radius,
    quadruplet_of,
    radius_sq,
    triplet_of,
)
from simuorb import _pykernels as ref
from simuorb.enumeration import EXTERIOR_CASES, INTERIOR_CASES, TripletTable, raw_records

GENERATORS = [gen_exterior_simple, gen_exterior_complex_a, gen_exterior_complex_b, gen_interior_a, gen_interior_b]


@pytest.mark.parametrize("gen", GENERATORS + [gen_exterior, gen_interior])
@pytest.mark.parametrize("n", [3, 4])
def test_generators_need_five_vertices(gen, n):
    with pytest.raises(InvalidArgumentError):
        gen(n)


def test_pentagon_has_one_exterior_radius():
    assert len(group_by_radius(gen_exterior(5))) == 1


def test_hexagon_parallel_candidate_skipped():
    assert gen_exterior_simple(6).index_of(1, 1, 2) is None


def test_icosagon_extreme_radii():
    assert gen_exterior_simple(20).sqrt_radius.max() == pytest.approx(12.3551, abs=5e-4)
    interior = gen_interior(20)
    assert interior.sqrt_radius.min() == pytest.approx(0.1584, abs=5e-4)
    # the chord z0z2 meets z1z3 on the 27-degree bisector at cos(18)/cos(9);
    # the printed 0.9269 transposes two digits (see the oracle test below)
    expected = math.cos(math.pi / 10) / math.cos(math.pi / 20)
    assert interior.sqrt_radius.max() == pytest.approx(expected, rel=1e-12)
    assert radius_sq(Triplet(2, 2, -1, 20)) == pytest.approx(expected**2, rel=1e-12)


def test_complex_a_loop_bounds_octagon():
    assert min(ref._r_values(GeneratorCase.EXT_COMPLEX_A, 8, 1)) == -3
    assert ref._q_bounds(GeneratorCase.EXT_COMPLEX_A, 8, 1, -2) == (3, 7)
    t = gen_exterior_complex_a(8)
    rows = set(zip(t.p.tolist(), t.r.tolist(), t.q.tolist()))
    assert (1, -3, 4) in rows
    # q = 3 would make p+q+2r vanish modulo 8
    assert {q for p, r, q in rows if p == 1 and r == -2} == {4, 5, 6, 7}


def test_complex_b_loop_bounds_octagon():
    assert list(ref._r_values(GeneratorCase.EXT_COMPLEX_B, 8, 3)) == [-2]
    assert ref._q_bounds(GeneratorCase.EXT_COMPLEX_B, 8, 3, -2) == (1, 1)


@pytest.mark.parametrize("n,expected", [(6, 2), (7, 5)])
def test_exterior_radius_counts(n, expected):
    assert len(group_by_radius(gen_exterior(n))) == expected


def test_hexagon_interior_radii_without_center():
    # three interior orbits once the center is counted
    assert len(group_by_radius(gen_interior(6))) == 2
    assert center_orbit(6) is not None


def test_dodecagon_interior_groups():
    assert len(group_by_radius(gen_interior(12))) + 1 == 19


def test_icosagon_exterior_groups():
    assert len(group_by_radius(gen_exterior(20))) == 194


def test_group_single_record():
    t = gen_exterior(7)[:1]
    assert len(group_by_radius(t)) == 1


@pytest.mark.parametrize("n,mult", [(4, 2), (8, 4), (30, 15)])
def test_center_orbit(n, mult):
    seed = center_orbit(n)
    assert seed.points == 1 and seed.multiplicity == mult


@pytest.mark.parametrize("n", [3, 5, 9])
def test_no_center_for_odd(n):
    assert center_orbit(n) is None


@pytest.mark.parametrize("n", range(5, 26))
def test_records_are_valid_and_region_consistent(n):
    for table, exterior in ((gen_exterior(n), True), (gen_interior(n), False)):
        assert len(table) > 0
        assert (table.sqrt_radius > 1).all() if exterior else (table.sqrt_radius < 1).all()
        np.testing.assert_allclose(
            table.sqrt_radius,
            [math.sqrt(radius_sq(Triplet(p, q, r, n))) for p, q, r in table.triplets()],
            rtol=1e-12,
        )
        assert all(GeneratorCase(c).is_exterior == exterior for c in table.case.tolist())


@pytest.mark.parametrize("n", range(5, 26))
def test_roundtrip_and_sign_law(n):
    for table in (gen_exterior(n), gen_interior(n)):
        for p, q, r in table.triplets():
            t = Triplet(p, q, r, n)
            quad = quadruplet_of(0, t)
            assert triplet_of(quad) == t
            kind = classify_quadruplet(quad).kind
            assert (kind is QuadKind.SIMPLE) == (r > 0 and t.s > 0)
            assert (kind is not QuadKind.SIMPLE) == (r * t.s < 0)


@pytest.mark.parametrize("n", range(5, 41))
def test_cases_partition_triplets(n):
    cases = [int(c) for c in EXTERIOR_CASES + INTERIOR_CASES]
    seen = set()
    total = 0
    for c in cases:
        p, q, r = ref.generate(n, c)
        total += len(p)
        seen.update(zip(p.tolist(), q.tolist(), r.tolist()))
    assert len(seen) == total


def test_every_intersection_shape_is_generated():
    # brute force over all quadruplets of vertex indices: each non-parallel
    # pair of chords reduces to a triplet some generator produces
    for n in (5, 6, 9, 12):
        produced = set(gen_exterior(n).triplets()) | set(gen_interior(n).triplets())
        radii = {round(math.sqrt(radius_sq(Triplet(*t, n))), 9) for t in produced}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):  # noqa: E741
                        if len({i, j, k, l}) < 4 or (i + j - k - l) % n == 0:
                            continue
                        from simuorb import Quadruplet

                        t = triplet_of(Quadruplet(i, j, k, l, n))
                        jt = radius_sq(t)
                        if jt < 1e-20 or abs(jt - 1) < 1e-12:
                            continue
                        assert round(math.sqrt(jt), 9) in radii


def test_table_is_sorted_by_decreasing_radius():
    t = TripletTable.build(30, EXTERIOR_CASES)
    assert (np.diff(t.sqrt_radius) <= 0).all()
    # the extended key may only disagree with that order at rounding level
    assert (np.diff(t.radius_key) <= 1e-15 * t.radius_key[1:]).all()


def test_raw_records_has_no_duplicates():
    n, p, q, r, case, key = raw_records(33, EXTERIOR_CASES + INTERIOR_CASES)
    assert len(set(zip(p.tolist(), q.tolist(), r.tolist()))) == len(p)
    assert key.dtype == np.longdouble
