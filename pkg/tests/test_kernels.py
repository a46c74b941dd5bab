import numpy as np
import pytest

from simuorb import kernels
from simuorb.enumeration import EXTERIOR_CASES, INTERIOR_CASES, TripletTable
from simuorb.orbits import DEFAULT_TOLERANCES, _group_bounds

py = kernels.backend_module("python")
try:
    cy = kernels.backend_module("cython")
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")
CASES = [int(c) for c in EXTERIOR_CASES + INTERIOR_CASES]


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
    assert py.BACKEND == "python"


@needs_cython
@pytest.mark.parametrize("n", [5, 6, 12, 20, 31, 48])
def test_generation_identical(n):
    for c in CASES:
        for a, b in zip(py.generate(n, c), cy.generate(n, c)):
            np.testing.assert_array_equal(a, b)
    for a, b in zip(py.generate_many(n, CASES), cy.generate_many(n, CASES)):
        np.testing.assert_array_equal(a, b)


@needs_cython
@pytest.mark.parametrize("n", [5, 12, 31, 48])
def test_radius_identical(n):
    p, q, r, _ = py.generate_many(n, CASES)
    np.testing.assert_array_equal(py.radius_sq(n, p, q, r), cy.radius_sq(n, p, q, r))
    np.testing.assert_array_equal(py.radius_key(n, p, q, r), cy.radius_key(n, p, q, r))
    assert py.has_duplicates(n, p, q, r) == cy.has_duplicates(n, p, q, r) is False
    dup = np.concatenate((p, p[:1])), np.concatenate((q, q[:1])), np.concatenate((r, r[:1]))
    assert py.has_duplicates(n, *dup) and cy.has_duplicates(n, *dup)


@needs_cython
@pytest.mark.parametrize("n", [9, 24])
def test_resolution_kernels_identical(n):
    table = TripletTable.build(n, INTERIOR_CASES)
    for a, b in zip(py.anchor_points(n, table.p, table.q, table.r), cy.anchor_points(n, table.p, table.q, table.r)):
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)
    x, y = py.anchor_points(n, table.p, table.q, table.r)
    size = len(table)
    rng = np.random.default_rng(n)
    src, dst, shift = rng.integers(0, size, 50), rng.integers(0, size, 50), rng.integers(0, n, 50)
    for a, b in zip(py.union_links(size, n, src, dst, shift), cy.union_links(size, n, src, dst, shift)):
        np.testing.assert_array_equal(a, b)
    starts, ends = _group_bounds(table.radius_key, DEFAULT_TOLERANCES)
    root = np.arange(size, dtype=np.int64)
    sj = np.asarray(table.radius_key, dtype=np.float64)
    args = (n, starts, ends, root, x, y, sj, DEFAULT_TOLERANCES.shift, DEFAULT_TOLERANCES.radius)
    for a, b in zip(py.match_roots(*args), cy.match_roots(*args)):
        np.testing.assert_array_equal(a, b)


def test_pure_python_end_to_end(monkeypatch):
    import simuorb.enumeration as enumeration
    import simuorb.orbits as orbits

    expected = orbits.summarize(16)
    monkeypatch.setattr(enumeration, "kernels", py)
    monkeypatch.setattr(orbits, "kernels", py)
    assert orbits.summarize(16) == expected


def test_environment_forces_fallback():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "import simuorb; print(simuorb.BACKEND)"],
        env={"SIMUORB_PURE_PYTHON": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
