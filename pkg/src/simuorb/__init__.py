"""Circular orbits of the diagonal arrangement of a regular n-gon.

Every intersection point of the lines through pairs of vertices of a regular
n-gon is described by a (p, q, r) triplet.  Triplets are generated directly,
grouped by orbit radius and split into rotation classes, so points are
counted without building the arrangement.
"""

from .errors import (
    AmbiguousGroupingError,
    InvalidArgumentError,
    InvariantViolationError,
    NotCocyclicError,
    OracleRangeError,
    ParallelLinesError,
    SimuorbError,
    UnsupportedError,
)
from .geometry import (
    ArcDistance,
    Classification,
    PlanePoint,
    QuadKind,
    Quadruplet,
    Triplet,
    arc_distance,
    check_equivalent,
    classify_quadruplet,
    delta,
    point_coords,
    quadruplet_of,
    radius_sq,
    radius_sq_quadruplet,
    signed_delta,
    triplet_of,
)
from .enumeration import (
    GeneratorCase,
    TripletRecord,
    TripletTable,
    center_orbit,
    gen_exterior,
    gen_exterior_complex_a,
    gen_exterior_complex_b,
    gen_exterior_simple,
    gen_interior,
    gen_interior_a,
    gen_interior_b,
)
from .orbits import (
    ArrangementSummary,
    EquivalenceClass,
    Orbit,
    Region,
    Tolerances,
    analyze,
    compute_multiplicities,
    group_by_radius,
    known_equivalence_filter,
    materialize_points,
    partition_classes,
    summarize,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
