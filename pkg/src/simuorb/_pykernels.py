"""Pure-Python implementations of the hot loops.

Same signatures and outputs as the compiled ``_kernels`` module; used when the
extension is not built or when ``SIMUORB_PURE_PYTHON=1``.
"""

import math

import numpy as np

EXT_SIMPLE = 0
EXT_COMPLEX_A = 1
EXT_COMPLEX_B = 2
INT_A = 3
INT_B = 4

BACKEND = "python"
PI_LD = 4 * np.arctan(np.longdouble(1))


def _r_values(case, n, p):
    n1 = n // 2
    n2 = (n - 1) // 2
    if case == EXT_SIMPLE:
        return range(1, n - p - 1)
    if case == EXT_COMPLEX_A:
        if p >= n2:
            return range(2, n - p)
        return list(range(-n2, -p)) + list(range(2, n1 + 1))
    if case == EXT_COMPLEX_B:
        if p <= n1 + 1:
            return range(-p + 1, -1)
        return list(range(-n1, -1)) + list(range(n - p + 1, n2 + 1))
    if case == INT_A:
        if p <= n1 + 1:
            return range(-p + 1, 0)
        return list(range(-n1, 0)) + list(range(n - p + 1, n2 + 1))
    if case == INT_B:
        if p >= n2:
            return range(1, n - p)
        return list(range(1, n1 + 1)) + list(range(-n2, -p))
    raise ValueError(f"unknown generator case {case}")


def _q_bounds(case, n, p, r):
    if case == EXT_SIMPLE:
        return 1, n - p - r - 1
    if case == EXT_COMPLEX_A:
        return (n - r + 1, n - 1) if r > 0 else (-r + 1, n - 1)
    if case == EXT_COMPLEX_B:
        return (1, -r - 1) if r < 0 else (1, n - r - 1)
    if case == INT_A:
        return (-r + 1, n - r - p - 1) if r < 0 else (n - r + 1, 2 * n - r - p - 1)
    return (-r - p + 1, -r - 1) if r < 0 else (n - p - r + 1, n - r - 1)


def _p_range(case, n):
    if case in (EXT_SIMPLE, EXT_COMPLEX_A):
        return range(1, n - 2)
    if case == EXT_COMPLEX_B:
        return range(3, n)
    return range(2, n - 1)


def generate(n, case):
    """Run one triple loop; returns raw (p, q, r) int64 arrays.

    Parallel pairs are skipped, the center configuration (p = q = n/2) is
    skipped, r = -n/2 is folded onto +n/2 and q is clamped to [1, n-1].
    Output may contain duplicates.
    """
    n = int(n)
    half = n // 2 if n % 2 == 0 else 0
    ps, qs, rs = [], [], []
    for p in _p_range(case, n):
        for r in _r_values(case, n, p):
            lo, hi = _q_bounds(case, n, p, r)
            lo = max(lo, 1)
            hi = min(hi, n - 1)
            rc = half if (half and r == -half) else r
            for q in range(lo, hi + 1):
                if (p + q + 2 * r) % n == 0:
                    continue
                if half and p == half and q == half:
                    continue
                ps.append(p)
                qs.append(q)
                rs.append(rc)
    return (
        np.array(ps, dtype=np.int64),
        np.array(qs, dtype=np.int64),
        np.array(rs, dtype=np.int64),
    )


def radius_sq(n, p, q, r):
    """Squared orbit radius for arrays of triplets, in extended precision.

    Returns a ``np.longdouble`` array; the extra bits keep distinct orbits
    separable when their radii differ by less than double-precision noise.
    """
    n = int(n)
    two_n = 2 * n
    ang = np.arange(two_n, dtype=np.longdouble) * PI_LD / np.longdouble(n)
    cos_tab = np.cos(ang)
    sin_tab = np.sin(ang)
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    r = np.asarray(r, dtype=np.int64)
    m = (p + q + 2 * r) % two_n
    cp = cos_tab[p % two_n]
    cq = cos_tab[q % two_n]
    sm = sin_tab[m]
    return (cp * cp + cq * cq - 2 * cp * cq * cos_tab[m]) / (sm * sm)


def anchor_points(n, p, q, r):
    """Intersection of lines (z_0, z_p) and (z_{p+r}, z_{p+q+r}) for each triplet.

    Solved as a 2x2 linear system on the endpoint coordinates.
    """
    n = int(n)
    cx = [math.cos(2.0 * math.pi * m / n) for m in range(n)]
    cy = [math.sin(2.0 * math.pi * m / n) for m in range(n)]
    xs = np.empty(len(p), dtype=np.float64)
    ys = np.empty(len(p), dtype=np.float64)
    for idx in range(len(p)):
        pi_, qi, ri = int(p[idx]), int(q[idx]), int(r[idx])
        j = pi_ % n
        k = (pi_ + ri) % n
        ell = (pi_ + qi + ri) % n
        ax, ay = cx[0], cy[0]
        ux, uy = cx[j] - ax, cy[j] - ay
        vx, vy = cx[ell] - cx[k], cy[ell] - cy[k]
        wx, wy = cx[k] - ax, cy[k] - ay
        det = ux * vy - uy * vx
        t = (wx * vy - wy * vx) / det
        xs[idx] = ax + t * ux
        ys[idx] = ay + t * uy
    return xs, ys


def _find(parent, pot, x, n):
    # iterative find with path compression; pot[x] is relative to parent[x]
    path = []
    while parent[x] != x:
        path.append(x)
        x = parent[x]
    root = x
    acc = 0
    for node in reversed(path):
        acc = (acc + pot[node]) % n
        pot[node] = acc
        parent[node] = root
    return root


def union_links(size, n, src, dst, shift, parent=None, pot=None):
    """Weighted union-find over equivalence links.

    A link (i, j, rho) states that the point of triplet j anchored at rho
    equals the point of triplet i anchored at 0.  On return, the point of
    item x anchored at pot[x] equals the point of parent[x] anchored at 0.
    Returns (parent, pot, conflicts) where conflicts counts links that
    contradicted earlier ones.
    """
    n = int(n)
    if parent is None:
        parent = list(range(size))
        pot = [0] * size
    else:
        parent = [int(v) for v in parent]
        pot = [int(v) for v in pot]
    conflicts = 0
    for idx in range(len(src)):
        i, j, rho = int(src[idx]), int(dst[idx]), int(shift[idx])
        ri = _find(parent, pot, i, n)
        rj = _find(parent, pot, j, n)
        pi_ = pot[i] if i != ri else 0
        pj = pot[j] if j != rj else 0
        if ri == rj:
            if (pi_ + rho - pj) % n != 0:
                conflicts += 1
            continue
        parent[rj] = ri
        pot[rj] = (pi_ + rho - pj) % n
    for x in range(size):
        _find(parent, pot, x, n)
        if parent[x] == x:
            pot[x] = 0
    return (
        np.array(parent, dtype=np.int64),
        np.array(pot, dtype=np.int64),
        conflicts,
    )


def match_roots(n, starts, ends, root, x, y, sqrt_j, shift_tol, radius_tol):
    """Arc-distance fallback between the components left after the filter.

    For every radius group [starts[g], ends[g]) the distinct roots are
    compared against the anchors of the classes found so far; an integer
    angular shift (within shift_tol) links them.  Returns link arrays.
    """
    n = int(n)
    scale = n / (2.0 * math.pi)
    src, dst, shift = [], [], []
    for g in range(len(starts)):
        anchors = []
        seen = set()
        for idx in range(int(starts[g]), int(ends[g])):
            rt = int(root[idx])
            if rt in seen:
                continue
            seen.add(rt)
            xr, yr = float(x[rt]), float(y[rt])
            jr = float(sqrt_j[rt])
            matched = False
            for a in anchors:
                ja = float(sqrt_j[a])
                if abs(ja - jr) > radius_tol * max(1.0, ja):
                    continue
                xa, ya = float(x[a]), float(y[a])
                theta = math.atan2(xr * ya - yr * xa, xr * xa + yr * ya)
                rho_real = theta * scale
                rho = round(rho_real)
                if abs(rho_real - rho) < shift_tol:
                    src.append(a)
                    dst.append(rt)
                    shift.append(rho % n)
                    matched = True
                    break
            if not matched:
                anchors.append(rt)
    return (
        np.array(src, dtype=np.int64),
        np.array(dst, dtype=np.int64),
        np.array(shift, dtype=np.int64),
    )


def generate_many(n, cases):
    """Run several triple loops; returns concatenated (p, q, r, case) arrays."""
    chunks = [generate(n, c) for c in cases]
    tags = [np.full(len(ch[0]), c, dtype=np.int8) for ch, c in zip(chunks, cases)]
    if not chunks:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty, np.empty(0, dtype=np.int8)
    return (
        np.concatenate([ch[0] for ch in chunks]),
        np.concatenate([ch[1] for ch in chunks]),
        np.concatenate([ch[2] for ch in chunks]),
        np.concatenate(tags),
    )


def radius_key(n, p, q, r):
    """sqrt(J) in extended precision."""
    return np.sqrt(radius_sq(n, p, q, r))


def has_duplicates(n, p, q, r):
    """True when some (p, q, r) row occurs twice."""
    if len(p) == 0:
        return False
    key = (np.asarray(p) * n + np.asarray(q)) * (2 * n) + (np.asarray(r) + n)
    return bool(np.bincount(key).max() > 1)
