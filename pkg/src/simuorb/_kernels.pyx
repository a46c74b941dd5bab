# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; mirrors ``_pykernels`` function for function."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, fabs, round as c_round, M_PI
from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, malloc, free

cnp.import_array()

cdef extern from "math.h":
    long double cosl(long double x) nogil
    long double sinl(long double x) nogil
    long double atanl(long double x) nogil
    long double sqrtl(long double x) nogil

BACKEND = "cython"

cdef enum:
    EXT_SIMPLE = 0
    EXT_COMPLEX_A = 1
    EXT_COMPLEX_B = 2
    INT_A = 3
    INT_B = 4


cdef inline int64_t _imax(int64_t a, int64_t b) nogil:
    return a if a > b else b


cdef inline int64_t _imin(int64_t a, int64_t b) nogil:
    return a if a < b else b


cdef inline int64_t _mod(int64_t a, int64_t n) nogil:
    cdef int64_t m = a % n
    return m + n if m < 0 else m


cdef void _r_intervals(int case, int64_t n, int64_t p, int64_t* iv) nogil:
    # two half-open intervals [iv0, iv1) and [iv2, iv3)
    cdef int64_t n1 = n // 2
    cdef int64_t n2 = (n - 1) // 2
    iv[2] = 0
    iv[3] = 0
    if case == EXT_SIMPLE:
        iv[0] = 1; iv[1] = n - p - 1
    elif case == EXT_COMPLEX_A:
        if p >= n2:
            iv[0] = 2; iv[1] = n - p
        else:
            iv[0] = -n2; iv[1] = -p; iv[2] = 2; iv[3] = n1 + 1
    elif case == EXT_COMPLEX_B:
        if p <= n1 + 1:
            iv[0] = -p + 1; iv[1] = -1
        else:
            iv[0] = -n1; iv[1] = -1; iv[2] = n - p + 1; iv[3] = n2 + 1
    elif case == INT_A:
        if p <= n1 + 1:
            iv[0] = -p + 1; iv[1] = 0
        else:
            iv[0] = -n1; iv[1] = 0; iv[2] = n - p + 1; iv[3] = n2 + 1
    else:
        if p >= n2:
            iv[0] = 1; iv[1] = n - p
        else:
            iv[0] = 1; iv[1] = n1 + 1; iv[2] = -n2; iv[3] = -p


cdef void _q_bounds(int case, int64_t n, int64_t p, int64_t r, int64_t* lo, int64_t* hi) nogil:
    if case == EXT_SIMPLE:
        lo[0] = 1; hi[0] = n - p - r - 1
    elif case == EXT_COMPLEX_A:
        if r > 0:
            lo[0] = n - r + 1; hi[0] = n - 1
        else:
            lo[0] = -r + 1; hi[0] = n - 1
    elif case == EXT_COMPLEX_B:
        if r < 0:
            lo[0] = 1; hi[0] = -r - 1
        else:
            lo[0] = 1; hi[0] = n - r - 1
    elif case == INT_A:
        if r < 0:
            lo[0] = -r + 1; hi[0] = n - r - p - 1
        else:
            lo[0] = n - r + 1; hi[0] = 2 * n - r - p - 1
    else:
        if r < 0:
            lo[0] = -r - p + 1; hi[0] = -r - 1
        else:
            lo[0] = n - p - r + 1; hi[0] = n - r - 1
    lo[0] = _imax(lo[0], 1)
    hi[0] = _imin(hi[0], n - 1)


cdef int64_t _loop(int case, int64_t n, int64_t* ps, int64_t* qs, int64_t* rs) nogil:
    # counts when ps is NULL, fills otherwise
    cdef int64_t half = n // 2 if n % 2 == 0 else 0
    cdef int64_t p_lo, p_hi, p, r, q, rc, lo, hi, k, count = 0
    cdef int64_t iv[4]
    if case == EXT_SIMPLE or case == EXT_COMPLEX_A:
        p_lo = 1; p_hi = n - 2
    elif case == EXT_COMPLEX_B:
        p_lo = 3; p_hi = n
    else:
        p_lo = 2; p_hi = n - 1
    for p in range(p_lo, p_hi):
        _r_intervals(case, n, p, iv)
        for k in range(2):
            for r in range(iv[2 * k], iv[2 * k + 1]):
                _q_bounds(case, n, p, r, &lo, &hi)
                rc = half if (half != 0 and r == -half) else r
                for q in range(lo, hi + 1):
                    if (p + q + 2 * r) % n == 0:
                        continue
                    if half != 0 and p == half and q == half:
                        continue
                    if ps != NULL:
                        ps[count] = p
                        qs[count] = q
                        rs[count] = rc
                    count += 1
    return count


def generate(n, case):
    """Run one triple loop; returns raw (p, q, r) int64 arrays."""
    cdef int64_t nn = n
    cdef int c = case
    if c < 0 or c > 4:
        raise ValueError(f"unknown generator case {case}")
    cdef int64_t size = _loop(c, nn, NULL, NULL, NULL)
    cdef cnp.ndarray[int64_t, ndim=1] ps = np.empty(size, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] qs = np.empty(size, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] rs = np.empty(size, dtype=np.int64)
    if size:
        _loop(c, nn, &ps[0], &qs[0], &rs[0])
    return ps, qs, rs


def radius_sq(n, p, q, r):
    """Squared orbit radius for arrays of triplets, in extended precision."""
    cdef int64_t nn = n
    cdef int64_t two_n = 2 * nn
    cdef const int64_t[::1] pv = np.ascontiguousarray(p, dtype=np.int64)
    cdef const int64_t[::1] qv = np.ascontiguousarray(q, dtype=np.int64)
    cdef const int64_t[::1] rv = np.ascontiguousarray(r, dtype=np.int64)
    cdef Py_ssize_t size = pv.shape[0], idx
    out = np.empty(size, dtype=np.longdouble)
    cdef long double[::1] ov = out
    cdef long double pi_ld = 4.0 * atanl(1.0)
    cdef long double* ctab = <long double*> malloc(two_n * sizeof(long double))
    cdef long double* stab = <long double*> malloc(two_n * sizeof(long double))
    cdef long double cp, cq, cm, sm
    cdef int64_t k, m
    if ctab == NULL or stab == NULL:
        free(ctab)
        free(stab)
        raise MemoryError()
    try:
        with nogil:
            for k in range(two_n):
                ctab[k] = cosl(<long double> k * pi_ld / <long double> nn)
                stab[k] = sinl(<long double> k * pi_ld / <long double> nn)
            for idx in range(size):
                m = _mod(pv[idx] + qv[idx] + 2 * rv[idx], two_n)
                cp = ctab[_mod(pv[idx], two_n)]
                cq = ctab[_mod(qv[idx], two_n)]
                cm = ctab[m]
                sm = stab[m]
                ov[idx] = (cp * cp + cq * cq - 2 * cp * cq * cm) / (sm * sm)
    finally:
        free(ctab)
        free(stab)
    return out


def anchor_points(n, p, q, r):
    """Intersection of lines (z_0, z_p) and (z_{p+r}, z_{p+q+r}) for each triplet."""
    cdef int64_t nn = n
    cdef const int64_t[::1] pv = np.ascontiguousarray(p, dtype=np.int64)
    cdef const int64_t[::1] qv = np.ascontiguousarray(q, dtype=np.int64)
    cdef const int64_t[::1] rv = np.ascontiguousarray(r, dtype=np.int64)
    cdef Py_ssize_t size = pv.shape[0], idx
    xs = np.empty(size, dtype=np.float64)
    ys = np.empty(size, dtype=np.float64)
    cdef double[::1] xv = xs
    cdef double[::1] yv = ys
    cdef double[::1] cx = np.cos(2.0 * np.pi * np.arange(nn) / nn)
    cdef double[::1] cy = np.sin(2.0 * np.pi * np.arange(nn) / nn)
    cdef int64_t j, k, ell
    cdef double ax, ay, ux, uy, vx, vy, wx, wy, det, t
    with nogil:
        for idx in range(size):
            j = _mod(pv[idx], nn)
            k = _mod(pv[idx] + rv[idx], nn)
            ell = _mod(pv[idx] + qv[idx] + rv[idx], nn)
            ax = cx[0]
            ay = cy[0]
            ux = cx[j] - ax
            uy = cy[j] - ay
            vx = cx[ell] - cx[k]
            vy = cy[ell] - cy[k]
            wx = cx[k] - ax
            wy = cy[k] - ay
            det = ux * vy - uy * vx
            t = (wx * vy - wy * vx) / det
            xv[idx] = ax + t * ux
            yv[idx] = ay + t * uy
    return xs, ys


cdef Py_ssize_t _find(int64_t* parent, int64_t* pot, Py_ssize_t x, int64_t n) nogil:
    cdef Py_ssize_t root = x, node, nxt
    cdef int64_t tot = 0, old
    while parent[root] != root:
        tot += pot[root]
        root = parent[root]
    tot = _mod(tot, n)
    node = x
    while node != root:
        nxt = parent[node]
        old = pot[node]
        pot[node] = tot
        parent[node] = root
        tot = _mod(tot - old, n)
        node = nxt
    return root


def union_links(size, n, src, dst, shift, parent=None, pot=None):
    """Weighted union-find over equivalence links; see the pure-Python twin."""
    cdef int64_t nn = n
    cdef Py_ssize_t sz = size
    if parent is None:
        par_arr = np.arange(sz, dtype=np.int64)
        pot_arr = np.zeros(sz, dtype=np.int64)
    else:
        par_arr = np.array(parent, dtype=np.int64)
        pot_arr = np.array(pot, dtype=np.int64)
    cdef int64_t[::1] pa = par_arr
    cdef int64_t[::1] po = pot_arr
    cdef const int64_t[::1] sv = np.ascontiguousarray(src, dtype=np.int64)
    cdef const int64_t[::1] dv = np.ascontiguousarray(dst, dtype=np.int64)
    cdef const int64_t[::1] hv = np.ascontiguousarray(shift, dtype=np.int64)
    cdef Py_ssize_t links = sv.shape[0], idx, i, j, ri, rj, x
    cdef int64_t pi_, pj, rho, conflicts = 0
    cdef int64_t* P = &pa[0] if sz else NULL
    cdef int64_t* T = &po[0] if sz else NULL
    with nogil:
        for idx in range(links):
            i = sv[idx]
            j = dv[idx]
            rho = hv[idx]
            ri = _find(P, T, i, nn)
            rj = _find(P, T, j, nn)
            pi_ = T[i] if i != ri else 0
            pj = T[j] if j != rj else 0
            if ri == rj:
                if _mod(pi_ + rho - pj, nn) != 0:
                    conflicts += 1
                continue
            P[rj] = ri
            T[rj] = _mod(pi_ + rho - pj, nn)
        for x in range(sz):
            _find(P, T, x, nn)
            if P[x] == x:
                T[x] = 0
    return par_arr, pot_arr, int(conflicts)


def match_roots(n, starts, ends, root, x, y, sqrt_j, double shift_tol, double radius_tol):
    """Arc-distance fallback between the components left after the filter."""
    cdef int64_t nn = n
    cdef const int64_t[::1] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const int64_t[::1] en = np.ascontiguousarray(ends, dtype=np.int64)
    cdef const int64_t[::1] rt = np.ascontiguousarray(root, dtype=np.int64)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[::1] jv = np.ascontiguousarray(sqrt_j, dtype=np.float64)
    cdef Py_ssize_t size = rt.shape[0], groups = st.shape[0]
    src_arr = np.empty(size, dtype=np.int64)
    dst_arr = np.empty(size, dtype=np.int64)
    sh_arr = np.empty(size, dtype=np.int64)
    seen_arr = np.zeros(size, dtype=np.int64)
    anc_arr = np.empty(size, dtype=np.int64)
    cdef int64_t[::1] so = src_arr
    cdef int64_t[::1] do = dst_arr
    cdef int64_t[::1] ho = sh_arr
    cdef int64_t[::1] seen = seen_arr
    cdef int64_t[::1] anchors = anc_arr
    cdef double scale = nn / (2.0 * M_PI)
    cdef Py_ssize_t g, idx, a, k, n_anchor, out = 0
    cdef int64_t r_, rho
    cdef double xr, yr, jr, ja, xa, ya, theta, rho_real
    cdef bint matched
    with nogil:
        for g in range(groups):
            n_anchor = 0
            for idx in range(st[g], en[g]):
                r_ = rt[idx]
                if seen[r_] == g + 1:
                    continue
                seen[r_] = g + 1
                xr = xv[r_]
                yr = yv[r_]
                jr = jv[r_]
                matched = False
                for k in range(n_anchor):
                    a = anchors[k]
                    ja = jv[a]
                    if fabs(ja - jr) > radius_tol * (ja if ja > 1.0 else 1.0):
                        continue
                    xa = xv[a]
                    ya = yv[a]
                    theta = atan2(xr * ya - yr * xa, xr * xa + yr * ya)
                    rho_real = theta * scale
                    rho = <int64_t> c_round(rho_real)
                    if fabs(rho_real - <double> rho) < shift_tol:
                        so[out] = a
                        do[out] = r_
                        ho[out] = _mod(rho, nn)
                        out += 1
                        matched = True
                        break
                if not matched:
                    anchors[n_anchor] = r_
                    n_anchor += 1
    return src_arr[:out].copy(), dst_arr[:out].copy(), sh_arr[:out].copy()


def generate_many(n, cases):
    """Run several triple loops; returns concatenated (p, q, r, case) arrays."""
    cdef int64_t nn = n
    cdef int64_t total = 0, off = 0, m
    cdef int c
    cases = [int(c_) for c_ in cases]
    for c in cases:
        if c < 0 or c > 4:
            raise ValueError(f"unknown generator case {c}")
        total += _loop(c, nn, NULL, NULL, NULL)
    cdef cnp.ndarray[int64_t, ndim=1] ps = np.empty(total, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] qs = np.empty(total, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] rs = np.empty(total, dtype=np.int64)
    tags = np.empty(total, dtype=np.int8)
    for c in cases:
        if off == total:
            break
        m = _loop(c, nn, &ps[off], &qs[off], &rs[off])
        tags[off:off + m] = c
        off += m
    return ps, qs, rs, tags


def radius_key(n, p, q, r):
    """sqrt(J) in extended precision."""
    out = radius_sq(n, p, q, r)
    cdef long double[::1] ov = out
    cdef Py_ssize_t idx
    with nogil:
        for idx in range(ov.shape[0]):
            ov[idx] = sqrtl(ov[idx])
    return out


def has_duplicates(n, p, q, r):
    """True when some (p, q, r) row occurs twice."""
    cdef int64_t nn = n
    cdef const int64_t[::1] pv = np.ascontiguousarray(p, dtype=np.int64)
    cdef const int64_t[::1] qv = np.ascontiguousarray(q, dtype=np.int64)
    cdef const int64_t[::1] rv = np.ascontiguousarray(r, dtype=np.int64)
    cdef Py_ssize_t size = pv.shape[0], idx
    cdef int64_t span = nn * nn * 2 * nn, key
    cdef unsigned char* seen = <unsigned char*> calloc(span, 1)
    cdef bint dup = False
    if seen == NULL:
        raise MemoryError()
    with nogil:
        for idx in range(size):
            key = (pv[idx] * nn + qv[idx]) * (2 * nn) + rv[idx] + nn
            if key < 0 or key >= span:
                continue
            if seen[key]:
                dup = True
                break
            seen[key] = 1
    free(seen)
    return bool(dup)
