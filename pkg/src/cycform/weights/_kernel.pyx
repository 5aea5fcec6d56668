# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernel; bit-identical twin of _fallback.py.

Every floating-point operation and its order mirrors the fallback line by
line (the extension is built with -ffp-contract=off so the compiler cannot
fuse multiply-adds).  Edit both files together.
"""

from libc.math cimport cos, fabs, sin, sqrt

ctypedef unsigned long long u64

DEF MAX_N = 8
DEF MAX_M = 15
DEF MAX_DIM = 24
DEF MAX_EDGES = 24

cdef double TWO_PI = 6.283185307179586476925287
cdef double COLLISION_TOL = 1e-12
cdef int MAX_ATTEMPTS = 64
cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef u64 GAMMA_SAMPLE = 0x9E3779B97F4A7C15ULL
cdef u64 GAMMA_DRAW = 0xD1B54A32D192ED03ULL


cdef inline u64 _mix64(u64 z) nogil:
    z ^= z >> 30
    z = z * 0xBF58476D1CE4E5B9ULL
    z ^= z >> 27
    z = z * 0x94D049BB133111EBULL
    z ^= z >> 31
    return z


cdef inline double _u01(u64 base, u64 draw) nogil:
    cdef u64 z = _mix64(base + draw * GAMMA_DRAW)
    return <double>(z >> 11) * INV_2_53


cdef inline double _lu_det(double* mat, int dim) nogil:
    cdef double det = 1.0
    cdef int col, r, c, piv
    cdef double best, a, pivot, inv, f, tmp
    for col in range(dim):
        piv = col
        best = fabs(mat[col * dim + col])
        for r in range(col + 1, dim):
            a = fabs(mat[r * dim + col])
            if a > best:
                best = a
                piv = r
        if best == 0.0:
            return 0.0
        if piv != col:
            for c in range(dim):
                tmp = mat[piv * dim + c]
                mat[piv * dim + c] = mat[col * dim + c]
                mat[col * dim + c] = tmp
            det = -det
        pivot = mat[col * dim + col]
        det *= pivot
        inv = 1.0 / pivot
        for r in range(col + 1, dim):
            f = mat[r * dim + col] * inv
            if f != 0.0:
                for c in range(col + 1, dim):
                    mat[r * dim + c] -= f * mat[col * dim + c]
    return det


cdef inline int _angle_col(int k, int slice_index) nogil:
    if k < slice_index:
        return k
    return k - 1


cdef inline bint _well_separated(int n, int m, double* xs, double* ys,
                                 double* bx, double* by) nogil:
    cdef int j, j2, k, k2
    cdef double x, y, dx, dy
    for j in range(1, n + 1):
        x = xs[j]
        y = ys[j]
        if sqrt(x * x + y * y) < COLLISION_TOL:
            return 0
        for j2 in range(j + 1, n + 1):
            dx = x - xs[j2]
            dy = y - ys[j2]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return 0
        for k in range(m + 1):
            dx = x - bx[k]
            dy = y - by[k]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return 0
    for k in range(m + 1):
        for k2 in range(k + 1, m + 1):
            dx = bx[k] - bx[k2]
            dy = by[k] - by[k2]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return 0
    return 1


cdef inline void _fill_row(double* row, int src, int tgt, int n, int slice_index,
                           double* xs, double* ys, double* bx, double* by,
                           double cc, double ct) nogil:
    cdef int k, cs, ctg, col
    cdef double x, y, r2, zx, zy, wx, wy, ax, ay, a2, px, py, b2
    cdef double zeta_x, zeta_y, zwx, zwy
    if src == 0:
        if tgt < 0:
            k = -tgt - 1
            if k != slice_index:
                row[2 * n + _angle_col(k, slice_index)] += cc
        else:
            x = xs[tgt]
            y = ys[tgt]
            r2 = x * x + y * y
            row[2 * (tgt - 1)] += cc * (-y / r2)
            row[2 * (tgt - 1) + 1] += cc * (x / r2)
        if slice_index != 0:
            row[2 * n + _angle_col(0, slice_index)] -= cc
        return

    zx = xs[src]
    zy = ys[src]
    if tgt < 0:
        k = -tgt - 1
        wx = bx[k]
        wy = by[k]
    else:
        wx = xs[tgt]
        wy = ys[tgt]
    ax = zx - wx
    ay = zy - wy
    a2 = ax * ax + ay * ay
    px = 1.0 - (zx * wx + zy * wy)
    py = -(zy * wx - zx * wy)
    b2 = px * px + py * py
    r2 = zx * zx + zy * zy

    cs = 2 * (src - 1)
    row[cs] += ct * (-ay / a2)
    row[cs + 1] += ct * (ax / a2)
    zeta_x = -(wx * px - wy * py)
    zeta_y = -(-wx * py - wy * px)
    row[cs] += ct * (zeta_y / b2)
    row[cs + 1] += ct * (zeta_x / b2)
    row[cs] += ct * (zy / r2)
    row[cs + 1] += ct * (-zx / r2)

    if tgt < 0:
        k = -tgt - 1
        if k != slice_index:
            col = 2 * n + _angle_col(k, slice_index)
            row[col] += ct * (-(wx * ax + wy * ay) / a2)
            zwx = zx * wx + zy * wy
            zwy = zy * wx - zx * wy
            row[col] += ct * ((zwx * px + zwy * py) / b2)
    else:
        ctg = 2 * (tgt - 1)
        row[ctg] += ct * (ay / a2)
        row[ctg + 1] += ct * (-ax / a2)
        row[ctg] += ct * (-(zy * px - zx * py) / b2)
        row[ctg + 1] += ct * ((zx * px + zy * py) / b2)


def block_sums(int n, int m, int slice_index, edge_src, edge_tgt,
               double cc, double ct, state, start, count):
    """Same contract as _fallback.block_sums."""
    cdef int n_edges = len(edge_src)
    if n > MAX_N or m > MAX_M or 2 * n + m > MAX_DIM or n_edges > MAX_EDGES:
        raise ValueError("graph too large for the compiled kernel")
    if n_edges != 2 * n + m:
        raise ValueError(f"edge count {n_edges} must equal the dimension {2 * n + m}")
    cdef int src_arr[MAX_EDGES]
    cdef int tgt_arr[MAX_EDGES]
    cdef int e
    for e in range(n_edges):
        src_arr[e] = edge_src[e]
        tgt_arr[e] = edge_tgt[e]

    cdef u64 c_state = <u64>(<unsigned long long>state)
    cdef u64 c_start = <u64>(<unsigned long long>start)
    cdef long c_count = count

    cdef double total = 0.0
    cdef double total_sq = 0.0
    cdef long rejects = 0

    cdef double xs[MAX_N + 1]
    cdef double ys[MAX_N + 1]
    cdef double ang[MAX_M + 1]
    cdef double bx[MAX_M + 1]
    cdef double by[MAX_M + 1]
    cdef double tmp[MAX_M + 1]
    cdef double mat[MAX_DIM * MAX_DIM]

    cdef int dim = 2 * n + m
    cdef long idx
    cdef u64 base, draw, sample
    cdef int attempt, j, k, i, j2, t, label
    cdef double u1, u2, r, a, key, d
    cdef bint ok

    with nogil:
        for idx in range(c_count):
            sample = c_start + <u64>idx
            base = _mix64(c_state + sample * GAMMA_SAMPLE)
            draw = 0
            ok = 0
            for attempt in range(MAX_ATTEMPTS):
                for j in range(n):
                    u1 = _u01(base, draw)
                    draw += 1
                    u2 = _u01(base, draw)
                    draw += 1
                    r = sqrt(u1)
                    a = TWO_PI * u2
                    xs[j + 1] = r * cos(a)
                    ys[j + 1] = r * sin(a)
                for k in range(m):
                    tmp[k] = TWO_PI * _u01(base, draw)
                    draw += 1
                for i in range(1, m):
                    key = tmp[i]
                    j2 = i - 1
                    while j2 >= 0 and tmp[j2] > key:
                        tmp[j2 + 1] = tmp[j2]
                        j2 -= 1
                    tmp[j2 + 1] = key
                ang[slice_index] = 0.0
                for t in range(1, m + 1):
                    ang[(slice_index + t) % (m + 1)] = tmp[t - 1]
                for k in range(m + 1):
                    bx[k] = cos(ang[k])
                    by[k] = sin(ang[k])
                if _well_separated(n, m, xs, ys, bx, by):
                    ok = 1
                    break
                rejects += 1
            if not ok:
                continue

            for i in range(dim * dim):
                mat[i] = 0.0
            for e in range(n_edges):
                _fill_row(&mat[e * dim], src_arr[e], tgt_arr[e], n, slice_index,
                          xs, ys, bx, by, cc, ct)
            d = _lu_det(mat, dim)
            total += d
            total_sq += d * d
    return total, total_sq, rejects
