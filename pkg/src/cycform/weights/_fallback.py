"""Pure-Python twin of the compiled sampling kernel (_kernel.pyx).

The two implementations must stay bit-identical: every floating-point
operation, and its order, is mirrored line by line.  Edit both together.

The counter-based generator hashes (seed, sample, draw), so any sample can
be produced independently of the others; parallel block evaluation is then
bit-for-bit identical to serial evaluation.
"""

from __future__ import annotations

from math import atan2, cos, fabs, sin, sqrt

_MASK = (1 << 64) - 1
_GAMMA_SAMPLE = 0x9E3779B97F4A7C15
_GAMMA_DRAW = 0xD1B54A32D192ED03
_INV_2_53 = 1.0 / 9007199254740992.0
TWO_PI = 6.283185307179586476925287
COLLISION_TOL = 1e-12
MAX_ATTEMPTS = 64


def mix64(z: int) -> int:
    """splitmix64 finalizer."""
    z &= _MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


def seed_state(seed: int) -> int:
    return mix64((seed & _MASK) ^ 0x8BADF00DDEADBEEF)


def _u01(base: int, draw: int) -> float:
    z = mix64((base + draw * _GAMMA_DRAW) & _MASK)
    return (z >> 11) * _INV_2_53


def _lu_det(mat: list[list[float]], dim: int) -> float:
    det = 1.0
    for col in range(dim):
        piv = col
        best = fabs(mat[col][col])
        for r in range(col + 1, dim):
            a = fabs(mat[r][col])
            if a > best:
                best = a
                piv = r
        if best == 0.0:
            return 0.0
        if piv != col:
            mat[piv], mat[col] = mat[col], mat[piv]
            det = -det
        pivot = mat[col][col]
        det *= pivot
        inv = 1.0 / pivot
        for r in range(col + 1, dim):
            f = mat[r][col] * inv
            if f != 0.0:
                row_r = mat[r]
                row_c = mat[col]
                for c in range(col + 1, dim):
                    row_r[c] -= f * row_c[c]
    return det


def block_sums(
    n: int,
    m: int,
    slice_index: int,
    edge_src: list[int],
    edge_tgt: list[int],
    cc: float,
    ct: float,
    state: int,
    start: int,
    count: int,
) -> tuple[float, float, int]:
    """Sum and square-sum of the signed density over samples
    [start, start+count), plus the rejection count.

    Edge targets use the graph vertex encoding: aerial j >= 1, boundary
    kbar = -(k+1).  The density matrix has one row per edge and columns
    (x_1, y_1, ..., x_n, y_n, then free boundary angles ascending).
    """
    dim = 2 * n + m
    n_edges = len(edge_src)
    if n_edges != dim:
        raise ValueError(f"edge count {n_edges} must equal the dimension {dim}")
    total = 0.0
    total_sq = 0.0
    rejects = 0

    xs = [0.0] * (n + 1)
    ys = [0.0] * (n + 1)
    ang = [0.0] * (m + 1)
    bx = [0.0] * (m + 1)
    by = [0.0] * (m + 1)
    tmp = [0.0] * m

    for sample in range(start, start + count):
        base = mix64((state + (sample & _MASK) * _GAMMA_SAMPLE) & _MASK)
        draw = 0
        ok = False
        for _attempt in range(MAX_ATTEMPTS):
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
            # insertion sort ascending
            for i in range(1, m):
                key = tmp[i]
                j2 = i - 1
                while j2 >= 0 and tmp[j2] > key:
                    tmp[j2 + 1] = tmp[j2]
                    j2 -= 1
                tmp[j2 + 1] = key
            # counterclockwise from the pinned vertex: labels slice+1, ...
            ang[slice_index] = 0.0
            for t in range(1, m + 1):
                ang[(slice_index + t) % (m + 1)] = tmp[t - 1]
            for k in range(m + 1):
                bx[k] = cos(ang[k])
                by[k] = sin(ang[k])
            if _well_separated(n, m, xs, ys, bx, by):
                ok = True
                break
            rejects += 1
        if not ok:
            continue

        mat = [[0.0] * dim for _ in range(dim)]
        for e in range(n_edges):
            _fill_row(
                mat[e], edge_src[e], edge_tgt[e], n, slice_index, xs, ys, bx, by, cc, ct
            )
        d = _lu_det(mat, dim)
        total += d
        total_sq += d * d
    return total, total_sq, rejects


def _well_separated(n, m, xs, ys, bx, by) -> bool:
    for j in range(1, n + 1):
        x = xs[j]
        y = ys[j]
        if sqrt(x * x + y * y) < COLLISION_TOL:
            return False
        for j2 in range(j + 1, n + 1):
            dx = x - xs[j2]
            dy = y - ys[j2]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return False
        for k in range(m + 1):
            dx = x - bx[k]
            dy = y - by[k]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return False
    for k in range(m + 1):
        for k2 in range(k + 1, m + 1):
            dx = bx[k] - bx[k2]
            dy = by[k] - by[k2]
            if sqrt(dx * dx + dy * dy) < COLLISION_TOL:
                return False
    return True


def _fill_row(row, src, tgt, n, slice_index, xs, ys, bx, by, cc, ct):
    """Gradient of one edge-angle function with respect to all coordinates."""
    m_plus = len(bx)
    if src == 0:
        # central edge: cc * (arg z_tgt - arg z_0bar)
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

    # aerial edge: ct * (arg(z - w) + arg(1 - z*conj(w)) - arg(z))
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
    # B = 1 - z*conj(w)
    px = 1.0 - (zx * wx + zy * wy)
    py = -(zy * wx - zx * wy)
    b2 = px * px + py * py
    r2 = zx * zx + zy * zy

    cs = 2 * (src - 1)
    # d arg(A) source part: dz = (1, i)
    row[cs] += ct * (-ay / a2)
    row[cs + 1] += ct * (ax / a2)
    # d arg(B) source part: dB = -conj(w) dz
    # zeta = -conj(w) * conj(B); x-col Im(zeta)/b2, y-col Re(zeta)/b2
    zeta_x = -(wx * px - wy * py)  # Re(-conj(w)*conj(B))
    zeta_y = -(-wx * py - wy * px)  # Im(-conj(w)*conj(B))
    row[cs] += ct * (zeta_y / b2)
    row[cs + 1] += ct * (zeta_x / b2)
    # -d arg(z) source part
    row[cs] += ct * (zy / r2)
    row[cs + 1] += ct * (-zx / r2)

    if tgt < 0:
        k = -tgt - 1
        if k != slice_index:
            col = 2 * n + _angle_col(k, slice_index)
            # dw = i*w dphi: d arg(A): Im(-i*w*conj(A))/a2 = -Re(w*conj(A))/a2
            row[col] += ct * (-(wx * ax + wy * ay) / a2)
            # d arg(B): dB = i*z*conj(w) dphi: Im(i z conj(w) conj(B))/b2
            #          = Re(z*conj(w)*conj(B))/b2
            zwx = zx * wx + zy * wy
            zwy = zy * wx - zx * wy
            row[col] += ct * ((zwx * px + zwy * py) / b2)
    else:
        ctg = 2 * (tgt - 1)
        # d arg(A): dA = -dw
        row[ctg] += ct * (ay / a2)
        row[ctg + 1] += ct * (-ax / a2)
        # d arg(B): dB = -z*d(conj(w)): x: -z, y: i*z
        row[ctg] += ct * (-(zy * px - zx * py) / b2)  # Im(-z*conj(B))/b2
        row[ctg + 1] += ct * ((zx * px + zy * py) / b2)  # Re(z*conj(B))/b2


def _angle_col(k: int, slice_index: int) -> int:
    """Column rank of the free boundary angle k (ascending, slice omitted)."""
    return k if k < slice_index else k - 1


def angle_between(zx: float, zy: float, wx: float, wy: float) -> float:
    """arg(z) - arg(w) helper used by the reference angle functions."""
    return atan2(zy, zx) - atan2(wy, wx)
