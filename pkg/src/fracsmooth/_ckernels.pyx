# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: Bessel arrays, oscillatory phase sums, and batched
greedy covering counts.  Semantics mirror ``_pykernels`` exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, ceil, cos, fabs, floor, nextafter, pow, sin, sqrt

cnp.import_array()

cdef double PI = 3.14159265358979323846264338327950288

cdef int NTERMS_SERIES = 48
cdef int NTERMS_ASYMPT = 21
cdef double SERIES_CUTOFF = 12.0

cdef double[21] A0
cdef double[21] A1


def _init_coeffs():
    cdef int k
    cdef double c0 = 1.0, c1 = 1.0
    A0[0] = c0
    A1[0] = c1
    for k in range(1, NTERMS_ASYMPT):
        c0 = c0 * (0.0 - (2 * k - 1) ** 2) / (8.0 * k)
        c1 = c1 * (4.0 - (2 * k - 1) ** 2) / (8.0 * k)
        A0[k] = c0
        A1[k] = c1


_init_coeffs()


cdef double _j_element(double u, int order) noexcept nogil:
    cdef double q, term, total, inv, inv2, p, qq, sign, omega, scale
    cdef int k, i
    if u <= SERIES_CUTOFF:
        q = 0.25 * u * u
        term = 1.0
        total = 1.0
        for k in range(1, NTERMS_SERIES):
            term = term * (-q) / (k * (k + order))
            total = total + term
        if order == 0:
            return total
        return 0.5 * u * total
    inv = 1.0 / u
    inv2 = inv * inv
    p = 0.0
    qq = 0.0
    sign = 1.0
    scale = 1.0
    for i in range(0, NTERMS_ASYMPT, 2):
        if order == 0:
            p = p + sign * A0[i] * scale
            if i + 1 < NTERMS_ASYMPT:
                qq = qq + sign * A0[i + 1] * inv * scale
        else:
            p = p + sign * A1[i] * scale
            if i + 1 < NTERMS_ASYMPT:
                qq = qq + sign * A1[i + 1] * inv * scale
        sign = -sign
        scale = scale * inv2
    omega = u - (0.25 + 0.5 * order) * PI
    return sqrt(2.0 / (PI * u)) * (p * cos(omega) - qq * sin(omega))


def j0_array(u):
    """Bessel J0 on a float array; series for u <= 12, Hankel expansion beyond."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.ascontiguousarray(u, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(arr)
    cdef Py_ssize_t i, n = arr.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _j_element(arr[i], 0)
    return out


def j1_array(u):
    """Bessel J1 on a float array."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.ascontiguousarray(u, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(arr)
    cdef Py_ssize_t i, n = arr.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _j_element(arr[i], 1)
    return out


def oscillatory_sum(omegas, nodes, amp):
    """sum_k amp[k] * exp(i * omega * nodes[k]) for each omega."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] om = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nd = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] am = np.ascontiguousarray(amp, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(om.shape[0], dtype=np.complex128)
    cdef Py_ssize_t i, k, m = om.shape[0], n = nd.shape[0]
    cdef double w, ph, sr, si
    with nogil:
        for i in range(m):
            w = om[i]
            sr = 0.0
            si = 0.0
            for k in range(n):
                ph = w * nd[k]
                sr += am[k] * cos(ph)
                si += am[k] * sin(ph)
            out[i] = sr + 1j * si
    return out


# ---------------------------------------------------------------------------
# Greedy covering counts over flattened set descriptors
# type codes: 0 interval (lo, hi), 1 cantor (lo, hi, m, c),
#             2 polyseq (a), 3 points (pool offset, count)
# ---------------------------------------------------------------------------

cdef double CANTOR_EPS = 1e-14
cdef double POLY_TAIL_EPS = 1e-12
cdef double POLY_N_CAP = 1099511627776.0  # 2^40


cdef double _cantor_first_geq(double lo, double hi, int m, double c, double x) noexcept nogil:
    cdef double width, gap_step, child_len, u, v
    cdef int k
    cdef bint descended
    if x <= lo:
        return lo
    if x > hi:
        return INFINITY
    while True:
        width = hi - lo
        if width <= CANTOR_EPS:
            if x >= lo:
                return x if x <= hi else INFINITY
            return lo
        gap_step = width * (1.0 - c) / (m - 1)
        child_len = width * c
        descended = False
        for k in range(m):
            u = lo + k * gap_step
            v = u + child_len
            if x <= u:
                return u
            if x <= v:
                lo = u
                hi = v
                descended = True
                break
        if not descended:
            return INFINITY


cdef double _poly_first_geq(double a, double x) noexcept nogil:
    cdef double t, n_est, best, p
    cdef long long n0, n
    if x <= 1.0:
        return 1.0
    if x > 2.0:
        return INFINITY
    t = x - 1.0
    if t <= POLY_TAIL_EPS:
        return x
    n_est = pow(t, -1.0 / a)
    if n_est > POLY_N_CAP:
        return x
    n0 = <long long> n_est
    best = INFINITY
    n = n0 - 3
    if n < 1:
        n = 1
    while n <= n0 + 3:
        p = 1.0 + pow(<double> n, -a)
        if p >= x and p < best:
            best = p
        n += 1
    return best


cdef double _first_geq(const long long* types, const double* params, const double* pool,
                       Py_ssize_t nprim, double x) noexcept nogil:
    cdef double best = INFINITY
    cdef double cand, lo, hi
    cdef Py_ssize_t i, off, cnt, a, b, mid
    for i in range(nprim):
        if types[i] == 0:
            lo = params[4 * i]
            hi = params[4 * i + 1]
            if x <= lo:
                cand = lo
            elif x <= hi:
                cand = x
            else:
                cand = INFINITY
        elif types[i] == 1:
            cand = _cantor_first_geq(params[4 * i], params[4 * i + 1],
                                     <int> params[4 * i + 2], params[4 * i + 3], x)
        elif types[i] == 2:
            cand = _poly_first_geq(params[4 * i], x)
        else:
            off = <Py_ssize_t> params[4 * i]
            cnt = <Py_ssize_t> params[4 * i + 1]
            a = off
            b = off + cnt
            while a < b:
                mid = (a + b) // 2
                if pool[mid] < x:
                    a = mid + 1
                else:
                    b = mid
            cand = pool[a] if a < off + cnt else INFINITY
        if cand < best:
            best = cand
    return best


def cover_counts(types, params, pool, w_lo, w_hi, double delta):
    """Greedy covering count of set /\\ window for a batch of windows."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ty = np.ascontiguousarray(types, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pa = np.ascontiguousarray(params, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] po = np.ascontiguousarray(
        pool if len(pool) else np.zeros(1), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lo = np.ascontiguousarray(w_lo, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hi = np.ascontiguousarray(w_hi, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(lo.shape[0], dtype=np.int64)
    cdef Py_ssize_t i, nprim = ty.shape[0], nwin = lo.shape[0]
    cdef long long count
    cdef double x, p, whi
    with nogil:
        for i in range(nwin):
            count = 0
            whi = hi[i]
            x = lo[i]
            while True:
                p = _first_geq(<const long long*> ty.data, <const double*> pa.data,
                               <const double*> po.data, nprim, x)
                if p > whi:
                    break
                count += 1
                x = nextafter(p + delta, INFINITY)
            out[i] = count
    return out
