"""Pure NumPy implementations of the hot kernels.

Mirrors the compiled extension ``_ckernels`` exactly; selected automatically
when the extension has not been built (see ``backend``).
"""

from __future__ import annotations

import math

import numpy as np

from .sets import first_point_geq

_SERIES_CUTOFF = 12.0
_NTERMS_SERIES = 48
_NTERMS_ASYMPT = 21  # a_0 .. a_20, optimal truncation near the cutoff


def _hankel_coeffs(nu: float, n: int):
    a = [1.0]
    for k in range(1, n):
        a.append(a[-1] * (4.0 * nu * nu - (2 * k - 1) ** 2) / (8.0 * k))
    return np.asarray(a)


_A0 = _hankel_coeffs(0.0, _NTERMS_ASYMPT)
_A1 = _hankel_coeffs(1.0, _NTERMS_ASYMPT)


def _j_series(u, order: int):
    q = 0.25 * u * u
    term = np.ones_like(u)
    total = np.ones_like(u)
    for k in range(1, _NTERMS_SERIES):
        term = term * (-q) / (k * (k + order))
        total = total + term
    if order == 0:
        return total
    return 0.5 * u * total


def _j_asymptotic(u, order: int):
    a = _A0 if order == 0 else _A1
    inv = 1.0 / u
    inv2 = inv * inv
    p = np.zeros_like(u)
    q = np.zeros_like(u)
    sign = 1.0
    for i in range(0, _NTERMS_ASYMPT, 2):
        p = p + sign * a[i] * inv2 ** (i // 2)
        if i + 1 < _NTERMS_ASYMPT:
            q = q + sign * a[i + 1] * inv * inv2 ** (i // 2)
        sign = -sign
    omega = u - (0.25 + 0.5 * order) * math.pi
    return np.sqrt(2.0 / (math.pi * u)) * (p * np.cos(omega) - q * np.sin(omega))


def _j_any(u, order: int):
    u = np.asarray(u, dtype=np.float64)
    out = np.empty_like(u)
    small = u <= _SERIES_CUTOFF
    if np.any(small):
        out[small] = _j_series(u[small], order)
    if np.any(~small):
        out[~small] = _j_asymptotic(u[~small], order)
    return out


def j0_array(u):
    """Bessel J0 on a float array; series for u <= 12, Hankel expansion beyond."""
    return _j_any(u, 0)


def j1_array(u):
    """Bessel J1 on a float array."""
    return _j_any(u, 1)


def oscillatory_sum(omegas, nodes, amp):
    """sum_k amp[k] * exp(i * omega * nodes[k]) for each omega.

    ``amp`` already contains quadrature weights and all smooth factors.
    """
    omegas = np.asarray(omegas, dtype=np.float64)
    nodes = np.asarray(nodes, dtype=np.float64)
    amp = np.asarray(amp, dtype=np.float64)
    out = np.empty(len(omegas), dtype=np.complex128)
    block = max(1, int(4_000_000 // max(1, len(nodes))))
    for start in range(0, len(omegas), block):
        ph = np.multiply.outer(omegas[start:start + block], nodes)
        out[start:start + block] = np.cos(ph) @ amp + 1j * (np.sin(ph) @ amp)
    return out


def cover_counts(types, params, pool, w_lo, w_hi, delta):
    """Greedy covering count of set /\\ window for a batch of windows."""
    flat = (types, params, pool)
    n = len(w_lo)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        count = 0
        hi = w_hi[i]
        x = w_lo[i]
        while True:
            p = first_point_geq(flat, x)
            if p > hi:
                break
            count += 1
            x = math.nextafter(p + delta, math.inf)
        out[i] = count
    return out
