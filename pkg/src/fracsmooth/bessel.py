"""Bessel functions of the first kind for integer and half-integer orders.

Integer orders 0 and 1 use a power series below u = 12 and the Hankel
asymptotic expansion beyond (through the backend array kernels).  Half-integer
orders use closed forms; higher half-integers come from the two-term upward
recursion.  ``radial_kernel`` evaluates J_nu(u) / u^nu, the radial Fourier
kernel, stably down to u = 0.
"""

from __future__ import annotations

import math

import numpy as np

from . import backend
from .errors import OutOfRangeError, UnsupportedOrderError

_SQRT_2_PI = math.sqrt(2.0 / math.pi)


def _check_order(order: float) -> float:
    if order < 0 or (2.0 * order) != int(2.0 * order):
        raise UnsupportedOrderError(f"order must be a nonnegative half-integer, got {order}")
    return float(order)


def _j_half(u):
    # J_{1/2}(u) = sqrt(2/(pi u)) sin u, with the u -> 0 limit 0
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = _SQRT_2_PI * np.sin(u[pos]) / np.sqrt(u[pos])
    return out


def _j_neg_half(u):
    u = np.asarray(u, dtype=np.float64)
    out = np.full_like(u, np.inf)
    pos = u > 0
    out[pos] = _SQRT_2_PI * np.cos(u[pos]) / np.sqrt(u[pos])
    return out


def _j_three_half(u):
    # J_{3/2}(u) = sqrt(2/(pi u)) (sin u / u - cos u); series below u = 0.5
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    small = (u > 0) & (u < 0.5)
    big = u >= 0.5
    if np.any(small):
        us = u[small]
        q = us * us
        # sin u / u - cos u = sum_{k>=1} (-1)^(k+1) u^(2k) (2k) / (2k+1)!
        term = q / 3.0
        acc = term.copy()
        for k in range(2, 12):
            term = term * (-q) / ((2 * k - 2) * (2 * k + 1))
            acc += term
        out[small] = _SQRT_2_PI * acc / np.sqrt(us)
    if np.any(big):
        ub = u[big]
        out[big] = _SQRT_2_PI * (np.sin(ub) / ub - np.cos(ub)) / np.sqrt(ub)
    return out


def bessel_j(order: float, u):
    """J_order(u) for order in {0, 1/2, 1, 3/2, ...}; u >= 0 scalar or array.

    Relative accuracy is ~1e-11 against the oscillation envelope for the
    directly supported orders {0, 1/2, 1, 3/2}; higher half-integers use the
    upward recursion and are intended for moderate and large u.
    """
    order = _check_order(order)
    scalar = np.isscalar(u)
    arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(arr < 0):
        raise OutOfRangeError("u must be nonnegative")
    if order == 0.0:
        out = backend.j0_array(arr)
    elif order == 1.0:
        out = backend.j1_array(arr)
    elif order == 0.5:
        out = _j_half(arr)
    elif order == 1.5:
        out = _j_three_half(arr)
    elif order == int(order):
        raise UnsupportedOrderError(f"integer orders above 1 are not supported, got {order}")
    else:
        # upward recursion from (1/2, 3/2): J_{v+1} = (2v/u) J_v - J_{v-1}
        prev, cur = _j_half(arr), _j_three_half(arr)
        nu = 1.5
        with np.errstate(divide="ignore", invalid="ignore"):
            while nu < order:
                prev, cur = cur, np.where(arr > 0, (2.0 * nu / arr) * cur - prev, 0.0)
                nu += 1.0
        out = cur
    return float(out[0]) if scalar else out


def leading_asymptotic(order: float, u):
    """Two-exponential principal term: sqrt(2/(pi u)) cos(u - order pi/2 - pi/4)."""
    order = _check_order(order)
    u = np.asarray(u, dtype=np.float64)
    phase = u - (0.5 * order + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * u)) * np.cos(phase)


def bessel_remainder(order: float, u):
    """R(u) = J_order(u) - leading asymptotic term, for u >= 1.

    Satisfies |R(u)| = O(u^(-3/2)).  For order 1/2 the principal term equals
    J_{1/2} identically, so R vanishes.
    """
    order = _check_order(order)
    scalar = np.isscalar(u)
    arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(arr < 1.0):
        raise OutOfRangeError("remainder defined for u >= 1")
    if order == 0.5:
        out = np.zeros_like(arr)
    else:
        out = bessel_j(order, arr) - leading_asymptotic(order, arr)
    return float(out[0]) if scalar else out


def radial_kernel(d: int, u):
    """G(u) = J_{(d-2)/2}(u) / u^((d-2)/2), stable at u = 0.

    This is the kernel of the radial Fourier inversion formula in dimension d.
    Supported for d in {2, 3, 4, 5}.
    """
    u = np.asarray(u, dtype=np.float64)
    if d == 2:
        return backend.j0_array(u)
    if d == 3:
        # sqrt(2/pi) * sin(u)/u
        return _SQRT_2_PI * np.sinc(u / math.pi)
    if d == 4:
        out = np.empty_like(u)
        small = u < 1e-4
        if np.any(small):
            q = u[small] ** 2
            out[small] = 0.5 - q / 16.0 + q * q / 384.0
        if np.any(~small):
            out[~small] = backend.j1_array(u[~small]) / u[~small]
        return out
    if d == 5:
        out = np.empty_like(u)
        small = u < 0.5
        if np.any(small):
            q = u[small] ** 2
            # (sin u/u - cos u)/u^2 = 1/3 - u^2/30 + u^4/840 - u^6/45360 + u^8/3991680 - ...
            out[small] = _SQRT_2_PI * (
                1.0 / 3.0 - q / 30.0 + q * q / 840.0 - q**3 / 45360.0 + q**4 / 3991680.0
            )
        if np.any(~small):
            ub = u[~small]
            out[~small] = _SQRT_2_PI * (np.sin(ub) / ub - np.cos(ub)) / ub**2
        return out
    raise UnsupportedOrderError(f"radial kernel implemented for d in 2..5, got {d}")
