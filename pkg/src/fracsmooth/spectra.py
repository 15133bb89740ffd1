"""Empirical (finite-scale) and analytic dimension spectra.

All window suprema run over the two-shifted dyadic family: dyadic intervals
of length 2^-m for 0 <= m <= j on the standard grid and on the grid shifted
by half an interval length.  Any interval of length L is contained in a
family interval of length <= 2L, so exponents are preserved up to O(1/j).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import backend, sets
from .errors import InvalidThetaError, OutOfRangeError
from .sampled import SampledFunction

LOG2 = math.log(2.0)

# Deviation tolerance for spectrum checks, scaling like c / j.
TOL_COEFF = 0.08 * 14.0


def default_tolerance(j: int) -> float:
    return TOL_COEFF / j


@lru_cache(maxsize=128)
def _window_maxima_cached(descriptor, j: int, shifts: int):
    flat = sets.flatten(descriptor)
    smin = sets.first_point_geq(flat, -math.inf)
    smax = sets.last_point_leq(flat, math.inf)
    delta = 2.0 ** (-j)
    out = np.zeros(j + 1, dtype=np.int64)
    for m in range(j + 1):
        length = 2.0 ** (-m)
        lows = []
        for i in range(shifts):
            off = i * length / shifts
            k_lo = math.floor((smin - off) / length) - 1
            k_hi = math.ceil((smax - off) / length) + 1
            lows.extend(off + k * length for k in range(k_lo, k_hi + 1))
        w_lo = np.asarray(lows, dtype=np.float64)
        counts = backend.cover_counts(flat[0], flat[1], flat[2], w_lo, w_lo + length, delta)
        out[m] = counts.max()
    return out


def window_count_maxima(descriptor, j: int, shifts: int = 2) -> np.ndarray:
    """max over family windows of length 2^-m of N(E /\\ I, 2^-j), m = 0..j."""
    if j < 2:
        raise OutOfRangeError(f"need j >= 2, got {j}")
    return _window_maxima_cached(descriptor, j, shifts).copy()


def best_window(descriptor, j: int, m: int, shifts: int = 2):
    """Leftmost family window of length 2^-m attaining the count maximum."""
    flat = sets.flatten(descriptor)
    smin = sets.first_point_geq(flat, -math.inf)
    smax = sets.last_point_leq(flat, math.inf)
    delta = 2.0 ** (-j)
    length = 2.0 ** (-m)
    lows = []
    for i in range(shifts):
        off = i * length / shifts
        k_lo = math.floor((smin - off) / length) - 1
        k_hi = math.ceil((smax - off) / length) + 1
        lows.extend(off + k * length for k in range(k_lo, k_hi + 1))
    w_lo = np.asarray(sorted(lows), dtype=np.float64)
    counts = backend.cover_counts(flat[0], flat[1], flat[2], w_lo, w_lo + length, delta)
    best = int(np.argmax(counts))
    return (float(w_lo[best]), float(w_lo[best] + length)), int(counts[best])


def phi_at_scale(descriptor, alpha: float, j: int, shifts: int = 2) -> float:
    """Finite-scale dual-profile functional.

    max over family windows of
    [alpha * log(1/|I|) + log N(E /\\ I, 2^-j)] / (j log 2).
    """
    if j < 2:
        raise OutOfRangeError(f"need j >= 2, got {j}")
    maxima = _window_maxima_cached(descriptor, j, shifts)
    m = np.arange(j + 1, dtype=np.float64)
    return float(np.max((alpha * m + np.log2(maxima)) / j))


def assouad_spectrum_empirical(descriptor, theta: float, j: int, shifts: int = 2) -> float:
    """Window exponent at scale j for windows of length 2^-ceil(theta j)."""
    if not 0.0 <= theta < 1.0:
        raise InvalidThetaError(f"theta must be in [0, 1), got {theta}")
    m = math.ceil(theta * j)
    if m > j - 1:
        raise InvalidThetaError(f"theta={theta} leaves no room at scale j={j}")
    maxima = _window_maxima_cached(descriptor, j, shifts)
    return float(math.log2(maxima[m]) / (j - m))


def theta_grid(j: int) -> np.ndarray:
    """Usable theta values at scale j: {0, 1/j, ..., (j-4)/j}."""
    return np.arange(0, j - 3) / j


def analytic_spectrum(descriptor) -> SampledFunction | None:
    """Closed-form Assouad spectrum on [0, 1] when the family has one."""
    n = 257
    theta = np.linspace(0.0, 1.0, n)
    if isinstance(descriptor, sets.FullInterval):
        return SampledFunction(0.0, 1.0, np.ones(n))
    if isinstance(descriptor, sets.FinitePoints):
        return SampledFunction(0.0, 1.0, np.zeros(n))
    if isinstance(descriptor, sets.CantorLike):
        beta = descriptor.similarity_dimension
        return SampledFunction(0.0, 1.0, np.full(n, beta))
    if isinstance(descriptor, sets.PolySequence):
        beta = descriptor.minkowski_dimension
        with np.errstate(divide="ignore"):
            vals = np.minimum(beta / np.where(theta < 1.0, 1.0 - theta, np.inf), 1.0)
        vals[-1] = 1.0
        return SampledFunction(0.0, 1.0, vals)
    if isinstance(descriptor, sets.UnionSet):
        parts = [analytic_spectrum(m) for m in descriptor.members]
        if any(p is None for p in parts):
            return None
        return SampledFunction(0.0, 1.0, np.max([p.values for p in parts], axis=0))
    return None


@dataclass(frozen=True)
class DimsEstimate:
    minkowski: float
    quasi_assouad: float
    scale_j: int


def dims(descriptor, j: int = 14) -> DimsEstimate:
    """(Minkowski, quasi-Assouad) estimates from the window table at scale j."""
    mink = assouad_spectrum_empirical(descriptor, 0.0, j)
    qa = assouad_spectrum_empirical(descriptor, 1.0 - 4.0 / j, j)
    return DimsEstimate(mink, qa, j)


@dataclass(frozen=True)
class QuasiRegularReport:
    is_regular: bool
    max_deviation: float
    nu_deviation: float
    beta: float
    gamma: float
    tolerance: float


def quasi_regular_check(descriptor, j: int = 14, tolerance: float | None = None) -> QuasiRegularReport:
    """Compare the empirical spectrum with the maximal profile min(b/(1-t), g).

    The reference profile amplifies finite-scale noise by 1/(1-theta), so the
    verdict uses the (1-theta)-weighted deviation, which is uniformly O(1/j);
    the plain sup deviation is reported alongside.
    """
    if tolerance is None:
        tolerance = default_tolerance(j)
    est = dims(descriptor, j)
    beta, gamma = est.minkowski, est.quasi_assouad
    dev = 0.0
    nu_dev = 0.0
    for theta in theta_grid(j):
        emp = assouad_spectrum_empirical(descriptor, theta, j)
        ref = min(beta / (1.0 - theta), gamma) if theta < 1.0 else gamma
        dev = max(dev, abs(emp - ref))
        nu_dev = max(nu_dev, (1.0 - theta) * abs(emp - ref))
    return QuasiRegularReport(
        bool(nu_dev <= tolerance), float(dev), float(nu_dev), beta, gamma, tolerance
    )


@dataclass
class SpectrumReport:
    """Per-scale table of grid values with a point estimate.

    ``axis`` records whether ``grid`` holds alpha or theta values; rows are
    keyed by scale j.  The estimate row is the largest-j row (no extrapolation
    is attempted).
    """

    set_id: str
    axis: str
    grid: np.ndarray
    rows: dict = field(default_factory=dict)
    analytic: np.ndarray | None = None

    @property
    def estimate(self) -> np.ndarray:
        return self.rows[max(self.rows)]

    @property
    def deviation(self) -> np.ndarray | None:
        if self.analytic is None:
            return None
        return np.abs(self.estimate - self.analytic)

    def to_csv(self) -> str:
        lines = [f"j,{self.axis},value,estimate,analytic,deviation"]
        dev = self.deviation
        for j in sorted(self.rows):
            for i, x in enumerate(self.grid):
                ana = "" if self.analytic is None else repr(float(self.analytic[i]))
                dv = "" if dev is None else repr(float(dev[i]))
                lines.append(
                    f"{j},{float(x)!r},{float(self.rows[j][i])!r},"
                    f"{float(self.estimate[i])!r},{ana},{dv}"
                )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "set_id": self.set_id,
            "axis": self.axis,
            "grid": list(self.grid),
            "rows": {str(j): list(v) for j, v in sorted(self.rows.items())},
            "estimate": list(self.estimate),
            "analytic": None if self.analytic is None else list(self.analytic),
            "deviation": None if self.deviation is None else list(self.deviation),
        }
        return json.dumps(payload, sort_keys=True)


def nu_sharp_empirical(descriptor, alpha_grid, j_list, shifts: int = 2) -> SpectrumReport:
    """Table of phi_at_scale values over alpha for each scale in j_list."""
    j_list = list(j_list)
    if any(b <= a for a, b in zip(j_list, j_list[1:])):
        raise OutOfRangeError("j_list must be increasing")
    alpha_grid = np.asarray(alpha_grid, dtype=np.float64)
    report = SpectrumReport(sets.dumps(descriptor), "alpha", alpha_grid)
    for j in j_list:
        report.rows[j] = np.asarray(
            [phi_at_scale(descriptor, a, j, shifts) for a in alpha_grid]
        )
    spec = analytic_spectrum(descriptor)
    if spec is not None:
        from .legendre import nu_sharp_analytic

        report.analytic = nu_sharp_analytic(spec)(alpha_grid)
    return report


def nu_sharp_empirical_function(descriptor, j: int, alpha_max: float = 4.0) -> SampledFunction:
    """phi_at_scale sampled on the default alpha grid, as a SampledFunction."""
    grid = np.linspace(0.0, alpha_max, int(round(alpha_max * 64)) + 1)
    vals = np.asarray([phi_at_scale(descriptor, a, j) for a in grid])
    return SampledFunction(0.0, alpha_max, vals)
