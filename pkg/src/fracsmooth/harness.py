"""Experiment runners: duality tables, sharpness slopes, exponent tables,
and scale bookkeeping.  The CLI wraps these; all outputs are plain CSV/JSON
and every verdict is recomputable from the emitted tables."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import exponents, legendre, sets, spectra, wave
from .errors import DegenerateWindowError, UnsupportedSetError


@dataclass
class ExperimentConfig:
    descriptor: object
    d: int = 3
    p: float = 4.0
    q: float = 4.0
    j_min: int = 8
    j_max: int = 13
    alpha_min: float = 0.0
    alpha_max: float = 2.0
    alpha_step: float = 1.0 / 16.0
    tolerance: float | None = None
    seed: int = 0
    min_window_factor: int = 32
    max_times: int | None = 512
    shell_points: int = 17

    @property
    def alpha_grid(self) -> np.ndarray:
        n = int(round((self.alpha_max - self.alpha_min) / self.alpha_step))
        return self.alpha_min + self.alpha_step * np.arange(n + 1)

    @property
    def j_list(self):
        return list(range(self.j_min, self.j_max + 1))

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        d["descriptor"] = sets.from_json_dict(d.pop("set"))
        return cls(**d)


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

@dataclass
class DualityReport:
    set_id: str
    j_list: list
    alpha_grid: np.ndarray
    deviations: dict          # j -> array over alpha
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return float(self.deviations[max(self.deviations)].max())

    @property
    def passes(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_csv(self) -> str:
        lines = ["j,alpha,deviation"]
        for j in sorted(self.deviations):
            for a, v in zip(self.alpha_grid, self.deviations[j]):
                lines.append(f"{j},{float(a)!r},{float(v)!r}")
        lines.append(f"# max_deviation,{self.max_deviation!r},tolerance,{self.tolerance!r}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "set_id": self.set_id,
                "alpha_grid": list(self.alpha_grid),
                "deviations": {str(j): list(v) for j, v in sorted(self.deviations.items())},
                "max_deviation": self.max_deviation,
                "tolerance": self.tolerance,
                "passes": self.passes,
            },
            sort_keys=True,
        )


def run_duality(config: ExperimentConfig) -> DualityReport:
    """Compare the finite-scale functional against the closed-form dual profile."""
    spec = spectra.analytic_spectrum(config.descriptor)
    if spec is None:
        raise UnsupportedSetError("set has no closed-form spectrum to compare against")
    reference = legendre.nu_sharp_analytic(spec)
    grid = config.alpha_grid
    ref_vals = reference(grid)
    j_top = config.j_max
    tol = config.tolerance if config.tolerance is not None else spectra.default_tolerance(j_top) + 2.0 / j_top
    devs = {}
    for j in config.j_list:
        phi = np.asarray([spectra.phi_at_scale(config.descriptor, a, j) for a in grid])
        devs[j] = np.abs(phi - ref_vals)
    return DualityReport(sets.dumps(config.descriptor), config.j_list, grid, devs, tol)


# ---------------------------------------------------------------------------
# Sharpness slopes
# ---------------------------------------------------------------------------

@dataclass
class SlopeReport:
    set_id: str
    d: int
    p: float
    j_list: list
    log2_q: list
    slope: float
    intercept: float
    predicted: float
    windows: list
    fullset_log2_q: list = field(default_factory=list)
    fullset_slope: float = math.nan

    @property
    def deviation(self) -> float:
        return abs(self.slope - self.predicted)

    def to_csv(self) -> str:
        lines = ["j,log2_Q,window_lo,window_hi,fullset_log2_Q"]
        for i, j in enumerate(self.j_list):
            w = self.windows[i]
            fs = repr(self.fullset_log2_q[i]) if self.fullset_log2_q else ""
            lines.append(f"{j},{self.log2_q[i]!r},{w[0]!r},{w[1]!r},{fs}")
        lines.append(
            f"# slope,{self.slope!r},intercept,{self.intercept!r},"
            f"predicted,{self.predicted!r},fullset_slope,{self.fullset_slope!r}"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "set_id": self.set_id,
                "d": self.d,
                "p": self.p,
                "j_list": self.j_list,
                "log2_q": self.log2_q,
                "slope": self.slope,
                "intercept": self.intercept,
                "predicted": self.predicted,
                "deviation": self.deviation,
                "windows": self.windows,
                "fullset_log2_q": self.fullset_log2_q,
                "fullset_slope": self.fullset_slope,
            },
            sort_keys=True,
        )


def _fit_line(xs, ys):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if len(xs) < 4:
        raise DegenerateWindowError("slope fits need at least 4 scales")
    a = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), *_ = np.linalg.lstsq(a, ys, rcond=None)
    return float(slope), float(intercept)


def choose_window(descriptor, j: int, alpha: float, min_factor: int):
    """Smallest dyadic family window inside [1, 2] attaining the functional
    maximizer at exponent alpha, subject to 2^j |I| >= min_factor."""
    maxima = spectra.window_count_maxima(descriptor, j)
    m_cap = j - int(math.ceil(math.log2(min_factor)))
    if m_cap < 0:
        raise DegenerateWindowError(f"no window satisfies 2^{j} |I| >= {min_factor}")
    scores = [alpha * m + math.log2(maxima[m]) for m in range(m_cap + 1)]
    best = max(scores)
    m_star = max(m for m, s in enumerate(scores) if s >= best - 1e-12)
    length = 2.0**-m_star
    delta = 2.0**-j
    best_lo, best_count = None, -1
    for shift in (0.0, 0.5 * length):
        lo = 1.0 + shift
        while lo + length <= 2.0 + 1e-12:
            count = sets.covering_number(descriptor, (lo, lo + length), delta)
            if count > best_count:
                best_lo, best_count = lo, count
            lo += length
    return (best_lo, best_lo + length), best_count


def _window_q(descriptor, params: wave.WaveParams, p: float, window, rng, config):
    """Sum of shell norms over discretization times in the fuller half of the
    window, normalized by the data norm."""
    j = params.j
    delta = 2.0**-j
    lo, hi = window
    mid = 0.5 * (lo + hi)
    n_left = sets.covering_number(descriptor, (lo, mid), delta)
    n_right = sets.covering_number(descriptor, (mid, hi), delta)
    if n_right >= n_left:
        half, t_ref = (mid, hi), lo
    else:
        half, t_ref = (lo, mid), hi
    pts = sets.discretize(descriptor, j).points
    pts = pts[(pts >= half[0]) & (pts <= half[1])]
    pts = pts[np.abs(pts - t_ref) >= 0.25 * (hi - lo) - 1e-12]
    if len(pts) == 0:
        raise DegenerateWindowError(f"no discretization points in half window {half}")
    scale = 1.0
    if config.max_times is not None and len(pts) > config.max_times:
        idx = rng.choice(len(pts), size=config.max_times, replace=False)
        scale = len(pts) / config.max_times
        pts = np.sort(pts[idx])
    params = wave.WaveParams(params.d, j, t_ref, params.bump, params.nodes_per_unit)
    gp = wave.data_norm(params, p) ** p
    total = 0.0
    half_w = 2.0 ** (-j - 5)
    for t in pts:
        rho = abs(t - t_ref)
        grid = np.linspace(rho - half_w, rho + half_w, config.shell_points)
        row = wave.field_row_fast(params, t, grid)
        total += wave.shell_lp_norm(row, p, (rho - half_w, rho + half_w)) ** p
    return scale * total / gp


def run_sharpness_slope(config: ExperimentConfig) -> SlopeReport:
    """Measure the growth exponent of the shell-norm sums against scale."""
    d, p = config.d, config.p
    alpha = p * exponents.s_p(d, p)
    rng = np.random.default_rng(config.seed)
    log2_q, windows, log2_q_full = [], [], []
    for j in config.j_list:
        params = wave.WaveParams(d=d, j=j, t_ref=1.0)
        window, _ = choose_window(config.descriptor, j, alpha, config.min_window_factor)
        q_val = _window_q(config.descriptor, params, p, window, rng, config)
        log2_q.append(math.log2(q_val))
        windows.append(window)
        if window == (1.0, 2.0):
            log2_q_full.append(log2_q[-1])
        else:
            q_full = _window_q(config.descriptor, params, p, (1.0, 2.0), rng, config)
            log2_q_full.append(math.log2(q_full))
    slope, intercept = _fit_line(config.j_list, log2_q)
    slope_full, _ = _fit_line(config.j_list, log2_q_full)
    predicted = spectra.phi_at_scale(config.descriptor, alpha, config.j_max)
    return SlopeReport(
        sets.dumps(config.descriptor), d, p, config.j_list, log2_q,
        slope, intercept, predicted, windows, log2_q_full, slope_full,
    )


# ---------------------------------------------------------------------------
# Exponent tables
# ---------------------------------------------------------------------------

def run_exponent_table(config: ExperimentConfig, p_list=None, q_list=None) -> str:
    """CSV sweep of every closed-form exponent for the configured set."""
    d = config.d
    if p_list is None:
        p_list = [2.0 + 0.5 * k for k in range(9)]
    if q_list is None:
        q_list = [2.0 + 0.5 * k for k in range(9)]
    nu_emp = spectra.nu_sharp_empirical_function(config.descriptor, config.j_max)
    spec = spectra.analytic_spectrum(config.descriptor)
    nu_ana = legendre.nu_sharp_analytic(spec) if spec is not None else None
    est = spectra.dims(config.descriptor, config.j_max)
    gamma = est.quasi_assouad
    gamma_circ = max(
        spectra.assouad_spectrum_empirical(config.descriptor, th, config.j_max)
        for th in spectra.theta_grid(config.j_max)
    )
    lines = [
        "d,p,q,s_p,sigma_p,ls_emp,ls_ana,s_E_q_emp,s_E_q_ana,"
        "s_E_pq_emp,s_E_pq_ana,p_gamma,q_gamma,q_circ"
    ]
    for p in p_list:
        for q in q_list:
            if q < p:
                continue
            sp = exponents.s_p(d, p)
            sig = exponents.sigma_p(d, p) if p > 2 else ""
            ls_e = exponents.ls_exponent(d, p, nu_emp)
            ls_a = exponents.ls_exponent(d, p, nu_ana) if nu_ana is not None else ""
            try:
                seq_e = exponents.s_E_q(d, q, nu_emp)
                seq_a = exponents.s_E_q(d, q, nu_ana) if nu_ana is not None else ""
            except Exception:
                seq_e = seq_a = ""
            try:
                spq_e = exponents.s_E_pq(d, p, q, nu_emp)
                spq_a = exponents.s_E_pq(d, p, q, nu_ana) if nu_ana is not None else ""
            except Exception:
                spq_e = spq_a = ""
            row = [
                d, p, q, sp, sig, ls_e, ls_a, seq_e, seq_a, spq_e, spq_a,
                exponents.p_gamma(d, gamma), exponents.q_gamma(d, gamma),
                exponents.q_circ(d, gamma_circ),
            ]
            lines.append(",".join("" if v == "" else repr(float(v)) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Bookkeeping
# ---------------------------------------------------------------------------

def run_bookkeeping(config: ExperimentConfig, j: int | None = None) -> exponents.BookkeepingReport:
    if j is None:
        j = min(config.j_max, 12)
    return exponents.bookkeeping_sums(config.descriptor, j, config.d, config.p, config.q)
