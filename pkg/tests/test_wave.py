import json
import math

import numpy as np
import pytest

from fracsmooth import wave
from fracsmooth.errors import OutOfRangeError, RefineFailureError

from oracles import trapezoid_norm

SQ2PI = math.sqrt(2.0 / math.pi)


def test_bump_profile_shape():
    bump = wave.BumpSpec()
    assert bump.support == (0.5, 2.0)
    assert bump(1.25) == pytest.approx(1.0)
    assert bump(0.5) == 0.0 and bump(2.0) == 0.0 and bump(2.5) == 0.0
    x = np.linspace(0.5, 2.0, 101)
    assert np.all(bump(x) >= 0.0)


def test_wave_params_validation():
    with pytest.raises(OutOfRangeError):
        wave.WaveParams(d=1, j=8)
    with pytest.raises(OutOfRangeError):
        wave.WaveParams(d=3, j=1)
    with pytest.raises(OutOfRangeError):
        wave.WaveParams(d=3, j=8, t_ref=2.5)


def test_region_spec():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    reg = wave.region(params, 1.5)
    assert reg.width == pytest.approx(2.0**-12)
    assert 0.5 * (reg.r_lo + reg.r_hi) == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# propagate
# ---------------------------------------------------------------------------

def test_propagate_origin_magnitude():
    # at t = t_ref and r -> 0 the integrand is positive: direct oracle check
    params = wave.WaveParams(d=3, j=8, t_ref=1.3)
    row = wave.propagate(params, 1.3, np.array([0.0]))
    sigma = np.linspace(0.5, 2.0, 40001)
    integrand = params.bump(sigma) * sigma**2
    oracle = (2 * math.pi) ** -1.5 * SQ2PI * 2.0 ** (3 * 8) * np.trapezoid(integrand, sigma)
    assert row.values[0].imag == pytest.approx(0.0, abs=1e-9 * oracle)
    assert row.values[0].real == pytest.approx(oracle, rel=1e-6)


def test_propagate_node_doubling_converges():
    params = wave.WaveParams(d=3, j=9, t_ref=1.0)
    row = wave.propagate(params, 1.4, np.linspace(0.39, 0.41, 5))
    assert row.err_rel <= wave.QUAD_RTOL
    # doubling the node budget moves nothing beyond the tolerance
    params16 = wave.WaveParams(d=3, j=9, t_ref=1.0, nodes_per_unit=16)
    row16 = wave.propagate(params16, 1.4, np.linspace(0.39, 0.41, 5))
    scale = np.abs(row16.values).max()
    assert np.abs(row.values - row16.values).max() <= 1e-6 * scale


def test_propagate_light_cone_growth():
    # on the cone r = t - t_ref the amplitude grows like 2^(j (d+1)/2)
    logs = []
    js = range(7, 11)
    for j in js:
        params = wave.WaveParams(d=3, j=j, t_ref=1.0)
        row = wave.propagate(params, 1.5, np.array([0.5]))
        logs.append(math.log2(abs(row.values[0])))
    slope = np.polyfit(list(js), logs, 1)[0]
    assert slope == pytest.approx(2.0, abs=0.1)


def test_propagate_rejects_negative_radius():
    params = wave.WaveParams(d=3, j=8)
    with pytest.raises(OutOfRangeError):
        wave.propagate(params, 1.5, np.array([-0.1]))


# ---------------------------------------------------------------------------
# main_terms and the decomposition
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("d", [3, 2])
def test_decomposition_identity_small(d):
    params = wave.WaveParams(d=d, j=7, t_ref=1.0)
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(8):
        t = 1.2 + 0.6 * rng.random()
        rho = t - 1.0
        r = rho + (rng.random() - 0.5) * 2.0**-9
        row = wave.propagate(params, t, np.array([r]))
        tm, tp, tr = wave.main_terms(params, t, r)
        worst = max(worst, abs(row.values[0] - (tm + tp + tr)) / abs(row.values[0]))
    assert worst <= 1e-5


def test_remainder_vanishes_d3():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    _, _, tr = wave.main_terms(params, 1.5, 0.5)
    assert tr == 0.0


def test_main_terms_domain():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    with pytest.raises(OutOfRangeError):
        wave.main_terms(params, 1.5, 2.0**-9)


def test_shell_lower_bound_on_cone():
    # |T^-| >= c r^(-(d-1)/2) 2^(j(d+1)/2) on D_t, with c from the bump mass
    d = 3
    sigma = np.linspace(0.5, 2.0, 20001)
    for j in (8, 10):
        params = wave.WaveParams(d=d, j=j, t_ref=1.0)
        t = 1.5
        reg = wave.region(params, t)
        grid = np.linspace(reg.r_lo, reg.r_hi, 9)
        tm, _, _ = wave.main_terms_grid(params, t, grid)
        # F(y) for |y| <= 2^-5 stays within 10% of F(0)
        mass = np.trapezoid(params.bump(sigma) * sigma, sigma)
        floor = 0.9 * (2 * math.pi) ** -2.0 * mass * grid ** (-1.0) * 2.0 ** (2 * j)
        assert np.all(np.abs(tm) >= floor)


def test_domination_on_shell():
    # || T^+ ||_p + || T^rem ||_p <= (1/2) || T^- ||_p on D_t when 2^j |I| >= 32
    d, j, p = 3, 9, 4.0
    params = wave.WaveParams(d=d, j=j, t_ref=1.0)
    window = 32.0 * 2.0**-j
    for frac in (0.55, 0.8, 1.0):
        t = 1.0 + frac * window
        rho = t - 1.0
        half = 2.0 ** (-j - 5)
        grid = np.linspace(rho - half, rho + half, 33)
        tm, tp, tr = wave.main_terms_grid(params, t, grid)
        row = lambda v: wave.WaveFieldRow(t, grid, v, 0.0, params)
        n_minus = wave.shell_lp_norm(row(tm), p, (rho - half, rho + half))
        n_plus = wave.shell_lp_norm(row(tp), p, (rho - half, rho + half))
        n_rem = wave.shell_lp_norm(row(tr), p, (rho - half, rho + half))
        assert n_plus + n_rem <= 0.5 * n_minus


def test_decomposition_identity_d2_with_remainder():
    params = wave.WaveParams(d=2, j=7, t_ref=1.0)
    t, r = 1.42, 0.4
    row = wave.propagate(params, t, np.array([r]))
    tm, tp, tr = wave.main_terms(params, t, r)
    assert abs(tr) > 0.0
    assert abs(row.values[0] - (tm + tp + tr)) <= 1e-5 * abs(row.values[0])


# ---------------------------------------------------------------------------
# shell_lp_norm
# ---------------------------------------------------------------------------

def test_shell_norm_constant_field_closed_form():
    params = wave.WaveParams(d=3, j=2, t_ref=1.0)
    grid = np.linspace(1.0, 2.0, 257)
    row = wave.WaveFieldRow(1.5, grid, np.ones(257, dtype=complex), 0.0, params)
    got = wave.shell_lp_norm(row, 2.0, (1.0, 2.0))
    assert got == pytest.approx(math.sqrt(7.0 / 3.0), rel=1e-4)
    assert wave.shell_lp_norm(row, math.inf, (1.0, 2.0)) == 1.0


def test_shell_norm_grid_requirements():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    coarse = np.linspace(1.0, 2.0, 65)  # step 2^-6 > 2^-8/32
    row = wave.WaveFieldRow(1.5, coarse, np.ones(65, dtype=complex), 0.0, params)
    with pytest.raises(RefineFailureError):
        wave.shell_lp_norm(row, 2.0, (1.0, 2.0))


def test_shell_norm_grid_doubling_stability():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    t = 1.5
    rho = 0.5
    half = 2.0 ** (-8 - 5)
    n1, n2 = 33, 65
    norms = []
    for n in (n1, n2):
        grid = np.linspace(rho - half, rho + half, n)
        row = wave.field_row_fast(params, t, grid)
        norms.append(wave.shell_lp_norm(row, 4.0, (rho - half, rho + half)))
    assert abs(norms[1] - norms[0]) <= 1e-4 * norms[1]


def test_shell_scaling_matches_cone_profile():
    # || T^- ||_{L^p(D_t)} ~ 2^(j(d+1)/2) |J_t|^(1/p) at fixed rho
    d, p = 3, 4.0
    logs = []
    js = range(8, 12)
    for j in js:
        params = wave.WaveParams(d=d, j=j, t_ref=1.0)
        rho = 0.5
        half = 2.0 ** (-j - 5)
        grid = np.linspace(rho - half, rho + half, 17)
        tm, _, _ = wave.main_terms_grid(params, 1.5, grid)
        row = wave.WaveFieldRow(1.5, grid, tm, 0.0, params)
        logs.append(math.log2(wave.shell_lp_norm(row, p, (rho - half, rho + half))))
    slope = np.polyfit(list(js), logs, 1)[0]
    assert slope == pytest.approx(0.5 * (d + 1) - 1.0 / p, abs=0.05)


# ---------------------------------------------------------------------------
# data norms
# ---------------------------------------------------------------------------

def test_plancherel_oracle():
    for d, j in [(3, 8), (3, 10), (2, 8)]:
        params = wave.WaveParams(d=d, j=j, t_ref=1.3)
        num = wave.data_norm(params, 2.0)
        ref = wave.data_norm_plancherel(params)
        assert abs(num - ref) <= 1e-3 * ref


def test_sup_norm_growth_slope():
    logs = []
    js = range(8, 13)
    for j in js:
        params = wave.WaveParams(d=3, j=j, t_ref=1.3)
        logs.append(math.log2(wave.data_norm(params, math.inf)))
    slope = np.polyfit(list(js), logs, 1)[0]
    assert slope == pytest.approx(2.0, abs=0.1)


def test_p4_norm_constant_stable():
    ratios = []
    for j in (8, 10, 12):
        params = wave.WaveParams(d=3, j=j, t_ref=1.3)
        ratios.append(wave.data_norm(params, 4.0) / 2.0 ** (j * (2.0 - 0.25)))
    assert max(ratios) / min(ratios) <= 1.1


def test_data_norm_domain():
    params = wave.WaveParams(d=3, j=8)
    with pytest.raises(OutOfRangeError):
        wave.data_norm(params, 1.5)


def test_mass_concentrates_on_cone():
    # L2 mass outside 32  2^-j of the cone radius is below 1%
    params = wave.WaveParams(d=3, j=9, t_ref=1.3)
    total = wave.data_norm_plancherel(params) ** 2
    h = 2.0**-9
    # data itself: cone at r = t_ref
    band = wave.norm_lp(params, 0.0, 2.0, r_max=params.t_ref + 32 * h) ** 2 - \
        wave.norm_lp(params, 0.0, 2.0, r_max=params.t_ref - 32 * h) ** 2
    assert band >= 0.99 * total
    # evolved to t = t_ref: cone at r = 0
    band0 = wave.norm_lp(params, params.t_ref, 2.0, r_max=32 * h) ** 2
    assert band0 >= 0.99 * total


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_wave_field_serialization():
    params = wave.WaveParams(d=3, j=8, t_ref=1.0)
    grid = np.linspace(0.45, 0.55, 5)
    rows = [wave.field_row_fast(params, t, grid) for t in (1.5, 1.6)]
    fld = wave.WaveField(params, rows)
    csv = fld.to_csv()
    assert csv.splitlines()[0] == "t,r,re_u,im_u"
    assert len(csv.splitlines()) == 1 + 2 * len(grid)
    header = json.loads(fld.header_json())
    assert header["d"] == 3 and header["times"] == [1.5, 1.6]
