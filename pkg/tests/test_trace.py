import math

import numpy as np
import pytest

from trinodal.modes import enumerate_spectrum
from trinodal.trace import (CumulativeCurve, boundary_weights, cumulative,
                            loglog_slope, match_peaks, mode_loop_weights,
                            orbit_table, power_spectrum, smooth_fit,
                            spectrum_for_kmax, spectrum_for_qmax,
                            write_curve_csv, write_peaks_csv,
                            write_spectrum_csv)


def test_mode_loop_weights():
    spec = enumerate_spectrum(120)
    w = mode_loop_weights(spec)
    by_mode = {(int(m), int(n)): int(x)
               for m, n, x in zip(spec.m, spec.n, w)}
    assert by_mode[(9, 4)] == 4
    assert by_mode[(7, 2)] == 1
    assert by_mode[(9, 5)] == 2      # 2 tiles of (7, 2)
    assert by_mode[(8, 1)] == 0
    assert by_mode[(2, 1)] == 0


def test_boundary_weights_use_original_mode():
    spec = enumerate_spectrum(30)
    w = boundary_weights(spec)
    by_mode = {(int(m), int(n)): int(x)
               for m, n, x in zip(spec.m, spec.n, w)}
    assert by_mode[(4, 2)] == 3      # tiling mode keeps its own m + n - 3
    assert by_mode[(3, 1)] == 1
    assert by_mode[(2, 1)] == 0


def test_cumulative_jump_at_degenerate_eigenvalue():
    # lambda = 65 hosts (8, 1) and (7, 4): the jump is iota(8,1) + iota(7,4)
    spec = spectrum_for_kmax(10.0)
    curve = cumulative("loops", spec, grid_step=0.005, x_max=10.0)
    k = math.sqrt(65.0)
    below = curve.y[int((k - 0.01) / 0.005)]
    above = curve.y[int((k + 0.01) / 0.005)]
    assert above - below == 1.0


def test_cumulative_matches_direct_sum():
    spec = spectrum_for_kmax(40.0)
    w = mode_loop_weights(spec)
    k_n = np.sqrt(spec.lam)
    curve = cumulative("loops", spec, grid_step=0.01, x_max=40.0)
    for k in [7.0, 13.37, 25.0, 39.99]:
        direct = int(w[k_n <= k].sum())
        assert curve.y[int(round(k / 0.01))] == pytest.approx(direct)


def test_weyl_resampled_curve_agrees_at_eigenvalues():
    # Q(N(k)) == C(k) when N(k) is the exact counting function
    spec = spectrum_for_kmax(30.0)
    w = mode_loop_weights(spec)
    cum = np.cumsum(w)
    k_n = np.sqrt(spec.lam)
    for lam in np.unique(spec.lam)[:50]:
        k = math.sqrt(float(lam))
        n_of_k = int(np.searchsorted(k_n, k + 1e-12, side="right"))
        c_of_k = int(w[k_n <= k + 1e-12].sum())
        assert cum[n_of_k - 1] == c_of_k


def test_cumulative_preconditions():
    spec = spectrum_for_kmax(20.0)
    with pytest.raises(ValueError):
        cumulative("loops", spec, x_max=25.0)
    with pytest.raises(ValueError):
        cumulative("happiness", spec)
    with pytest.raises(ValueError):
        cumulative("loopsWeyl", spec, x_max=1e6)
    with pytest.raises(ValueError):
        cumulative("loops", spec, grid_step=0.0)


def test_spectrum_helpers():
    spec = spectrum_for_kmax(12.0)
    assert spec.max_lambda == 144
    spec = spectrum_for_qmax(50.0)
    assert len(spec) >= math.floor(math.pi * 2500 / 8)
    with pytest.raises(ValueError):
        spectrum_for_kmax(0)
    with pytest.raises(ValueError):
        spectrum_for_qmax(-1)


def test_smooth_fit_recovers_polynomial():
    x = np.arange(0, 2001) * 0.05
    y = 3.0 * x ** 4 + 7.0 * x
    curve = CumulativeCurve(kind="loops", grid_step=0.05, x=x, y=y)
    fit = smooth_fit(curve)
    assert fit.degree == 4
    xs = np.array([20.0, 50.0, 90.0])
    assert np.allclose(fit.predict(xs), 3.0 * xs ** 4 + 7.0 * xs, rtol=1e-9)
    slope = loglog_slope(fit, 50.0, 90.0)
    assert abs(slope - 4.0) < 0.01


def test_smooth_fit_window_and_errors():
    x = np.arange(0, 101) * 1.0
    curve = CumulativeCurve(kind="loops", grid_step=1.0, x=x, y=x ** 2)
    fit = smooth_fit(curve, degree=2)
    assert fit.window == (10.0, 100.0)
    with pytest.raises(ValueError):
        smooth_fit(curve, degree=2, window=(90.0, 100.0))   # too few points


def test_power_spectrum_finds_synthetic_tone():
    dx = 0.01
    x = np.arange(0, 40001) * dx
    l0 = 2 * math.pi * math.hypot(2, 1)    # family (2, 1) length
    y = 0.002 * x ** 4 + 50.0 * np.sin(l0 * x)
    curve = CumulativeCurve(kind="loops", grid_step=dx, x=x, y=y)
    fit = smooth_fit(curve)
    ps = power_spectrum(curve, fit, window=(100.0, 400.0), l_max=20.0)
    assert ps.parseval_error < 1e-6
    top = max(ps.peaks, key=lambda p: p.power)
    assert abs(top.l - l0) <= 0.01
    assert top.power > 5 * ps.median_power
    matched = match_peaks(ps, orbit_table(20.1))
    best = max(matched, key=lambda p: p.power)
    assert best.orbit is not None
    assert best.orbit.cls == "family" and (best.orbit.p, best.orbit.q) == (2, 1)


def test_power_spectrum_preconditions():
    x = np.arange(0, 1001) * 0.01
    curve = CumulativeCurve(kind="loops", grid_step=0.01, x=x, y=np.sin(x))
    fit = smooth_fit(curve, degree=1)
    with pytest.raises(ValueError):
        power_spectrum(curve, fit, window=(9.0, 10.0), l_max=0.5)
    with pytest.raises(ValueError):
        power_spectrum(curve, fit, l_max=1000.0)   # beyond Nyquist pi/dx


def test_orbit_table_content():
    table = orbit_table(4 * math.pi + 0.1)
    as_tuples = [(o.cls, o.p, o.q) for o in table]
    assert as_tuples[0] == ("isolated45", 1, 0)    # sqrt(2) pi is shortest
    assert ("family", 1, 0) in as_tuples
    assert ("cathetus", 1, 0) in as_tuples
    assert ("family", 1, 1) in as_tuples
    lengths = [o.length for o in table]
    assert lengths == sorted(lengths)
    assert all(o.length <= 4 * math.pi + 0.1 for o in table)
    with pytest.raises(ValueError):
        orbit_table(0)


def test_orbit_table_dedup_keeps_leximin():
    table = orbit_table(11 * math.pi)
    ten_pi = [o for o in table if abs(o.length - 10 * math.pi) < 1e-9]
    assert [(o.cls, o.p, o.q) for o in ten_pi] == \
        [("family", 4, 3), ("cathetus", 5, 0)]


def test_match_peaks_prefers_family_on_ties():
    from trinodal.trace import Peak, PowerSpectrum
    peaks = (Peak(l=2 * math.pi + 0.01, power=10.0),
             Peak(l=39.9, power=8.0))
    ps = PowerSpectrum(l=np.zeros(1), power=np.zeros(1), window=(0, 1),
                       peaks=peaks, parseval_error=0.0, median_power=1.0)
    matched = match_peaks(ps, orbit_table(15.0))
    assert matched[0].orbit.cls == "family"
    assert (matched[0].orbit.p, matched[0].orbit.q) == (1, 0)
    assert matched[1].orbit is None


def test_csv_writers(tmp_path):
    spec = spectrum_for_kmax(25.0)
    curve = cumulative("loops", spec, grid_step=0.01, x_max=25.0)
    fit = smooth_fit(curve)
    ps = power_spectrum(curve, fit, window=(5.0, 25.0), l_max=10.0)
    peaks = match_peaks(ps, orbit_table(10.05))
    cpath, spath, ppath = (tmp_path / "c.csv", tmp_path / "s.csv",
                           tmp_path / "p.csv")
    write_curve_csv(curve, str(cpath))
    write_spectrum_csv(ps, str(spath))
    write_peaks_csv(peaks, str(ppath))
    assert cpath.read_text().splitlines()[0] == "x,y"
    assert spath.read_text().splitlines()[0] == "l,power"
    plines = ppath.read_text().splitlines()
    assert plines[0] == "l,power,class,p,q,matched"
    assert len(plines) == len(peaks) + 1
    for line in plines[1:]:
        parts = line.split(",")
        assert parts[5] in ("0", "1")
        assert (parts[2] == "") == (parts[5] == "0")
