"""Cumulative loop counts, their smooth part, and the length spectrum.

Each mode contributes its loop count iota = tiles * loops(reduced pair)
to a counting function: C(k) sums iota over all modes with sqrt(lambda)
up to k, Q(N) sums the first N modes.  A weighted variant uses the
boundary intersection count m + n - 3 instead of iota.  Subtracting a
fitted polynomial leaves an oscillatory remainder whose Fourier power
spectrum against the variable k has peaks at the lengths of closed
geodesics of the triangle billiard; orbit_table enumerates those lengths
and match_peaks pairs them with spectral peaks.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import Polynomial

from .counts import counts_block
from .modes import enumerate_spectrum, weyl_q
from .parallel import chunk_bounds, map_chunks, resolve_workers

__all__ = [
    "mode_loop_weights", "boundary_weights",
    "CumulativeCurve", "cumulative", "spectrum_for_kmax", "spectrum_for_qmax",
    "SmoothFit", "smooth_fit", "loglog_slope",
    "Peak", "PowerSpectrum", "power_spectrum",
    "OrbitLength", "orbit_table", "match_peaks",
    "write_curve_csv", "write_spectrum_csv", "write_peaks_csv",
]

_CHUNK = 250_000
_CLASS_RANK = {"family": 0, "isolated45": 1, "cathetus": 2}


def _loops_chunk(args):
    m, n = args
    nu, eta, loops, tiles = counts_block(m, n)
    return tiles * loops


def mode_loop_weights(spec, workers=1):
    """iota_n = tiles * loops(reduced) for every mode of the spectrum."""
    workers = resolve_workers(workers)
    bounds = chunk_bounds(len(spec), _CHUNK)
    jobs = [(spec.m[lo:hi], spec.n[lo:hi]) for lo, hi in bounds]
    parts = map_chunks(_loops_chunk, jobs, workers)
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)


def boundary_weights(spec):
    """Boundary intersection count m + n - 3 for every mode (the number of
    interior nodal-line endpoints on the boundary, valid for tiling and
    non-tiling modes alike)."""
    return spec.m + spec.n - 3


def spectrum_for_kmax(k_max):
    """Spectrum covering sqrt(lambda) <= k_max."""
    if k_max <= 0:
        raise ValueError("k_max must be positive")
    return enumerate_spectrum(max(5, math.ceil(k_max * k_max)))


def spectrum_for_qmax(q_max):
    """Spectrum long enough that index N(q_max) = floor(pi q^2 / 8) exists.

    Starts from a Weyl-law estimate with a boundary-term margin and grows
    until the sequence is long enough."""
    if q_max <= 0:
        raise ValueError("q_max must be positive")
    target = int(math.floor(math.pi * q_max * q_max / 8.0))
    lam = max(5, math.ceil(q_max * q_max + 6.0 * q_max + 64.0))
    for _ in range(64):
        spec = enumerate_spectrum(lam)
        if len(spec) >= target:
            return spec
        lam = math.ceil(lam * 1.3) + 64
    raise RuntimeError("could not reach spectral index %d" % target)


@dataclass(frozen=True)
class CumulativeCurve:
    """A cumulative counting function sampled on a uniform grid.

    kind "loops":     y(x) = sum of iota over modes with sqrt(lambda) <= x
    kind "boundary":  y(x) = sum of (m + n - 3) over sqrt(lambda) <= x
    kind "loopsWeyl": y(x) = sum of iota over the first floor(pi x^2/8)
                      modes (the Weyl-resampled count Q at abscissa q = x)
    """
    kind: str
    grid_step: float
    x: np.ndarray
    y: np.ndarray


def cumulative(kind, spec, grid_step=0.01, x_max=None, workers=1):
    """Sample a cumulative counting function on the grid i*grid_step."""
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    if kind in ("loops", "loopsWeyl"):
        w = mode_loop_weights(spec, workers=workers)
    elif kind == "boundary":
        w = boundary_weights(spec)
    else:
        raise ValueError("unknown curve kind %r" % (kind,))
    cum = np.concatenate([[0], np.cumsum(w, dtype=np.int64)])
    if kind == "loopsWeyl":
        if x_max is None:
            x_max = weyl_q(len(spec))
        if math.floor(math.pi * x_max * x_max / 8.0) > len(spec):
            raise ValueError("x_max %g needs spectral index beyond the "
                             "computed %d modes" % (x_max, len(spec)))
        x = np.arange(int(math.floor(x_max / grid_step)) + 1) * grid_step
        idx = np.floor(math.pi * x * x / 8.0).astype(np.int64)
        y = cum[idx].astype(np.float64)
    else:
        k_n = np.sqrt(spec.lam.astype(np.float64))
        if x_max is None:
            x_max = math.sqrt(spec.max_lambda)
        if x_max > math.sqrt(spec.max_lambda) * (1 + 1e-12):
            raise ValueError("x_max %g exceeds sqrt(max_lambda) = %g"
                             % (x_max, math.sqrt(spec.max_lambda)))
        x = np.arange(int(math.floor(x_max / grid_step)) + 1) * grid_step
        idx = np.searchsorted(k_n, x, side="right")
        y = cum[idx].astype(np.float64)
    return CumulativeCurve(kind=kind, grid_step=float(grid_step), x=x, y=y)


# ---------------------------------------------------------------------------
# smooth part

@dataclass(frozen=True)
class SmoothFit:
    """Polynomial fit of the smooth part of a cumulative curve.

    For "loops" and "boundary" the polynomial is in x; for "loopsWeyl" it
    is in the Weyl variable u = pi x^2 / 8 (degree 2 there corresponds to
    degree 4 in x)."""
    kind: str
    degree: int
    window: tuple
    poly: Polynomial
    cond: float

    def _u(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "loopsWeyl":
            return np.pi * x * x / 8.0
        return x

    def predict(self, x):
        return self.poly(self._u(x))


_DEFAULT_DEGREE = {"loops": 4, "boundary": 4, "loopsWeyl": 2}
_COND_LIMIT = 1e12


def smooth_fit(curve, degree=None, window=None):
    """Least-squares polynomial for the smooth part of a cumulative curve.

    The default window drops the lowest 10 percent of the x range, where
    the counting function is too lumpy to follow a power law.  Requires at
    least 10 points per polynomial degree; raises RuntimeError when the
    design matrix condition number exceeds 1e12.
    """
    if degree is None:
        degree = _DEFAULT_DEGREE[curve.kind]
    if window is None:
        lo = curve.x[0] + 0.1 * (curve.x[-1] - curve.x[0])
        window = (float(lo), float(curve.x[-1]))
    lo, hi = window
    mask = (curve.x >= lo) & (curve.x <= hi)
    npts = int(mask.sum())
    if npts < 10 * degree:
        raise ValueError("fit window [%g, %g] holds %d points; need at "
                         "least %d" % (lo, hi, npts, 10 * degree))
    xw = curve.x[mask]
    yw = curve.y[mask]
    if curve.kind == "loopsWeyl":
        uw = np.pi * xw * xw / 8.0
    else:
        uw = xw
    poly, diag = Polynomial.fit(uw, yw, degree, full=True)
    sv = diag[2]
    cond = float(sv[0] / sv[-1])
    if cond > _COND_LIMIT:
        raise RuntimeError("fit is ill-conditioned (cond = %.3g)" % cond)
    return SmoothFit(kind=curve.kind, degree=int(degree),
                     window=(float(lo), float(hi)), poly=poly, cond=cond)


def loglog_slope(fit, x_lo, x_hi):
    """Log-log slope of the fitted smooth curve between two abscissae."""
    y_lo, y_hi = float(fit.predict(x_lo)), float(fit.predict(x_hi))
    if y_lo <= 0 or y_hi <= 0:
        raise ValueError("fitted values must be positive for a log-log slope")
    return (math.log(y_hi) - math.log(y_lo)) / (math.log(x_hi) - math.log(x_lo))


# ---------------------------------------------------------------------------
# length spectrum

@dataclass(frozen=True)
class OrbitLength:
    """One closed-orbit length of the right isosceles triangle billiard.

    cls "family": L = 2*pi*sqrt(p^2 + q^2), p >= q >= 0, (p, q) != (0, 0);
    cls "isolated45": L = sqrt(2)*pi*p (q = 0);
    cls "cathetus": L = 2*pi*p (q = 0).
    """
    length: float
    cls: str
    p: int
    q: int


@dataclass(frozen=True)
class Peak:
    l: float
    power: float
    orbit: OrbitLength = None


@dataclass(frozen=True)
class PowerSpectrum:
    """Power of the oscillatory remainder against orbit length l."""
    l: np.ndarray
    power: np.ndarray
    window: tuple
    peaks: tuple
    parseval_error: float
    median_power: float


def power_spectrum(curve, fit, window=None, l_max=40.0, l_step=0.005):
    """Tapered Fourier power of y - fit over a window of the curve.

    The remainder is Hann-tapered, zero-padded to a power of two fine
    enough that the native frequency spacing is at most l_step, and
    transformed with F(l) = dx * sum r_w exp(-i l x).  The power is
    interpolated onto the uniform grid l = 0 .. l_max step l_step.  The
    window must span at least one period of the slowest length of
    interest (width >= 2*pi/l_max) and the grid must resolve the fastest
    (l_max <= pi/dx).  Peaks are strict local maxima exceeding five times
    the median power.
    """
    if window is None:
        lo = curve.x[0] + 0.1 * (curve.x[-1] - curve.x[0])
        window = (float(lo), float(curve.x[-1]))
    lo, hi = window
    if l_max <= 0 or l_step <= 0:
        raise ValueError("l_max and l_step must be positive")
    if hi - lo < 2 * math.pi / l_max:
        raise ValueError("window width %g is below one period 2*pi/l_max "
                         "= %g" % (hi - lo, 2 * math.pi / l_max))
    dx = curve.grid_step
    if l_max > math.pi / dx:
        raise ValueError("l_max %g exceeds the Nyquist frequency pi/dx = %g"
                         % (l_max, math.pi / dx))
    mask = (curve.x >= lo) & (curve.x <= hi)
    xs = curve.x[mask]
    r = curve.y[mask] - fit.predict(xs)
    npts = len(r)
    if npts < 16:
        raise ValueError("window holds only %d samples" % npts)
    rw = r * np.hanning(npts)
    need = max(npts, int(math.ceil(2 * math.pi / (l_step * dx))))
    m_pad = 1 << (need - 1).bit_length()
    f = dx * np.fft.rfft(rw, m_pad)
    p_native = np.abs(f) ** 2
    dl = 2 * math.pi / (m_pad * dx)
    l_native = dl * np.arange(len(f))
    lhs = dl * (p_native[0] + 2 * p_native[1:-1].sum() + p_native[-1])
    rhs = 2 * math.pi * dx * float(np.sum(rw * rw))
    parseval_error = abs(lhs - rhs) / rhs if rhs else 0.0
    n_l = int(round(l_max / l_step))
    l = np.arange(n_l + 1) * l_step
    power = np.interp(l, l_native, p_native)
    median_power = float(np.median(power))
    inner = np.nonzero((power[1:-1] > power[:-2])
                       & (power[1:-1] > power[2:])
                       & (power[1:-1] > 5 * median_power))[0] + 1
    peaks = tuple(Peak(l=float(l[i]), power=float(power[i])) for i in inner)
    return PowerSpectrum(l=l, power=power, window=(float(lo), float(hi)),
                         peaks=peaks, parseval_error=float(parseval_error),
                         median_power=median_power)


def orbit_table(max_length):
    """Closed-orbit lengths of the billiard up to max_length.

    Within each class, distinct (p, q) giving the same length are merged
    keeping the lexicographically smallest representative; equal lengths
    in different classes are kept as separate rows.  Sorted by (length,
    class rank, p, q).
    """
    if max_length <= 0:
        raise ValueError("max_length must be positive")
    rows = {}

    def add(length, cls, p, q):
        if length > max_length:
            return
        key = (cls, round(length, 12))
        old = rows.get(key)
        if old is None or (p, q) < (old.p, old.q):
            rows[key] = OrbitLength(length=length, cls=cls, p=p, q=q)

    p_hi = int(max_length / (2 * math.pi)) + 1
    for p in range(0, p_hi + 1):
        for q in range(0, p + 1):
            if p == 0 and q == 0:
                continue
            add(2 * math.pi * math.hypot(p, q), "family", p, q)
    n_hi = int(max_length / (math.sqrt(2) * math.pi)) + 1
    for p in range(1, n_hi + 1):
        add(math.sqrt(2) * math.pi * p, "isolated45", p, 0)
    n_hi = int(max_length / (2 * math.pi)) + 1
    for p in range(1, n_hi + 1):
        add(2 * math.pi * p, "cathetus", p, 0)
    return sorted(rows.values(),
                  key=lambda o: (o.length, _CLASS_RANK[o.cls], o.p, o.q))


def match_peaks(spectrum, table, tolerance=0.05):
    """Attach the nearest orbit length (within tolerance) to each peak.

    Ties break toward the smaller (class rank, p, q); unmatched peaks keep
    orbit None.  Returns a new peak tuple in the original order.
    """
    out = []
    for pk in spectrum.peaks:
        best = None
        for orb in table:
            d = abs(orb.length - pk.l)
            if d > tolerance:
                continue
            cand = (d, _CLASS_RANK[orb.cls], orb.p, orb.q)
            if best is None or cand < best[0]:
                best = (cand, orb)
        out.append(replace(pk, orbit=best[1]) if best else pk)
    return tuple(out)


# ---------------------------------------------------------------------------
# CSV output

def _fmt(v):
    return repr(float(v))


def write_curve_csv(curve, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("x,y\n")
        for i in range(len(curve.x)):
            fh.write("%s,%s\n" % (_fmt(curve.x[i]), _fmt(curve.y[i])))


def write_spectrum_csv(spectrum, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("l,power\n")
        for i in range(len(spectrum.l)):
            fh.write("%s,%s\n" % (_fmt(spectrum.l[i]), _fmt(spectrum.power[i])))


def write_peaks_csv(peaks, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("l,power,class,p,q,matched\n")
        for pk in peaks:
            if pk.orbit is None:
                fh.write("%s,%s,,,,0\n" % (_fmt(pk.l), _fmt(pk.power)))
            else:
                fh.write("%s,%s,%s,%d,%d,1\n"
                         % (_fmt(pk.l), _fmt(pk.power), pk.orbit.cls,
                            pk.orbit.p, pk.orbit.q))
