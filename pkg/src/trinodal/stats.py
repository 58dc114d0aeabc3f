"""Statistics of the normalised nodal count over the spectrum.

The central object is the nodal sequence: every mode (m, n) with
lambda = m^2 + n^2 up to a cutoff, in spectral order, with its exact
nodal count nu and the normalised count xi = nu / N where N is the
1-based position in the sequence.  Window histograms of xi over a
spectral window [lambda, (1+g)*lambda] split the mass by tile-count
strata, so the contribution of tiling modes to each histogram feature is
visible directly.
"""

from dataclasses import dataclass

import numpy as np

from .counts import counts_block
from .modes import enumerate_spectrum
from .parallel import chunk_bounds, map_chunks, resolve_workers

__all__ = [
    "NodalSequence", "nodal_sequence",
    "DistributionHistogram", "window_histogram", "distribution",
    "integrated_distribution",
    "write_sequence_csv", "write_histogram_csv",
    "STRATA_EDGES", "STRATA_NAMES",
]

# tile-count strata: 1, 2, 4-9, 10-99, 100-999, 1000-9999, >= 10000
STRATA_EDGES = np.array([2, 4, 10, 100, 1000, 10000], dtype=np.int64)
STRATA_NAMES = ["tiles_1", "tiles_2", "tiles_4_9", "tiles_10_99",
                "tiles_100_999", "tiles_1000_9999", "tiles_ge_10000"]

_CHUNK = 250_000


@dataclass(frozen=True)
class NodalSequence:
    """Spectral sequence with exact counts; arrays aligned, index 0 is the
    ground state of the antisymmetric spectrum (N = 1)."""
    max_lambda: int
    m: np.ndarray
    n: np.ndarray
    lam: np.ndarray
    nu: np.ndarray
    eta: np.ndarray        # of the reduced pair
    loops: np.ndarray      # of the reduced pair
    tiles: np.ndarray
    xi: np.ndarray         # nu / N

    def __len__(self):
        return len(self.lam)


def _counts_chunk(args):
    m, n = args
    return counts_block(m, n)


def nodal_sequence(max_lambda, workers=1):
    """Exact nodal counts for every mode with lambda <= max_lambda.

    The recursion runs once per distinct reduced pair within each fixed
    chunk of the spectrum; chunk boundaries do not depend on the worker
    count, so the result is identical for any parallelism.
    """
    workers = resolve_workers(workers)
    spec = enumerate_spectrum(max_lambda)
    bounds = chunk_bounds(len(spec), _CHUNK)
    jobs = [(spec.m[lo:hi], spec.n[lo:hi]) for lo, hi in bounds]
    parts = map_chunks(_counts_chunk, jobs, workers)
    if parts:
        nu = np.concatenate([p[0] for p in parts])
        eta = np.concatenate([p[1] for p in parts])
        loops = np.concatenate([p[2] for p in parts])
        tiles = np.concatenate([p[3] for p in parts])
    else:
        nu = eta = loops = tiles = np.zeros(0, dtype=np.int64)
    xi = nu / np.arange(1, len(spec) + 1, dtype=np.float64)
    return NodalSequence(max_lambda=spec.max_lambda, m=spec.m, n=spec.n,
                         lam=spec.lam, nu=nu, eta=eta, loops=loops,
                         tiles=tiles, xi=xi)


@dataclass(frozen=True)
class DistributionHistogram:
    """Histogram of xi over a spectral window, stratified by tile count.

    counts[i] is the number of modes in bin [edges[i], edges[i+1]) (the
    last bin closes at xi_max); mass = counts / window_count; strata has
    one row per tile stratum and sums bin-wise to counts.
    """
    lam_lo: float
    lam_hi: float
    xi_max: float
    edges: np.ndarray          # length bins + 1
    counts: np.ndarray
    mass: np.ndarray
    strata: np.ndarray         # shape (7, bins)
    window_count: int


def window_histogram(seq, lam_lo, lam_hi, bins, xi_max=None,
                     lo_inclusive=True, hi_inclusive=True):
    """Stratified xi histogram over one spectral window.

    xi values outside [0, xi_max] fall out of the histogram (this only
    happens when xi_max is passed explicitly, e.g. to share bin edges
    across windows that are later merged).
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    lo_ok = seq.lam >= lam_lo if lo_inclusive else seq.lam > lam_lo
    hi_ok = seq.lam <= lam_hi if hi_inclusive else seq.lam < lam_hi
    mask = lo_ok & hi_ok
    window_count = int(mask.sum())
    if window_count == 0:
        raise ValueError("no modes with lambda in the window [%r, %r]"
                         % (lam_lo, lam_hi))
    xi = seq.xi[mask]
    tiles = seq.tiles[mask]
    if xi_max is None:
        xi_max = float(xi.max())
    if xi_max <= 0:
        raise ValueError("xi_max must be positive")
    edges = np.linspace(0.0, xi_max, bins + 1)
    counts = np.histogram(xi, bins=edges)[0].astype(np.int64)
    stratum = np.digitize(tiles, STRATA_EDGES)
    strata = np.empty((len(STRATA_NAMES), bins), dtype=np.int64)
    for s in range(len(STRATA_NAMES)):
        strata[s] = np.histogram(xi[stratum == s], bins=edges)[0]
    mass = counts / window_count
    return DistributionHistogram(
        lam_lo=float(lam_lo), lam_hi=float(lam_hi), xi_max=xi_max,
        edges=edges, counts=counts, mass=mass, strata=strata,
        window_count=window_count)


def distribution(seq, lam, growth, bins=1000, xi_max=None):
    """Histogram of xi over the window lambda <= lambda_N <= (1+g)*lambda.

    Requires (1+g)*lambda <= seq.max_lambda so the window is fully inside
    the computed spectrum, and a nonempty window.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if growth <= 0:
        raise ValueError("growth factor must be positive")
    hi = (1.0 + growth) * lam
    if hi > seq.max_lambda:
        raise ValueError("window [%g, %g] exceeds the computed spectrum "
                         "(max_lambda = %d)" % (lam, hi, seq.max_lambda))
    return window_histogram(seq, lam, hi, bins, xi_max=xi_max)


def integrated_distribution(hist):
    """Cumulative counts and mass of a histogram: returns
    (edges, cum_counts, cum_mass) with the cumulative value at each upper
    bin edge."""
    return hist.edges, np.cumsum(hist.counts), np.cumsum(hist.mass)


def _fmt(x):
    return repr(float(x))


def write_sequence_csv(seq, path):
    """Nodal sequence as CSV: N,m,n,lambda,nu,eta,loops,tiles,xi."""
    with open(path, "w", newline="\n") as fh:
        fh.write("N,m,n,lambda,nu,eta,loops,tiles,xi\n")
        for i in range(len(seq)):
            fh.write("%d,%d,%d,%d,%d,%d,%d,%d,%s\n"
                     % (i + 1, seq.m[i], seq.n[i], seq.lam[i], seq.nu[i],
                        seq.eta[i], seq.loops[i], seq.tiles[i],
                        _fmt(seq.xi[i])))


def write_histogram_csv(hist, path):
    """Histogram as CSV with per-stratum counts per bin."""
    with open(path, "w", newline="\n") as fh:
        fh.write("bin_low,bin_high,count,mass," + ",".join(STRATA_NAMES) + "\n")
        for i in range(len(hist.counts)):
            row = [_fmt(hist.edges[i]), _fmt(hist.edges[i + 1]),
                   "%d" % hist.counts[i], _fmt(hist.mass[i])]
            row += ["%d" % hist.strata[s, i] for s in range(len(STRATA_NAMES))]
            fh.write(",".join(row) + "\n")
