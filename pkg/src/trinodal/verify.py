"""Cross-validation sweeps between the independent counting methods.

sweep_modes runs the recursion and the graph construction over every
mode up to a spectral cutoff and records any disagreement in nu, eta, or
loop count, along with any departure of the graph boundary count from
m + n - 3.  oracle_sweep compares the exact count against the dense-grid
oracle over a rectangle of small modes.  Both return their data so the
callers (CLI and the test suite) can decide how loud to be.
"""

from dataclasses import dataclass

import numpy as np

from .counts import counts_block, nodal_count
from .graph import build_graph, counts_from_graph
from .modes import enumerate_spectrum, reduce_mode
from .oracle import stable_count
from .parallel import chunk_bounds, map_chunks, resolve_workers

__all__ = ["SweepResult", "sweep_modes", "oracle_sweep", "write_sweep_csv"]

_CHUNK = 4000


@dataclass(frozen=True)
class SweepResult:
    """Recursion counts for every mode (spectral order) plus every
    disagreement found between the recursion and the graph method.

    Each mismatch is (m, n, field, recursion_value, graph_value) with
    field one of "nu", "eta", "loops", "boundary"; "boundary" compares
    the graph eta of the reduced pair against rm + rn - 3.
    """
    max_lambda: int
    m: np.ndarray
    n: np.ndarray
    lam: np.ndarray
    nu: np.ndarray
    eta: np.ndarray
    loops: np.ndarray
    tiles: np.ndarray
    mismatches: tuple

    def __len__(self):
        return len(self.lam)


def _sweep_chunk(args):
    m, n = args
    nu, eta, loops, tiles = counts_block(m, n)
    mism = []
    cache = {}
    for i in range(len(m)):
        mi, ni = int(m[i]), int(n[i])
        red, t = reduce_mode(mi, ni)
        gc = cache.get(red)
        if gc is None:
            gc = counts_from_graph(build_graph(red.m, red.n))
            cache[red] = gc
        if t * gc.nu != nu[i]:
            mism.append((mi, ni, "nu", int(nu[i]), t * gc.nu))
        if gc.eta != eta[i]:
            mism.append((mi, ni, "eta", int(eta[i]), gc.eta))
        if gc.loops != loops[i]:
            mism.append((mi, ni, "loops", int(loops[i]), gc.loops))
        if gc.eta != red.m + red.n - 3:
            mism.append((mi, ni, "boundary", red.m + red.n - 3, gc.eta))
    return nu, eta, loops, tiles, mism


def sweep_modes(max_lambda, workers=1):
    """Run both exact methods over every mode with lambda <= max_lambda."""
    workers = resolve_workers(workers)
    max_lambda = int(max_lambda)
    if max_lambda < 5:
        empty = np.zeros(0, dtype=np.int64)
        return SweepResult(max_lambda=max_lambda, m=empty, n=empty,
                           lam=empty, nu=empty, eta=empty, loops=empty,
                           tiles=empty, mismatches=())
    spec = enumerate_spectrum(max_lambda)
    bounds = chunk_bounds(len(spec), _CHUNK)
    jobs = [(spec.m[lo:hi], spec.n[lo:hi]) for lo, hi in bounds]
    parts = map_chunks(_sweep_chunk, jobs, workers)
    nu = np.concatenate([p[0] for p in parts])
    eta = np.concatenate([p[1] for p in parts])
    loops = np.concatenate([p[2] for p in parts])
    tiles = np.concatenate([p[3] for p in parts])
    mism = tuple(x for p in parts for x in p[4])
    return SweepResult(max_lambda=max_lambda, m=spec.m, n=spec.n,
                       lam=spec.lam, nu=nu, eta=eta, loops=loops,
                       tiles=tiles, mismatches=mism)


def oracle_sweep(max_mn=40):
    """Compare the exact count with the grid oracle for every mode with
    max(m, n) <= max_mn.  Returns (checked, mismatches) where mismatches
    is a list of (m, n, exact_nu, oracle_nu)."""
    checked = 0
    mismatches = []
    for m in range(2, max_mn + 1):
        for n in range(1, m):
            exact = nodal_count(m, n).nu
            oracle = stable_count(m, n)
            checked += 1
            if exact != oracle:
                mismatches.append((m, n, exact, oracle))
    return checked, mismatches


def write_sweep_csv(result, path):
    """Sweep counts as CSV in spectral order: m,n,lambda,nu,eta,loops,tiles."""
    with open(path, "w", newline="\n") as fh:
        fh.write("m,n,lambda,nu,eta,loops,tiles\n")
        for i in range(len(result)):
            fh.write("%d,%d,%d,%d,%d,%d,%d\n"
                     % (result.m[i], result.n[i], result.lam[i], result.nu[i],
                        result.eta[i], result.loops[i], result.tiles[i]))
