"""Spectrum enumeration and tiling reduction for the right isosceles triangle.

The Dirichlet eigenfunctions of the triangle D = {0 <= y <= x <= pi} are

    phi_{m,n}(x, y) = sin(m x) sin(n y) - sin(n x) sin(m y),   m > n >= 1,

with eigenvalue lambda = m^2 + n^2.  The eigenvalues are listed in
ascending order, degeneracies broken by increasing n.

A pair (m, n) is *non-tiling* when gcd(m, n) = 1 and m + n is odd.  Every
other pair has a nodal pattern that consists of congruent copies (tiles)
of the pattern of a reduced non-tiling pair: dividing by d = gcd(m, n)
contributes d^2 tiles, and one parity step (m, n) -> ((m+n)/2, (m-n)/2),
taken when m + n is even, contributes a factor 2.  After the gcd division
a single parity step always lands on a non-tiling pair, so no iteration
is needed.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Eigenvalue arithmetic is done in 64-bit integers; m^2 + n^2 stays
# representable as long as lambda <= 2^62.
MAX_LAMBDA = 2 ** 62


class ModePair(NamedTuple):
    """Quantum numbers of one eigenfunction, m > n >= 1."""

    m: int
    n: int

    @property
    def lam(self):
        """Eigenvalue m^2 + n^2 (exact integer)."""
        return self.m * self.m + self.n * self.n


class Reduction(NamedTuple):
    """Result of tiling reduction: the reduced pair and the tile count."""

    reduced: ModePair
    tiles: int


def validate_mode(m, n):
    """Raise ValueError unless m > n >= 1 with integer entries."""
    if int(m) != m or int(n) != n:
        raise ValueError("mode numbers must be integers, got (%r, %r)" % (m, n))
    m, n = int(m), int(n)
    if not m > n >= 1:
        raise ValueError("invalid mode (%d, %d): require m > n >= 1" % (m, n))
    return m, n


def is_nontiling(m, n):
    """True iff gcd(m, n) = 1 and m + n is odd (no tiling structure)."""
    m, n = validate_mode(m, n)
    return math.gcd(m, n) == 1 and (m + n) % 2 == 1


def reduce_mode(m, n):
    """Tiling reduction of a mode: gcd division first, then at most one
    parity step.  Returns Reduction(reduced=ModePair, tiles=int) with a
    non-tiling reduced pair."""
    m, n = validate_mode(m, n)
    d = math.gcd(m, n)
    m1, n1 = m // d, n // d
    tiles = d * d
    if (m1 + n1) % 2 == 0:
        m1, n1 = (m1 + n1) // 2, (m1 - n1) // 2
        tiles *= 2
    # One parity step suffices once gcd = 1; keep the invariant asserted.
    assert math.gcd(m1, n1) == 1 and (m1 + n1) % 2 == 1 and m1 > n1 >= 1
    return Reduction(ModePair(m1, n1), tiles)


def reduce_arrays(m, n):
    """Vectorised tiling reduction.

    Parameters are integer arrays of equal shape with m > n >= 1.
    Returns (m_reduced, n_reduced, tiles) as int64 arrays.
    """
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    d = np.gcd(m, n)
    m1 = m // d
    n1 = n // d
    tiles = d * d
    par = (m1 + n1) % 2 == 0
    m2 = np.where(par, (m1 + n1) // 2, m1)
    n2 = np.where(par, (m1 - n1) // 2, n1)
    tiles = np.where(par, 2 * tiles, tiles)
    return m2, n2, tiles


@dataclass(frozen=True)
class SpectralSequence:
    """Ordered eigenvalue list below a cutoff.

    Arrays m, n, lam are aligned and sorted by (lam, n) ascending; the
    spectral index N of row i is i + 1.
    """

    max_lambda: int
    m: np.ndarray
    n: np.ndarray
    lam: np.ndarray

    def __len__(self):
        return len(self.lam)

    def mode(self, i):
        """ModePair of the eigenfunction with spectral index i + 1."""
        return ModePair(int(self.m[i]), int(self.n[i]))


def _isqrt_array(x):
    """Exact floor square root of a non-negative int64 array."""
    r = np.sqrt(x.astype(np.float64)).astype(np.int64)
    # float sqrt is off by at most a few ulp; correct exactly
    while True:
        over = r * r > x
        if not over.any():
            break
        r[over] -= 1
    while True:
        under = (r + 1) * (r + 1) <= x
        if not under.any():
            break
        r[under] += 1
    return r


def enumerate_spectrum(max_lambda):
    """All modes with m > n >= 1 and m^2 + n^2 <= max_lambda, ordered by
    (lambda, n) ascending.  Raises ValueError below the ground state
    lambda = 5 and above the 2^62 overflow cap."""
    ml = int(max_lambda)
    if ml < 5:
        raise ValueError("max_lambda=%d is below the smallest eigenvalue 5" % ml)
    if ml > MAX_LAMBDA:
        raise ValueError("max_lambda exceeds the 2^62 integer-arithmetic cap")
    m_hi = math.isqrt(ml - 1)
    ms = np.arange(2, m_hi + 1, dtype=np.int64)
    rem = ml - ms * ms
    nmax = np.minimum(ms - 1, _isqrt_array(rem))
    keep = nmax >= 1
    ms, nmax = ms[keep], nmax[keep]
    total = int(nmax.sum())
    m_arr = np.repeat(ms, nmax)
    stops = np.cumsum(nmax)
    starts = stops - nmax
    n_arr = np.arange(1, total + 1, dtype=np.int64) - np.repeat(starts, nmax)
    lam = m_arr * m_arr + n_arr * n_arr
    order = np.lexsort((n_arr, lam))
    return SpectralSequence(max_lambda=ml, m=m_arr[order], n=n_arr[order],
                            lam=lam[order])


def weyl_q(N):
    """Weyl rescaling q = sqrt(8 N / pi): the square root of the eigenvalue
    estimated from the counting index N (area pi^2/2 triangle)."""
    N = float(N)
    if not N > 0:
        raise ValueError("weyl_q requires a positive argument")
    return math.sqrt(8.0 * N / math.pi)
