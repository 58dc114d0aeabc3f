"""Independent nodal-domain counter on a dense sample grid.

This is the brute-force cross-check for the exact methods: evaluate the
eigenfunction on an R x R subdivision of [0, pi], keep the strict lower
triangle (the domain interior), split into positive and negative sample
sets, and count 4-connected components of each with scipy.ndimage.  At
sufficient resolution every nodal domain contains a connected block of
same-sign samples and no two domains merge, so the count stabilises at
the true value.  Intended for tests and spot checks only, never as a
source of statistics.
"""

import numpy as np
from scipy import ndimage

from .modes import validate_mode

__all__ = ["grid_count", "stable_count"]

_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def grid_count(m, n, resolution):
    """Count sign-component domains at one fixed resolution.

    Samples phi_{m,n} at (i, j)*pi/resolution for 0 < j < i < resolution
    and counts 4-connected positive and negative components.  Requires
    resolution >= 4*max(m, n) so each lattice cell of the function holds
    at least a couple of samples.
    """
    m, n = validate_mode(m, n)
    resolution = int(resolution)
    if resolution < 4 * max(m, n):
        raise ValueError("resolution %d too coarse for mode (%d, %d)"
                         % (resolution, m, n))
    x = np.pi * np.arange(1, resolution) / resolution
    phi = (np.outer(np.sin(m * x), np.sin(n * x))
           - np.outer(np.sin(n * x), np.sin(m * x)))
    inside = np.tri(resolution - 1, resolution - 1, -1, dtype=bool)
    sure = np.abs(phi) >= 1e-12
    pos = inside & sure & (phi > 0)
    neg = inside & sure & (phi < 0)
    _, n_pos = ndimage.label(pos, structure=_CROSS)
    _, n_neg = ndimage.label(neg, structure=_CROSS)
    return int(n_pos) + int(n_neg)


def stable_count(m, n, start_factor=20, max_doublings=6):
    """Grid count refined until two consecutive resolutions agree.

    Starts at resolution start_factor*max(m, n) and doubles until the
    count repeats, which is taken as the stable value.  Raises
    RuntimeError if max_doublings doublings never stabilise.
    """
    m, n = validate_mode(m, n)
    r = start_factor * max(m, n)
    prev = grid_count(m, n, r)
    for _ in range(max_doublings):
        r *= 2
        cur = grid_count(m, n, r)
        if cur == prev:
            return cur
        prev = cur
    raise RuntimeError("grid count for (%d, %d) did not stabilise by "
                       "resolution %d" % (m, n, r))
