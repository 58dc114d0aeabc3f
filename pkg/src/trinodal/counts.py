"""Closed-form nodal counts via the integer loop recursion.

For a non-tiling pair (m, n) the nodal set of phi_{m,n} meets the open
boundary of the triangle in eta = m + n - 3 points, contains I(m, n)
closed loops, and splits the triangle into

    nu = 1 + eta / 2 + I

nodal domains.  The loop count is Itilde(n, k, 0) with k = (m - n - 1) / 2
(an integer, because m + n is odd), where Itilde obeys a three-branch
integer recursion that terminates at n = 1 or k = 0.

Tiling pairs are reduced first; the domain count multiplies by the tile
count, while eta and I are reported for the reduced pair.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .modes import ModePair, is_nontiling, reduce_arrays, reduce_mode, validate_mode


@dataclass(frozen=True)
class NodalSummary:
    """Counts for one mode: nu for the full pattern, eta and loops for the
    reduced pair, and the method that produced them."""

    mode: ModePair
    nu: int
    eta: Optional[int]
    loops: Optional[int]
    tiles: int
    method: str


def _advance(n, k, l):
    """One step of the loop recursion.  The caller guarantees the state is
    not terminal (n > 1 and k > 0).  Returns (term, next_state).

    The three branches are guarded by the position of w = 2k + 1 relative
    to n and 2n.  The half-integer coefficients of the written-out formula
    always combine to integers: n^2 - n is even, and with
    a = 2k^2 + n^2 - n - 2nk + k the combination a + k is even as well.
    The boundary cases w = n and w = 2n cannot be reached from a
    non-tiling start (w = 2n is impossible for odd w; w = n would force
    gcd(n + 2k + 1, n) = n > 1) and signal a caller bug.
    """
    w = 2 * k + 1
    if w < n:
        q = n // w
        return q * (l * k + (2 * l + 1) * k * k), (n % w, k, l)
    if w > 2 * n:
        q = k // n
        return q * (2 * l + 1) * (n * (n - 1) // 2), (n, k % n, l)
    if n < w < 2 * n:
        a = 2 * k * k + n * n - n - 2 * n * k + k
        return l * a + (a + k) // 2, (2 * k - n + 1, n - k - 1, l + 1)
    raise ValueError(
        "degenerate recursion state (n=%d, k=%d): 2k+1 equals n or 2n, "
        "which is unreachable from a non-tiling mode" % (n, k))


def _step_guard(n, k):
    # Each non-terminal step shrinks n or k Euclid-style, so the chain is
    # O(log max(n, k)) long; the guard is far above that.
    return 4 * (int(n).bit_length() + int(k).bit_length()) + 16


def loop_recursion(n, k, l=0):
    """Evaluate Itilde(n, k, l) by an explicit state loop.

    n >= 1, k >= 0, l >= 0.  Terminal states (n = 1 or k = 0) contribute
    nothing.  A depth guard turns a non-terminating chain (impossible for
    valid input) into a RuntimeError instead of a hang.
    """
    n, k, l = int(n), int(k), int(l)
    if n < 1 or k < 0 or l < 0:
        raise ValueError("require n >= 1, k >= 0, l >= 0, got (%d, %d, %d)" % (n, k, l))
    guard = _step_guard(n, k)
    total = 0
    steps = 0
    while n > 1 and k > 0:
        term, (n, k, l) = _advance(n, k, l)
        total += term
        steps += 1
        if steps > guard:
            raise RuntimeError("loop recursion exceeded its termination guard")
    return total


def recursion_trace(n, k, l=0):
    """Like loop_recursion but also returns the visited states.

    Returns (value, states) where states is the list of (n, k, l) tuples
    from the initial state down to the terminal one.
    """
    n, k, l = int(n), int(k), int(l)
    if n < 1 or k < 0 or l < 0:
        raise ValueError("require n >= 1, k >= 0, l >= 0, got (%d, %d, %d)" % (n, k, l))
    guard = _step_guard(n, k)
    states = [(n, k, l)]
    total = 0
    while n > 1 and k > 0:
        term, (n, k, l) = _advance(n, k, l)
        total += term
        states.append((n, k, l))
        if len(states) > guard:
            raise RuntimeError("loop recursion exceeded its termination guard")
    return total, states


def loop_count(m, n):
    """Number of closed nodal loops I(m, n) of a non-tiling mode."""
    m, n = validate_mode(m, n)
    if not is_nontiling(m, n):
        raise ValueError("(%d, %d) is a tiling mode; reduce it first" % (m, n))
    return loop_recursion(n, (m - n - 1) // 2, 0)


def boundary_count(m, n):
    """Number of boundary intersections eta = m + n - 3 of a non-tiling mode."""
    m, n = validate_mode(m, n)
    if not is_nontiling(m, n):
        raise ValueError("(%d, %d) is a tiling mode; reduce it first" % (m, n))
    return m + n - 3


def nodal_count(m, n):
    """Nodal-domain count of any valid mode, by reduction plus the closed
    formulas.  Returns a NodalSummary with nu for the full pattern and
    eta, loops for the reduced pair."""
    m, n = validate_mode(m, n)
    reduced, tiles = reduce_mode(m, n)
    rm, rn = reduced
    eta = rm + rn - 3
    loops = loop_recursion(rn, (rm - rn - 1) // 2, 0)
    nu = tiles * (1 + eta // 2 + loops)
    return NodalSummary(mode=ModePair(m, n), nu=nu, eta=eta, loops=loops,
                        tiles=tiles, method="recursion")


def counts_block(m, n):
    """Vectorised (nu, eta, loops, tiles) for aligned mode arrays.

    eta and loops refer to the reduced pairs, exactly as nodal_count
    reports them.  The loop recursion runs once per distinct reduced pair.
    """
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    m2, n2, tiles = reduce_arrays(m, n)
    if len(m2) == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy(), z.copy(), z.copy()
    stride = int(n2.max()) + 1
    key = m2 * stride + n2
    uniq, inv = np.unique(key, return_inverse=True)
    um = (uniq // stride).tolist()
    un = (uniq % stride).tolist()
    uloops = np.fromiter(
        (loop_recursion(nn, (mm - nn - 1) // 2, 0) for mm, nn in zip(um, un)),
        dtype=np.int64, count=len(uniq))
    loops = uloops[inv]
    eta = m2 + n2 - 3
    nu = tiles * (1 + eta // 2 + loops)
    return nu, eta, loops, tiles


def gcd_invariant_holds(n, k):
    """Check the non-tiling closure gcd(n + 2k + 1, n) = 1 along the whole
    recursion path from (n, k, 0).  Used by property tests."""
    _, states = recursion_trace(n, k, 0)
    return all(math.gcd(sn + 2 * sk + 1, sn) == 1 for sn, sk, _ in states)
