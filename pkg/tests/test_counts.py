import numpy as np
import pytest

from trinodal.counts import (boundary_count, counts_block,
                             gcd_invariant_holds, loop_count, loop_recursion,
                             nodal_count, recursion_trace)
from trinodal.modes import enumerate_spectrum


def test_loop_recursion_base_cases():
    assert loop_recursion(1, 5, 3) == 0
    assert loop_recursion(1, 0, 0) == 0
    assert loop_recursion(7, 0, 2) == 0


def test_loop_recursion_single_steps():
    # n < w < 2n branch: A = 2k^2 + n^2 - n - 2nk + k
    assert loop_recursion(4, 2, 0) == 4     # A = 6, term (6+2)//2 = 4
    assert loop_recursion(2, 2, 0) == 1
    assert loop_recursion(2, 1, 0) == 1
    # w > 2n branch: floor(k/n) copies of (2l+1)*n(n-1)/2
    assert loop_recursion(5, 5, 0) == 10
    # w < n branch
    assert loop_recursion(4, 1, 0) == 1


def test_loop_recursion_degenerate_state():
    with pytest.raises(ValueError):
        loop_recursion(3, 1, 0)      # 2k+1 == n


def test_recursion_trace_states():
    value, states = recursion_trace(4, 1, 0)
    assert value == 1
    assert states == [(4, 1, 0), (1, 1, 0)]
    value, states = recursion_trace(4, 2, 0)
    assert value == 4
    assert states[0] == (4, 2, 0)
    assert states[-1][0] == 1 or states[-1][1] == 0


def test_gcd_invariant_preserved_along_trajectories():
    # if gcd(n + 2k + 1, n) = 1 at the seed, it holds in every later state,
    # and such trajectories never hit the degenerate 2k+1 in {n, 2n} stop
    import math
    for n in range(1, 60):
        for k in range(0, 60):
            if math.gcd(n + 2 * k + 1, n) != 1:
                continue
            assert gcd_invariant_holds(n, k)


def test_loop_count_known_values():
    assert loop_count(9, 4) == 4
    assert loop_count(7, 2) == 1
    assert loop_count(5, 2) == 1
    assert loop_count(8, 1) == 0
    assert loop_count(7, 4) == 1
    assert loop_count(2, 1) == 0
    assert loop_count(3, 2) == 0


def test_loop_count_rejects_tiling():
    with pytest.raises(ValueError):
        loop_count(6, 2)
    with pytest.raises(ValueError):
        loop_count(9, 5)


def test_boundary_count():
    assert boundary_count(9, 4) == 10
    assert boundary_count(2, 1) == 0
    assert boundary_count(7, 2) == 6
    with pytest.raises(ValueError):
        boundary_count(4, 2)


def test_nodal_count_nontiling():
    s = nodal_count(9, 4)
    assert (s.nu, s.eta, s.loops, s.tiles) == (10, 10, 4, 1)
    assert s.method == "recursion"
    s = nodal_count(2, 1)
    assert (s.nu, s.eta, s.loops, s.tiles) == (1, 0, 0, 1)


def test_nodal_count_tiling_product():
    s = nodal_count(9, 5)
    # reduces to (7, 2): nu' = 1 + 6/2 + 1 = 5, doubled
    assert (s.nu, s.eta, s.loops, s.tiles) == (10, 6, 1, 2)
    assert nodal_count(21, 6).nu == 45
    assert nodal_count(6, 2).nu == 8


def test_euler_identity_links_counts():
    # nu = tiles * (1 + eta/2 + loops) with eta, loops of the reduced pair
    spec = enumerate_spectrum(3000)
    for m, n in zip(spec.m.tolist(), spec.n.tolist()):
        s = nodal_count(m, n)
        assert s.nu == s.tiles * (1 + s.eta // 2 + s.loops)
        assert s.eta % 2 == 0


def test_counts_block_matches_scalar():
    spec = enumerate_spectrum(5000)
    nu, eta, loops, tiles = counts_block(spec.m, spec.n)
    for i in range(len(spec)):
        s = nodal_count(int(spec.m[i]), int(spec.n[i]))
        assert (nu[i], eta[i], loops[i], tiles[i]) == \
            (s.nu, s.eta, s.loops, s.tiles)


def test_counts_block_empty():
    empty = np.zeros(0, dtype=np.int64)
    nu, eta, loops, tiles = counts_block(empty, empty)
    assert len(nu) == len(eta) == len(loops) == len(tiles) == 0
