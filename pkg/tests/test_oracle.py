import pytest

from trinodal.counts import nodal_count
from trinodal.oracle import grid_count, stable_count


def test_grid_count_headline_mode():
    assert grid_count(9, 4, 512) == 10
    assert stable_count(9, 4) == 10


def test_known_counts():
    assert stable_count(2, 1) == 1
    assert stable_count(3, 1) == 2
    assert stable_count(5, 1) == 4
    assert stable_count(4, 3) == 3
    assert stable_count(7, 4) == 6
    assert stable_count(9, 5) == 10     # tiling: 2 copies of (7, 2)
    assert stable_count(6, 2) == 8      # tiling: 8 copies of (2, 1)


def test_resolution_precondition():
    with pytest.raises(ValueError):
        grid_count(9, 4, 35)
    assert grid_count(9, 4, 36) >= 1


def test_oracle_agrees_with_exact_small_modes():
    for m in range(2, 13):
        for n in range(1, m):
            assert stable_count(m, n) == nodal_count(m, n).nu, (m, n)
