import pytest

from annulus.errors import CapExceeded
from annulus.homology import adjacency_data
from annulus.laurent import LaurentPoly as L, canonical, equal_up_to_unit
from annulus.oracle import (
    count_segment_tilings,
    count_tilings,
    enumerate_tilings,
    flux_counts,
    generating_function,
)
from annulus.quad_surface import build_ladder, cut_open, find_cut
from annulus.track import connection_matrix, enumerate_indices
from util import grid, ring, ring8

p = L.p()


def test_small_counts():
    assert count_tilings(grid(2, 2)) == 2
    assert count_tilings(grid(2, 3)) == 3
    assert count_tilings(ring8()) == 2
    assert count_tilings(grid(4, 4)) == 36
    assert count_tilings(grid(3, 3)) == 0


def test_deterministic_order():
    A = ring(6, 4, 2, 1, 2, 2)
    assert enumerate_tilings(A) == enumerate_tilings(A)
    assert len(set(enumerate_tilings(A))) == count_tilings(A)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_tilings(grid(8, 8), cap=44)


def test_limit():
    assert len(enumerate_tilings(grid(4, 4), limit=5)) == 5


def test_ring_generating_function():
    s, u = generating_function(ring8())
    assert canonical(u) == 1 + p
    assert canonical(s) == canonical(1 - p)


def test_ladder_generating_function():
    s, u = generating_function(build_ladder(2, 2))
    assert len(u) == 2 and u.coefficient_sum() == 2
    # the two tilings differ by the large hole, whose sign is -1 here
    assert equal_up_to_unit(s.at_q(1), 1 - p)


def test_unbalanced_is_zero():
    s, u = generating_function(ring(4, 3, 1, 1, 1, 1))
    assert not s and not u


def test_unsigned_sum_counts_tilings():
    for A in (ring8(), ring(6, 4, 2, 1, 2, 2), build_ladder(4, 3)):
        _, u = generating_function(A)
        assert u.coefficient_sum() == count_tilings(A)
        assert sum(len(v) for v in flux_counts(A).values()) == count_tilings(A)


@pytest.mark.parametrize("make", [ring8, lambda: ring(4, 4, 1, 1, 2, 2), lambda: build_ladder(4, 2),
                                  lambda: ring(6, 4, 2, 1, 2, 2)])
def test_segment_counts_match_connection_matrix(make):
    A = make()
    seg = cut_open(A, find_cut(A))
    C = connection_matrix(seg, cap=100)
    for f, (rows, cols, mat) in C.blocks.items():
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                assert count_segment_tilings(seg, r.bits, c.bits, cap=100) == mat[i][j]


def test_sign_is_permutation_parity():
    A = grid(4, 4)
    d = adjacency_data(A)
    ts = enumerate_tilings(A)
    # 36 tilings of the 4x4 square; the signed count is +-1 or 0
    assert abs(sum(d.tiling_invariants(t, ts[0]).sign for t in ts)) <= 1
    assert len(enumerate_indices(cut_open(ring8(), find_cut(ring8())), 0)) == 2
