import random

from hypothesis import given, settings
from hypothesis import strategies as st

from annulus.corpus import build_corpus, random_disk
from annulus.heights import (
    VOLUME_HEIGHT_SIGN,
    apply_flip,
    deift_tomei_sum,
    disk_volume_difference,
    extremal_flux_data,
    find_nontrespassed_cut,
    flip_class_connected,
    flip_components,
    flips,
    flux_classes,
    height_function,
    is_height_function,
    measure_volume_height_sign,
    pointwise,
    tiling_from_heights,
    trespasses,
)
from annulus.homology import adjacency_data
from annulus.oracle import enumerate_tilings
from annulus.quad_surface import build_from_grid, build_ladder, find_cut
from util import grid, ring, ring8, ring5x5c


def test_two_by_two_heights_differ_at_center():
    D = grid(2, 2)
    t0, t1 = enumerate_tilings(D)
    a, b = height_function(D, t0), height_function(D, t1)
    diff = {v: a[v] - b[v] for v in range(D.n_vertices) if a[v] != b[v]}
    assert list(diff) == D.interior_vertices()
    assert abs(next(iter(diff.values()))) == 4


def test_boundary_heights_independent_of_tiling():
    for D in (grid(4, 4), grid(3, 4), grid(2, 6)):
        base = min(D.boundary_vertices())
        hs = [height_function(D, t, base) for t in enumerate_tilings(D)]
        for v in D.boundary_vertices():
            assert len({h[v] for h in hs}) == 1


def test_two_by_two_flip():
    D = grid(2, 2)
    t0, t1 = enumerate_tilings(D)
    (mv,) = flips(D, t0)
    assert apply_flip(t0, mv) == t1
    (back,) = flips(D, t1)
    assert back.dnu == -mv.dnu and apply_flip(t1, back) == t0


def test_volume_height_sign():
    assert measure_volume_height_sign() == VOLUME_HEIGHT_SIGN


def test_flip_changes_volume_and_sign():
    for D in (grid(4, 4), grid(3, 4)):
        d = adjacency_data(D)
        ts = enumerate_tilings(D)
        for t in ts[:12]:
            for mv in flips(D, t):
                u = apply_flip(t, mv)
                inv = d.tiling_invariants(u, t)
                assert inv.volume == mv.dnu
                assert inv.sign == -1
                assert disk_volume_difference(D, u, t) == mv.dnu


def test_disk_volume_matches_homology():
    rng = random.Random(5)
    for _ in range(8):
        D = random_disk(rng, max_cells=16)
        ts = enumerate_tilings(D, cap=200)
        if not ts:
            continue
        d = adjacency_data(D)
        for t in ts[:10]:
            assert disk_volume_difference(D, t, ts[0]) == d.tiling_invariants(t, ts[0]).volume


def test_height_characterization():
    for D in (grid(4, 4), grid(2, 3), build_from_grid([(0, 0), (1, 0), (1, 1), (2, 1)])):
        base = min(D.boundary_vertices())
        for t in enumerate_tilings(D):
            h = height_function(D, t, base)
            assert is_height_function(D, h, base)
            assert tiling_from_heights(D, h) == t


def test_non_height_rejected():
    D = grid(2, 2)
    t = enumerate_tilings(D)[0]
    base = min(D.boundary_vertices())
    h = height_function(D, t, base)
    bumped = list(h)
    bumped[D.interior_vertices()[0]] += 2
    assert not is_height_function(D, bumped, base)


def test_height_lattice():
    D = grid(4, 4)
    base = min(D.boundary_vertices())
    hs = [height_function(D, t, base) for t in enumerate_tilings(D)]
    rng = random.Random(0)
    for _ in range(30):
        a, b = rng.choice(hs), rng.choice(hs)
        for op in (min, max):
            h = pointwise(op, a, b)
            assert is_height_function(D, h, base)
            assert tiling_from_heights(D, h) is not None


def test_disk_flip_connected():
    D = grid(4, 4)
    assert len(flip_components(D, enumerate_tilings(D))) == 1


def test_ring_extremes():
    A = ring8()
    fmin, fmax, counts = extremal_flux_data(A)
    assert fmax - fmin == 1
    assert (counts[fmin], counts[fmax]) == (1, 1)


def test_width_two_ring_gap():
    A = ring(6, 6, 2, 2, 2, 2)
    fmin, fmax, counts = extremal_flux_data(A, tilings=enumerate_tilings(A, cap=100))
    assert 1 <= fmax - fmin <= 2


def test_ladder_classes_single_tiling():
    A = build_ladder(2, 3)
    fmin, fmax, counts = extremal_flux_data(A)
    assert fmax - fmin == 1
    assert set(counts.values()) == {1}


def test_double_ladder_middle_class_disconnected():
    A = build_ladder(4, 2)
    classes = flux_classes(A)
    fs = sorted(classes)
    mid = fs[len(fs) // 2]
    assert not flip_class_connected(A, mid)
    assert flip_class_connected(A, fs[0]) and flip_class_connected(A, fs[-1])


def test_wall_free_classes_connected():
    for A in (ring5x5c(), ring(6, 4, 2, 1, 2, 2), ring(4, 4, 1, 1, 2, 2)):
        for f in flux_classes(A):
            assert flip_class_connected(A, f)


def test_nontrespassed_cut_at_extremes():
    for A in (ring8(), ring5x5c(), ring(6, 4, 2, 1, 2, 2)):
        cut = find_cut(A)
        ts = enumerate_tilings(A, cap=100)
        classes = flux_classes(A, cut, ts)
        for f in (min(classes), max(classes)):
            c = find_nontrespassed_cut(A, f, cut, ts)
            assert c is not None
            assert not any(trespasses(A, t, c) for t in classes[f])


def test_deift_tomei_small():
    assert abs(deift_tomei_sum(grid(1, 2))) == 1
    assert deift_tomei_sum(grid(2, 2)) == 0


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_deift_tomei_random_disks(seed):
    D = random_disk(random.Random(seed), max_cells=20)
    assert deift_tomei_sum(D, cap=1000) in (-1, 0, 1)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_flips_preserve_tilings(seed):
    rng = random.Random(seed)
    D = grid(rng.choice([2, 4]), rng.randint(2, 4))
    t = rng.choice(enumerate_tilings(D))
    for mv in flips(D, t):
        u = apply_flip(t, mv)
        assert len(u) == len(t)
        assert tiling_from_heights(D, height_function(D, u)) == u


def test_corpus_extremal_counts_positive():
    for e in build_corpus(0)[:10]:
        fmin, fmax, counts = extremal_flux_data(e.surface, tilings=enumerate_tilings(e.surface, cap=200))
        assert counts[fmin] >= 1 and counts[fmax] >= 1


def test_segment_height_offset_tracks_flux():
    from annulus.quad_surface import cut_open
    from annulus.track import index_flux, iter_segment_tilings

    for A in (ring5x5c(), ring(6, 4, 2, 1, 2, 2), build_ladder(4, 3)):
        seg = cut_open(A, find_cut(A))
        v = seg.a0_vertices()[-1]
        offsets = set()
        for t in iter_segment_tilings(seg, cap=100):
            h = height_function(seg.surface, t.dominoes, seg.base_vertex(), t.preferred(seg))
            offsets.add(h[v] - 4 * index_flux(seg, 0, t.i0))
        assert len(offsets) == 1
