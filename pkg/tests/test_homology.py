import random

import pytest

from annulus.corpus import build_corpus
from annulus.errors import NotACycle
from annulus.homology import adjacency_data, flux_across_cut, permutation_sign
from annulus.oracle import enumerate_tilings
from annulus.quad_surface import build_ladder, cut_open, find_cut, induced_cuts
from util import grid, ring, ring8, ring5x5c


def test_hole_bases():
    d = adjacency_data(ring8())
    assert (len(d.small), d.k) == (0, 4)
    d = adjacency_data(ring(4, 4, 1, 1, 2, 2))
    assert (len(d.small), d.k) == (0, 6)
    d = adjacency_data(ring5x5c())
    assert len(d.small) == len(ring5x5c().interior_vertices()) == 12
    assert d.k == 4


def test_small_hole_values():
    A = ring5x5c()
    d = adjacency_data(A)
    for face in d.small[:3]:
        inv = d.hom_values(d.face_chain(face))
        assert (inv.flux, inv.volume, inv.sign) == (0, 1, -1)


def test_large_hole_of_ring():
    d = adjacency_data(ring8())
    inv = d.hom_values(d.face_chain(d.large))
    assert (inv.flux, inv.volume, inv.sign) == (1, 0, -1)


def test_not_a_cycle():
    d = adjacency_data(ring8())
    chain = [0] * len(ring8().adjacency_edges)
    chain[0] = 1
    with pytest.raises(NotACycle):
        d.hom_values(chain)


def test_ring_tilings():
    A = ring8()
    d = adjacency_data(A)
    t0, t1 = enumerate_tilings(A)
    assert tuple(d.tiling_invariants(t0, t0)) == (0, 0, 1)
    inv = d.tiling_invariants(t1, t0)
    assert abs(inv.flux) == 1 and inv.volume == 0 and inv.sign == -1
    cut = find_cut(A)
    assert {flux_across_cut(A, t, cut) for t in (t0, t1)} in ({0, 1}, {0, -1})


SURFACES = [ring8, ring5x5c, lambda: ring(6, 4, 2, 1, 2, 2), lambda: build_ladder(4, 3),
            lambda: build_ladder(2, 3), lambda: grid(2, 4)]


@pytest.mark.parametrize("make", SURFACES)
def test_basis_geometric_permutation_and_cut_agree(make):
    A = make()
    d = adjacency_data(A)
    ts = enumerate_tilings(A)
    rng = random.Random(1)
    pairs = [(rng.choice(ts), rng.choice(ts)) for _ in range(60)]
    cut = find_cut(A) if A.is_annulus else None
    for t, t0 in pairs:
        h = d.tiling_invariants(t, t0)
        assert tuple(h) == tuple(d.geometric_values(d.difference(t, t0)))
        assert h.sign == permutation_sign(A, t, t0)
        if cut is not None:
            assert h.flux == flux_across_cut(A, t, cut) - flux_across_cut(A, t0, cut)


def test_flux_cut_independent():
    from annulus.quad_surface import find_zigzag_cut

    for e in build_corpus(0)[:12]:
        A = e.surface
        ts = enumerate_tilings(A, cap=100)[:30]
        cuts = [find_cut(A), find_zigzag_cut(A)]
        for c in cuts:
            base = [flux_across_cut(A, t, c) - flux_across_cut(A, ts[0], c) for t in ts]
            assert base == [adjacency_data(A).tiling_invariants(t, ts[0]).flux for t in ts]


def test_equal_flux_across_induced_cuts():
    for A in (ring8(), ring(4, 3, 1, 1, 2, 1), build_ladder(4, 2)):
        seg = cut_open(A, find_cut(A))
        for n in (2, 3):
            An, cuts = induced_cuts(seg, n)
            for t in enumerate_tilings(An, cap=100)[:40]:
                assert len({flux_across_cut(An, t, c) for c in cuts}) == 1
