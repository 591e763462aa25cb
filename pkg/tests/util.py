"""Small constructors shared by the tests."""

from annulus.corpus import rect, ring_cells
from annulus.quad_surface import build_from_grid


def grid(w, h, holes=()):
    holes = set(holes)
    return build_from_grid([c for c in rect(w, h) if c not in holes])


def ring(w, h, hx, hy, hw, hh):
    return build_from_grid(ring_cells(w, h, hx, hy, hw, hh))


RING8 = dict(w=3, h=3, hx=1, hy=1, hw=1, hh=1)


def ring8():
    return ring(**RING8)


def ring5x5c():
    return grid(5, 5, {(2, 2)})
