"""Exact q-counting of domino tilings of quadriculated annuli by flux and volume."""

from .errors import *  # noqa: F401,F403
from .laurent import LaurentPoly, UnitMonomial, canonical, det_exact, equal_up_to_unit, root_power
from .quad_surface import (
    BLACK,
    WHITE,
    Cut,
    QuadSurface,
    TrackSegment,
    build_from_grid,
    build_from_gluing,
    build_ladder,
    build_periodic,
    close_up,
    cover,
    cut_open,
    find_cut,
    find_walls,
    find_zigzag_cut,
    juxtapose,
    load_surface,
    n_fold,
    parse_gluing,
    parse_region,
)
from .homology import adjacency_data, flux_across_cut, hom_values, tiling_invariants
from .oracle import count_tilings, enumerate_tilings, generating_function
from .kasteleyn import build_weight, cover_polynomial, flux_polynomial, kasteleyn_triple
from .track import connection_matrix, enumerate_indices, trace_polynomial
from .heights import flips, height_function

__version__ = "0.1.0"
