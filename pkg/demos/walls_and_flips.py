"""
Walls, ladders and flips
========================

Ladders are annuli whose boundaries are zig-zags.  No domino crosses a
wall, so the flux polynomial splits into one factor p + 1 per ladder.
The signed version depends on the ladder length: even lengths give
p - 1, odd lengths give p + 1.
"""

from annulus.heights import flip_components, flux_classes
from annulus.homology import adjacency_data
from annulus.kasteleyn import flux_polynomial, signed_form
from annulus.laurent import canonical
from annulus.quad_surface import build_ladder, find_walls

for d, n in [(2, 2), (2, 3), (4, 2), (4, 3)]:
    L = build_ladder(d, n)
    P = flux_polynomial(L)
    S = signed_form(P, adjacency_data(L).k)
    print(f"ladder {d}x{n}: walls {len(find_walls(L))}")
    print("   Phi at q = 1:", canonical(P.at_q(1)))
    print("   signed      :", canonical(S))

# flips within each flux class: a double ladder splits its middle class
D = build_ladder(4, 2)
for f, ts in flux_classes(D).items():
    comps = flip_components(D, ts)
    print(f"double ladder, flux {f:+d}: {len(ts)} tilings in {len(comps)} flip component(s)")
