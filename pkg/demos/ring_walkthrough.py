"""
Counting tilings of a small ring
================================

Build the 8-square ring, list its tilings with their flux, volume and
sign, then get the same polynomial three ways: brute force, a
determinant, and the trace of a transfer matrix.
"""

from annulus.homology import adjacency_data
from annulus.kasteleyn import flux_polynomial, signed_form
from annulus.laurent import canonical
from annulus.oracle import enumerate_tilings, generating_function
from annulus.quad_surface import cut_open, find_cut, load_surface
from annulus.track import connection_matrix, trace_polynomial

ring = load_surface("####\n#..#\n#..#\n####\n")
print("squares:", ring.n, "kind:", ring.kind, "colors:", ring.color_counts())

# every tiling, measured against the first one
data = adjacency_data(ring)
tilings = enumerate_tilings(ring)
for t in tilings:
    inv = data.tiling_invariants(t, tilings[0])
    print(f"  flux {inv.flux:+d}  volume {inv.volume:+d}  sign {inv.sign:+d}")

# brute force generating functions
signed, unsigned = generating_function(ring)
print("oracle, unsigned:", canonical(unsigned))

# the determinant of a Kasteleyn matrix gives the same thing up to a unit
P = flux_polynomial(ring)
print("determinant:     ", canonical(P))
print("signed count:    ", canonical(signed_form(P, data.k)), "vs", canonical(signed.at_q(1)))

# cut the ring open: the flux blocks of the connection matrix trace out P again
seg = cut_open(ring, find_cut(ring))
C = connection_matrix(seg)
for f in C.fluxes():
    print(f"block {f:+d}: {len(C.block(f))} x {len(C.block(f))}")
print("trace:           ", canonical(trace_polynomial(C)))
