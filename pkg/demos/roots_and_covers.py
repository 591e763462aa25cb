"""
Roots of flux polynomials
=========================

For a wall-free annulus the roots in p are negative reals for every
positive q, and at q = -1 they are roots of unity.  Covers raise the
roots to a power.
"""

from annulus.analysis import concavity_report, cyclotomic_part, numeric_roots
from annulus.homology import adjacency_data
from annulus.kasteleyn import cover_polynomial, flux_polynomial, signed_form
from annulus.laurent import canonical, equal_up_to_unit, root_power
from annulus.quad_surface import find_walls, load_surface

A = load_surface("######\n######\n##..##\n##..##\n######\n######\n")
print("squares:", A.n, "walls:", len(find_walls(A)))
P = flux_polynomial(A)
print("Phi =", canonical(P))

for q in (0.5, 1, 2):
    rep = numeric_roots(P, q)
    roots = ", ".join(f"{z.real:.5g}" for z in rep.roots)
    print(f"q = {q}: roots {roots}; real negative {rep.real_negative}, distinct {rep.distinct}")

# q = -1: the signed count factors into cyclotomic polynomials
S = signed_form(P, adjacency_data(A).k)
if S:
    print("signed count:", canonical(S), "cyclotomic factors:", cyclotomic_part(canonical(S)).factors)
else:
    print("signed count vanishes")

# the 2- and 3-fold covers
for n in (2, 3):
    Pn = cover_polynomial(A, n)
    print(f"{n}-fold cover matches root power:", equal_up_to_unit(Pn, root_power(P, n)))

rep = concavity_report(P)
print("log-concave:", rep["log_concave"], "top exponents concave:", rep["b_concave"],
      "bottom exponents convex:", rep["c_convex"])
