import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annulus.analysis import (
    check_q_positive,
    concavity_report,
    cyclotomic_part,
    cyclotomic_poly,
    eventual_period,
    exact_trace_corollary,
    growth_rate,
    log_concave,
    minus_one_multiplicity,
    numeric_roots,
    perron_check,
    power_traces_equal,
    primitive_pattern,
    spectra_match,
    symmetric_check,
    unit_or_zero_moduli,
)
from annulus.errors import WallsPresent, ZeroPolynomial
from annulus.kasteleyn import flux_polynomial
from annulus.laurent import LaurentPoly as L
from annulus.quad_surface import build_ladder, cut_open, find_cut, find_walls
from annulus.track import bi_active_submatrix, connection_matrix, eval_matrix, index_graph, trace_polynomial
from util import ring, ring8, ring5x5c

p = L.p()
q = L.q()

SEXTIC = L.from_p_coeffs([1, 91, 541, 91, 1])


def conn(A, cap=100):
    return connection_matrix(cut_open(A, find_cut(A)), cap=cap)


def test_roots_of_fixture():
    rep = numeric_roots(SEXTIC)
    got = sorted(z.real for z in rep.roots)
    want = [-84.619, -6.2077, -0.16109, -0.011818]
    assert all(abs(a - b) / abs(b) < 1e-4 for a, b in zip(got, want))
    assert rep.real_negative and rep.distinct
    assert max(rep.errors) <= 1e-10


def test_non_real_roots_detected():
    rep = numeric_roots(1 + p * p)
    assert not rep.real_negative
    assert rep.unit_modulus


def test_roots_after_q_specialization():
    P = 1 + 3 * p * q + p * p * q * q
    rep = numeric_roots(P, q=2)
    assert rep.real_negative and max(rep.errors) <= 1e-10
    assert len(rep.roots) == 2


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        numeric_roots(L())
    with pytest.raises(ZeroPolynomial):
        cyclotomic_part(L())


def test_q_positive_wall_free():
    for A in (ring8(), ring5x5c(), ring(6, 4, 2, 1, 2, 2)):
        P = flux_polynomial(A)
        for qv in (0.5, 1, 2):
            assert check_q_positive(P, qv).verdict == "pass"


def test_q_positive_rejects_walls():
    A = build_ladder(4, 2)
    with pytest.raises(WallsPresent):
        check_q_positive(flux_polynomial(A), 1, walls=len(find_walls(A)))


def test_ladder_minus_one_multiplicity():
    for d, n in [(2, 2), (4, 2), (4, 3), (6, 2)]:
        A = build_ladder(d, n)
        assert minus_one_multiplicity(flux_polynomial(A)) == len(find_walls(A)) - 1


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(5) == [1, 1, 1, 1, 1]
    assert cyclotomic_poly(6) == [1, -1, 1]
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]


def test_cyclotomic_fixtures():
    r = cyclotomic_part(L.from_p_coeffs([1, 1, 1, 1, 1]))
    assert r.ok and r.factors == {5: 1}
    r = cyclotomic_part((p - 1) * (p + 1))
    assert r.ok and r.factors == {1: 1, 2: 1}
    assert not cyclotomic_part(p * p - 2).ok
    r = cyclotomic_part(p * p - p + 1)
    assert r.ok and r.factors == {6: 1}
    assert not cyclotomic_part(SEXTIC).ok


@given(st.integers(-3, 3), st.sampled_from([1, -1]))
@settings(max_examples=20, deadline=None)
def test_cyclotomic_unit_invariance(shift, sign):
    base = L.from_p_coeffs([1, 1, 1, 1, 1]) * (p + 1) ** 2
    r = cyclotomic_part(base.shift(shift).scale(sign))
    assert r.ok and r.factors == {2: 2, 5: 1}


def test_log_concave():
    assert log_concave([1, 91, 541, 91, 1])
    assert not log_concave([1, 0, 1])
    rep = concavity_report(SEXTIC)
    assert all(rep["log_concave"].values())


def test_concavity_on_ring():
    rep = concavity_report(flux_polynomial(ring(6, 4, 2, 1, 2, 2)))
    assert all(rep["log_concave"].values())
    assert rep["b_concave"] and rep["c_convex"] and rep["contiguous"]


def test_symmetric_check_ring():
    C = conn(ring(6, 4, 2, 1, 2, 2))
    T = trace_polynomial(C)
    for qv in (0.5, 2):
        blocks = {f: eval_matrix(C.block(f), qv) for f in C.fluxes()}
        ok, worst, _ = symmetric_check(T, blocks, 3, qv)
        assert ok, worst


def test_symmetric_check_ladder_n4():
    C = conn(build_ladder(4, 3))
    T = trace_polynomial(C)
    blocks = {f: eval_matrix(C.block(f), 2) for f in C.fluxes()}
    assert symmetric_check(T, blocks, 4, 2)[0]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_exact_trace_corollary(n):
    for A in (ring8(), ring5x5c(), build_ladder(4, 2)):
        assert exact_trace_corollary(conn(A), n)


def test_periods_at_minus_one():
    for A in (ring5x5c(), ring(6, 4, 2, 1, 2, 2), build_ladder(4, 3)):
        C = conn(A)
        for f in C.fluxes():
            per, ok = unit_or_zero_moduli(C.block(f))
            assert per is not None and ok


def test_eventual_period_simple():
    one = [[L.const(1)]]
    assert eventual_period(one) == (1, 2)
    minus = [[L.const(-1)]]
    assert eventual_period(minus) == (1, 3)
    assert eventual_period([[L.const(2)]], horizon=10) is None


def test_bi_active_spectra():
    for A in (ring5x5c(), ring(6, 4, 2, 1, 2, 2)):
        C = conn(A)
        for f in C.fluxes():
            M = C.block(f)
            sub, keep = bi_active_submatrix(C, index_graph(C, f))
            assert power_traces_equal(M, sub, len(M))
            for qv in (0.5, 2):
                assert spectra_match(eval_matrix(M, qv), eval_matrix(sub, qv), tol=1e-6)


def test_perron_wall_free():
    C = conn(ring(6, 4, 2, 1, 2, 2))
    for f in C.fluxes():
        sub, _ = bi_active_submatrix(C, index_graph(C, f))
        M = eval_matrix(sub, 1)
        ok, top = perron_check(M)
        assert ok and primitive_pattern(M)
        rates = growth_rate(C, f, 1, nmax=30)
        if top is not None and top > 1:
            assert abs(rates[-1] - math.log(top)) < 0.1


def test_spectra_match_tolerance():
    assert spectra_match([[2, 0], [0, 0]], [[2]])
    assert not spectra_match([[2]], [[3]])


def test_random_polys_round_trip_roots():
    rng = random.Random(4)
    for _ in range(10):
        rs = [-rng.uniform(0.1, 10) for _ in range(rng.randint(1, 5))]
        P = L.const(1)
        for r in rs:
            P = P * L.from_p_coeffs([round(-r * 1000), 1000])
        rep = numeric_roots(P)
        assert rep.real_negative and max(rep.errors) <= 1e-10


# bivariate example fixture: coefficients of q-exponents (descending) per power of p
BIVARIATE = {
    4: {36: 1},
    3: dict(zip(range(36, 17, -1), [1, 3, 3, 4, 6, 6, 7, 6, 6, 7, 6, 6, 7, 6, 6, 4, 3, 3, 1])),
    2: dict(zip(range(30, 5, -1), [1, 3, 3, 4, 9, 12, 16, 24, 33, 41, 45, 51, 57, 51, 45, 41, 33, 24, 16, 12, 9,
                                    4, 3, 3, 1])),
    1: dict(zip(range(18, -1, -1), [1, 3, 3, 4, 6, 6, 7, 6, 6, 7, 6, 6, 7, 6, 6, 4, 3, 3, 1])),
    0: {0: 1},
}


def bivariate_fixture():
    return L({(f, 4 * e): c for f, row in BIVARIATE.items() for e, c in row.items()}).shift(-2, -72)


def test_bivariate_fixture_specializations():
    P = bivariate_fixture()
    plus = L({(f, 0): int(c) for f, c in P.specialize_q(1).items()})
    assert plus == SEXTIC.shift(-2)
    minus = L({(f, 0): int(c) for f, c in P.specialize_q(-1).items() if c})
    r = cyclotomic_part(minus)
    assert r.ok and r.factors == {5: 1}


def test_bivariate_fixture_theorems():
    P = bivariate_fixture()
    for qv in (0.5, 1, 2):
        assert check_q_positive(P, qv).verdict == "pass"
    rep = concavity_report(P)
    assert all(rep["log_concave"].values())
    assert rep["b_concave"] and rep["c_convex"]
