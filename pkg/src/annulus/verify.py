"""Theorem validators.  Each returns a ``Verdict``; ``verify_all`` runs them all."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import analysis
from .errors import AnnulusError
from .heights import extremal_flux_data, find_nontrespassed_cut, flip_components, flux_classes
from .homology import adjacency_data
from .kasteleyn import cover_polynomial, flux_polynomial, kasteleyn_triple, signed_form
from .laurent import LaurentPoly, canonical, equal_up_to_unit, root_power
from .oracle import enumerate_tilings, generating_function
from .quad_surface import cut_open, find_cut, find_walls, find_zigzag_cut, n_fold
from .track import (
    bi_active_submatrix,
    block_equal_up_to_q_unit,
    connection_matrix,
    eval_matrix,
    index_graph,
    mat_mul,
    path_pattern_holds,
    trace_polynomial,
)

QS = (0.5, 1, 2)
SEG_CAP = 200


@dataclass
class Verdict:
    name: str
    ok: bool | None  # None: skipped (hypothesis unmet)
    detail: dict = field(default_factory=dict)

    @property
    def status(self):
        return "skip" if self.ok is None else ("pass" if self.ok else "fail")

    def to_json(self):
        return {"name": self.name, "status": self.status, "detail": _jsonable(self.detail)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


class Context:
    """Shared, lazily computed data for one annulus."""

    def __init__(self, A, cap=None):
        self.A = A
        self.cap = cap
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def cut(self):
        return self._get("cut", lambda: find_cut(self.A))

    @property
    def phi(self):
        return self._get("phi", lambda: flux_polynomial(self.A, self.cut))

    @property
    def tilings(self):
        kw = {"cap": self.cap} if self.cap else {"cap": 10 ** 6}
        return self._get("tilings", lambda: enumerate_tilings(self.A, **kw))

    @property
    def walls(self):
        return self._get("walls", lambda: find_walls(self.A))

    @property
    def segment(self):
        return self._get("segment", lambda: cut_open(self.A, self.cut))

    @property
    def conn(self):
        return self._get("conn", lambda: connection_matrix(self.segment, cap=SEG_CAP))

    @property
    def classes(self):
        return self._get("classes", lambda: flux_classes(self.A, self.cut, self.tilings))


# ---------------------------------------------------------------------------


def oracle_equivalence(ctx):
    A, P = ctx.A, ctx.phi
    ts = ctx.tilings
    if not ts:
        return Verdict("oracle", not P, {"tilings": 0})
    signed, unsigned = generating_function(A, ts[0], tilings=ts, cap=10 ** 6)
    k = adjacency_data(A).k
    ok_u = equal_up_to_unit(P, unsigned)
    ok_s = equal_up_to_unit(signed_form(P, k), signed.at_q(1))
    return Verdict("oracle", ok_u and ok_s, {"phi": canonical(P), "unsigned": ok_u, "signed": ok_s, "tilings": len(ts)})


def trace_identity(ctx):
    T = trace_polynomial(ctx.conn)
    ok = equal_up_to_unit(T, ctx.phi) if ctx.phi else not T
    return Verdict("trace", ok, {"trace": canonical(T) if T else T})


def cover_law(ctx, ns=(2, 3), blocks=True):
    A, P = ctx.A, ctx.phi
    detail = {}
    ok = True
    for n in ns:
        Pn = cover_polynomial(A, n, ctx.cut)
        good = equal_up_to_unit(Pn, root_power(P, n))
        detail[f"n={n}"] = good
        ok &= good
    if blocks:
        C2 = connection_matrix(n_fold(ctx.segment, 2), cap=2 * SEG_CAP)
        C = ctx.conn
        sq = type(C)({f: (r, c, mat_mul(m, m)) for f, (r, c, m) in C.blocks.items()}, C.shift)
        good = block_equal_up_to_q_unit(C2, sq)
        detail["blocks"] = good
        ok &= good
    return Verdict("cover", ok, detail)


def q_positive(ctx, qs=QS):
    walls = len(ctx.walls)
    P = ctx.phi
    if walls:
        m = analysis.minus_one_multiplicity(P)
        span = _p_span(P)
        # all roots equal to -1 or all distinct
        if m == span:
            return Verdict("qplus", None, {"walls": walls, "minus_one_multiplicity": m})
        rider = all(analysis.numeric_roots(P, q).distinct for q in qs)
        return Verdict("qplus", None, {"walls": walls, "minus_one_multiplicity": m, "distinct": rider})
    detail = {}
    ok = True
    for q in qs:
        rep = analysis.check_q_positive(P, q)
        detail[q] = {"roots": rep.roots, "verdict": rep.verdict}
        ok &= rep.verdict == "pass"
    return Verdict("qplus", ok, detail)


def _p_span(P):
    lo, hi = P.p_range()
    return hi - lo


def _signed(ctx):
    return signed_form(ctx.phi, adjacency_data(ctx.A).k)


def q_minus(ctx):
    S = _signed(ctx)
    if not S:
        # every nonzero root is a root of unity, vacuously
        return Verdict("minus", True, {"vanishes": True})
    lo, hi = S.p_range()
    vals = S.specialize_q(1)
    res = analysis.cyclotomic_part([int(vals.get(e, 0)) for e in range(lo, hi + 1)])
    return Verdict("minus", res.ok, {"factors": res.factors})


def walls_theorem(ctx):
    walls = len(ctx.walls)
    if walls < 2:
        return Verdict("walls", None, {"walls": walls})
    n = walls - 1
    P = ctx.phi
    plus = LaurentPoly({(e, 0): int(v) for e, v in P.specialize_q(1).items() if v})
    minus = _signed(ctx)
    pp = LaurentPoly.from_p_coeffs([1, 1]) ** n
    pm = LaurentPoly.from_p_coeffs([-1, 1]) ** n
    ok_p = equal_up_to_unit(plus, pp)
    ok_m = equal_up_to_unit(minus, pm)
    return Verdict("walls", ok_p and ok_m, {"walls": walls, "plus": ok_p, "minus": ok_m})


def flip_connectivity(ctx):
    comps = {f: len(flip_components(ctx.A, ts)) for f, ts in ctx.classes.items()}
    connected = all(c == 1 for c in comps.values())
    if ctx.walls:
        return Verdict("stcr", None, {"components": comps, "walls": len(ctx.walls)})
    return Verdict("stcr", connected, {"components": comps})


def nontrespassed_cuts(ctx, max_len=12):
    fmin, fmax, _ = extremal_flux_data(ctx.A, ctx.cut, ctx.tilings)
    found = {}
    for f in (fmin, fmax):
        c = find_nontrespassed_cut(ctx.A, f, ctx.cut, ctx.tilings, max_len=max_len)
        found[f] = None if c is None else len(c)
    return Verdict("maxflocut", all(v is not None for v in found.values()), {"cut_lengths": found})


def spectra(ctx, qs=QS, horizon=64):
    C = ctx.conn
    wall_free = not ctx.walls
    detail = {}
    ok = True
    for f in C.fluxes():
        mat = C.block(f)
        if not mat:
            continue
        d = {}
        per, mod_ok = analysis.unit_or_zero_moduli(mat, horizon)
        d["period"] = per if per is not None else "inconclusive"
        d["moduli"] = mod_ok
        # no period within the horizon is inconclusive, not a refutation
        ok &= per is None or bool(mod_ok)
        g = index_graph(C, f)
        sub, keep = bi_active_submatrix(C, g)
        d["exact_traces"] = analysis.power_traces_equal(mat, sub, len(mat))
        ok &= d["exact_traces"]
        for q in qs:
            full = eval_matrix(mat, q)
            part = eval_matrix(sub, q) if keep else np.zeros((0, 0))
            same = analysis.spectra_match(full, part)
            d[f"spectra@{q}"] = same
            ok &= same
            if wall_free and keep:
                good, top = analysis.perron_check(part)
                d[f"perron@{q}"] = good
                ok &= good
        if wall_free:
            d["paths"] = all(path_pattern_holds(g, n) for n in range(len(mat) + 1, 2 * len(mat) + 2))
            ok &= d["paths"]
        detail[f] = d
    return Verdict("spectra", ok, detail)


def corollaries(ctx, qs=QS):
    rep = analysis.concavity_report(ctx.phi, qs)
    ok = all(rep["log_concave"].values()) and rep["b_concave"] and rep["c_convex"] and rep["contiguous"]
    return Verdict("corollaries", ok, rep)


def structural(ctx):
    A = ctx.A
    detail = {}
    gb = A.total_boundary_curvature() == 4 * A.euler
    detail["gauss_bonnet"] = gb
    fmin, fmax, _ = extremal_flux_data(A, ctx.cut, ctx.tilings)
    span_ok = fmax - fmin <= len(ctx.cut)
    detail["flux_span"] = (fmax - fmin, len(ctx.cut))
    zz = find_zigzag_cut(A)
    tri = kasteleyn_triple(A, zz)
    null = tri.is_null("minus") or tri.is_null("plus")
    detail["zigzag_null"] = null
    return Verdict("structural", gb and span_ok and null, detail)


CHECKS = {
    "oracle": oracle_equivalence,
    "trace": trace_identity,
    "cover": cover_law,
    "qplus": q_positive,
    "minus": q_minus,
    "walls": walls_theorem,
    "stcr": flip_connectivity,
    "maxflocut": nontrespassed_cuts,
    "spectra": spectra,
    "corollaries": corollaries,
    "structural": structural,
}


def verify_all(A, only=None, cap=None):
    ctx = Context(A, cap)
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        try:
            out.append(fn(ctx))
        except AnnulusError as exc:
            out.append(Verdict(name, False, {"error": f"{type(exc).__name__}: {exc}"}))
    return out


__all__ = ["Verdict", "Context", "CHECKS", "verify_all"] + [f.__name__ for f in CHECKS.values()]
