"""Brute-force tiling enumeration, used as ground truth everywhere else.

A tiling is a frozenset of indices into ``S.adjacency_edges``.
"""

from __future__ import annotations

from .errors import CapExceeded
from .laurent import LaurentPoly

DEFAULT_CAP = 44


def _neighbours(S):
    """Per square, (side, partner, edge index) in side order."""
    idx = {}
    for i, e in enumerate(S.adjacency_edges):
        idx[(e.black, e.bside)] = i
        idx[(e.white, e.wside)] = i
    out = []
    for s in range(S.n):
        row = []
        for k in range(4):
            g = S.glue[s][k]
            if g is not None:
                row.append((k, g[0], idx[(s, k)]))
        out.append(row)
    return out


def iter_tilings(S, cap=DEFAULT_CAP, allowed=None, present=None):
    """Yield tilings in a fixed order (branch on the lowest uncovered square).

    ``present`` restricts to a subset of squares; ``allowed`` to a set of
    edge indices.
    """
    if S.n > cap:
        raise CapExceeded(f"{S.n} squares exceed the enumeration cap {cap}")
    nb = _neighbours(S)
    squares = sorted(present) if present is not None else list(range(S.n))
    inside = set(squares)
    if len(squares) % 2:
        return
    covered = {s: False for s in squares}
    chosen = []

    def rec(pos):
        while pos < len(squares) and covered[squares[pos]]:
            pos += 1
        if pos == len(squares):
            yield frozenset(chosen)
            return
        s = squares[pos]
        covered[s] = True
        for _, t, e in nb[s]:
            if t not in inside or covered[t]:
                continue
            if allowed is not None and e not in allowed:
                continue
            covered[t] = True
            chosen.append(e)
            yield from rec(pos + 1)
            chosen.pop()
            covered[t] = False
        covered[s] = False

    yield from rec(0)


def enumerate_tilings(S, cap=DEFAULT_CAP, limit=None):
    out = []
    for t in iter_tilings(S, cap=cap):
        out.append(t)
        if limit is not None and len(out) >= limit:
            break
    return out


def count_tilings(S, cap=DEFAULT_CAP):
    return sum(1 for _ in iter_tilings(S, cap=cap))


def generating_function(A, t0=None, cap=DEFAULT_CAP, tilings=None):
    """(signed, unsigned) sums of p^phi q^nu over tilings, relative to ``t0``.

    Signed terms carry sigma(t; t0).  Both are zero when A has no tilings.
    """
    from .homology import adjacency_data

    tilings = enumerate_tilings(A, cap=cap) if tilings is None else tilings
    if not tilings:
        return LaurentPoly(), LaurentPoly()
    t0 = tilings[0] if t0 is None else t0
    data = adjacency_data(A)
    signed, unsigned = {}, {}
    for t in tilings:
        phi, nu, sigma = data.tiling_invariants(t, t0)
        key = (phi, 4 * nu)
        signed[key] = signed.get(key, 0) + sigma
        unsigned[key] = unsigned.get(key, 0) + 1
    return LaurentPoly(signed), LaurentPoly(unsigned)


def flux_counts(A, cut=None, tilings=None, cap=DEFAULT_CAP):
    """Map absolute flux across ``cut`` to lists of tilings."""
    from .homology import flux_across_cut
    from .quad_surface import require_cut

    cut = cut or require_cut(A)
    tilings = enumerate_tilings(A, cap=cap) if tilings is None else tilings
    out = {}
    for t in tilings:
        out.setdefault(flux_across_cut(A, t, cut), []).append(t)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# track segments


def count_segment_tilings(seg, i0, i1, cap=DEFAULT_CAP):
    """q-count of segment tilings with indices ``(i0, i1)``.

    Independent of the connection-matrix code: the segment is pruned to a
    disk, its tilings enumerated, and each volume computed from a height
    function that forbids the preferred edges.
    """
    from .track import prune, segment_volume_from_parts

    kept = prune(seg, i0, i1)
    if kept is None:
        return LaurentPoly()
    S = seg.surface
    pref = [seg.a0[j] for j in range(len(seg.a0)) if (i0 >> j) & 1]
    pref += [seg.a1[j] for j in range(len(seg.a1)) if (i1 >> j) & 1]
    total = {}
    for t in iter_tilings(S, cap=cap, present=kept):
        e4 = segment_volume_from_parts(seg, t, pref)
        total[(0, e4)] = total.get((0, e4), 0) + 1
    return LaurentPoly(total)


__all__ = [
    "DEFAULT_CAP",
    "iter_tilings",
    "enumerate_tilings",
    "count_tilings",
    "generating_function",
    "flux_counts",
    "count_segment_tilings",
]
