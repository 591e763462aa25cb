"""Height functions, flips, flux classes and related checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InconsistentHeight, NoTilings
from .homology import adjacency_data, flux_across_cut, permutation_sign
from .oracle import DEFAULT_CAP, enumerate_tilings, iter_tilings
from .quad_surface import BLACK, Cut, find_cut, require_cut

# Sign relating volume to heights: nu(t; t0) = S * sum(theta_t - theta_t0) / 4
# over interior vertices.  Measured on the 2x2 disk (see tests).
VOLUME_HEIGHT_SIGN = 1


def _crossed_sides(S, tiling, preferred=()):
    edges = S.adjacency_edges
    out = set(preferred)
    for e in tiling:
        ed = edges[e]
        out.add((ed.black, ed.bside))
        out.add((ed.white, ed.wside))
    return out


def side_step(S, s, k, crossed):
    """Height change walking side k of s from corner k to corner k+1."""
    white = S.colors[s] != BLACK
    if (s, k) in crossed:
        return -3 if white else 3
    return 1 if white else -1


def height_function(S, tiling, base=None, preferred=()):
    """Height function of a tiling of a disk (or track segment).

    ``preferred`` lists attachment sides carrying half-dominoes; they behave
    like domino middles.  Raises ``InconsistentHeight`` when the local rules
    cannot be satisfied, which means the input is not a tiling.
    """
    if base is None:
        base = min(S.boundary_vertices()) if S.boundary_vertices() else 0
    crossed = _crossed_sides(S, tiling, preferred)
    nbrs = [[] for _ in range(S.n_vertices)]
    for s in range(S.n):
        for k in range(4):
            u = S.vertex(s, k)
            v = S.vertex(s, k + 1)
            d = side_step(S, s, k, crossed)
            nbrs[u].append((v, d))
            nbrs[v].append((u, -d))
    theta = {base: 0}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v, d in nbrs[u]:
            if v not in theta:
                theta[v] = theta[u] + d
                queue.append(v)
            elif theta[v] != theta[u] + d:
                raise InconsistentHeight(f"height at vertex {v} is not well defined")
    if len(theta) != S.n_vertices:
        raise InconsistentHeight("vertex graph is disconnected")
    return [theta[v] for v in range(S.n_vertices)]


def is_height_function(S, theta, base):
    """Check the local rules; boundary sides must step by exactly +-1."""
    if theta[base] != 0:
        return False
    for s in range(S.n):
        white = S.colors[s] != BLACK
        for k in range(4):
            d = theta[S.vertex(s, k + 1)] - theta[S.vertex(s, k)]
            ok = (1, -3) if white else (-1, 3)
            if S.glue[s][k] is None:
                ok = ok[:1]
            if d not in ok:
                return False
    return True


def tiling_from_heights(S, theta):
    """Recover the tiling whose dominoes cross the -3/+3 steps, or None."""
    idx = {}
    for i, e in enumerate(S.adjacency_edges):
        idx[(e.black, e.bside)] = i
    chosen = set()
    cover = {}
    for i, e in enumerate(S.adjacency_edges):
        d = theta[S.vertex(e.black, e.bside + 1)] - theta[S.vertex(e.black, e.bside)]
        if d == 3:
            chosen.add(i)
            for sq in (e.black, e.white):
                cover[sq] = cover.get(sq, 0) + 1
    if len(cover) != S.n or any(c != 1 for c in cover.values()):
        return None
    return frozenset(chosen)


def pointwise(op, a, b):
    return [op(x, y) for x, y in zip(a, b)]


def disk_volume_difference(S, t, t0, base=None):
    """(1/4) sum over interior vertices of theta_t - theta_t0, with the sign convention."""
    a = height_function(S, t, base)
    b = height_function(S, t0, base)
    total = sum(a[v] - b[v] for v in S.interior_vertices())
    if total % 4:
        raise InconsistentHeight("height difference is not a multiple of 4")
    return VOLUME_HEIGHT_SIGN * total // 4


def measure_volume_height_sign():
    """Sign s with nu(t; t0) = s * sum(theta_t - theta_t0) / 4, from the 2x2 disk."""
    from .quad_surface import build_from_grid

    D = build_from_grid([(0, 0), (1, 0), (0, 1), (1, 1)])
    t, t0 = enumerate_tilings(D)
    nu = adjacency_data(D).tiling_invariants(t, t0).volume
    a = height_function(D, t)
    b = height_function(D, t0)
    total = sum(a[v] - b[v] for v in D.interior_vertices())
    return 1 if nu * total > 0 else -1


# ---------------------------------------------------------------------------
# flips


@dataclass(frozen=True)
class FlipMove:
    vertex: int
    remove: tuple  # edge indices leaving the tiling
    add: tuple  # edge indices entering it
    dnu: int  # change of volume: +1 raises, -1 lowers

    @property
    def direction(self):
        return "raise" if self.dnu > 0 else "lower"


def _flip_sites(S):
    cache = getattr(S, "_flip_sites", None)
    if cache is not None:
        return cache
    idx = {}
    for i, e in enumerate(S.adjacency_edges):
        idx[(e.black, e.bside)] = i
        idx[(e.white, e.wside)] = i
    sites = []
    for v in S.interior_vertices():
        secs = S.sectors[v]
        if len({s for s, _ in secs}) != 4:
            continue
        # e[i] separates sector i from sector i+1
        e = [idx[(s, (k - 1) % 4)] for s, k in secs]
        first_black = S.colors[secs[0][0]] == BLACK
        sites.append((v, e, first_black))
    S._flip_sites = sites
    return sites


def flips(S, tiling):
    out = []
    for v, e, first_black in _flip_sites(S):
        a = (e[0], e[2])
        b = (e[1], e[3])
        # moving from {e0, e2} to {e1, e3} changes the chain by -s_v when
        # sector 0 is black (s_v runs counterclockwise, black to white)
        d = -1 if first_black else 1
        if a[0] in tiling and a[1] in tiling:
            out.append(FlipMove(v, a, b, d))
        elif b[0] in tiling and b[1] in tiling:
            out.append(FlipMove(v, b, a, -d))
    return out


def apply_flip(tiling, move):
    return frozenset((set(tiling) - set(move.remove)) | set(move.add))


def flip_components(S, tilings):
    """Connected components of the flip graph on a set of tilings."""
    pool = set(tilings)
    comps = []
    seen = set()
    for t in sorted(pool, key=sorted):
        if t in seen:
            continue
        comp = [t]
        seen.add(t)
        queue = deque([t])
        while queue:
            u = queue.popleft()
            for mv in flips(S, u):
                w = apply_flip(u, mv)
                if w in pool and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def flux_classes(A, cut=None, tilings=None, cap=DEFAULT_CAP):
    cut = cut or require_cut(A)
    tilings = enumerate_tilings(A, cap=cap) if tilings is None else tilings
    out = {}
    for t in tilings:
        out.setdefault(flux_across_cut(A, t, cut), []).append(t)
    return dict(sorted(out.items()))


def flip_class_connected(A, f, cut=None, tilings=None):
    classes = flux_classes(A, cut, tilings)
    return len(flip_components(A, classes.get(f, []))) <= 1


def extremal_flux_data(A, cut=None, tilings=None):
    classes = flux_classes(A, cut, tilings)
    if not classes:
        raise NoTilings("the annulus has no tilings")
    counts = {f: len(ts) for f, ts in classes.items()}
    return min(counts), max(counts), counts


def find_nontrespassed_cut(A, f, cut=None, tilings=None, max_len=12):
    """A cut that no domino of any flux-f tiling crosses, or None."""
    classes = flux_classes(A, cut, tilings)
    forbidden = set()
    for t in classes.get(f, []):
        forbidden |= _crossed_sides(A, t)
    found = find_cut(A, allowed=lambda side: side not in forbidden)
    if found is None or len(found) > max_len:
        return None
    return found


def trespasses(A, tiling, cut):
    crossed = _crossed_sides(A, tiling)
    return any(side in crossed for side in cut.sides)


def deift_tomei_sum(D, t0=None, cap=DEFAULT_CAP):
    """Sum of sigma(t; t0) over all tilings of a disk."""
    total = 0
    first = t0
    for t in iter_tilings(D, cap=cap):
        if first is None:
            first = t
        total += permutation_sign(D, t, first)
    return total


__all__ = [
    "VOLUME_HEIGHT_SIGN",
    "height_function",
    "is_height_function",
    "tiling_from_heights",
    "pointwise",
    "disk_volume_difference",
    "measure_volume_height_sign",
    "FlipMove",
    "flips",
    "apply_flip",
    "flip_components",
    "flux_classes",
    "flip_class_connected",
    "extremal_flux_data",
    "find_nontrespassed_cut",
    "trespasses",
    "deift_tomei_sum",
    "Cut",
]
