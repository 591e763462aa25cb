"""Kasteleyn weights, the Kasteleyn triple and the flux polynomial.

Rows of every matrix are indexed by white squares and columns by black
squares, both in increasing id order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import UnbalancedSegment
from .homology import adjacency_data
from .laurent import LaurentPoly, UnitMonomial, canonical, det_exact, equal_up_to_unit, root_power
from .quad_surface import BLACK, close_up, cut_open, n_fold, require_cut


@dataclass
class KasteleynTriple:
    """``M_A = p^-1 N_minus + M + p N_plus``; entries are LaurentPoly in q."""

    n_minus: list
    m: list
    n_plus: list
    whites: list
    blacks: list

    @property
    def size(self):
        return len(self.m)

    def matrix(self):
        p = LaurentPoly.p()
        pinv = LaurentPoly.p(-1)
        n = self.size
        return [[pinv * self.n_minus[i][j] + self.m[i][j] + p * self.n_plus[i][j]
                 for j in range(n)] for i in range(n)]

    def is_null(self, which):
        mat = self.n_minus if which == "minus" else self.n_plus
        return all(not x for row in mat for x in row)


def spanning_tree(A, cut, root=0, order=None):
    """BFS tree of the adjacency graph minus the cut edges.

    ``order`` optionally permutes neighbour exploration (for independence
    tests).  Returns the set of tree edge indices and parent pointers.
    """
    data = adjacency_data(A)
    cut_edges = {data.edge_index[side] for side in cut.sides}
    nbrs = [[] for _ in range(A.n)]
    for i, e in enumerate(A.adjacency_edges):
        if i in cut_edges:
            continue
        nbrs[e.black].append((e.white, i))
        nbrs[e.white].append((e.black, i))
    if order is not None:
        for s in range(A.n):
            nbrs[s].sort(key=lambda x: order(s, x))
    parent = {root: None}
    tree = set()
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for t, i in nbrs[s]:
            if t not in parent:
                parent[t] = (s, i)
                tree.add(i)
                queue.append(t)
    if len(parent) != A.n:
        raise UnbalancedSegment("cut-open segment is disconnected")
    return tree, parent


def build_weight(A, cut=None, root=0, order=None):
    """Kasteleyn weight: edge index -> UnitMonomial.

    Tree edges get 1; any other edge gets sigma p^phi q^nu of its
    fundamental circuit.
    """
    cut = cut or require_cut(A)
    if not A.is_balanced():
        raise UnbalancedSegment("the annulus is not balanced")
    data = adjacency_data(A)
    tree, parent = spanning_tree(A, cut, root, order)
    depth = {}

    def path_to_root(s):
        out = []
        while parent[s] is not None:
            t, i = parent[s]
            out.append((s, t, i))
            s = t
        return out

    for s in parent:
        depth[s] = len(path_to_root(s))
    weights = {}
    edges = A.adjacency_edges
    for i, e in enumerate(edges):
        if i in tree:
            weights[i] = UnitMonomial(1, 0, 0)
            continue
        chain = [0] * len(edges)
        chain[i] += 1  # black -> white
        # close the circuit: white back to black through the tree
        for u, t, j in path_to_root(e.white):
            chain[j] += _dir(edges[j], u, t)
        for u, t, j in path_to_root(e.black):
            chain[j] -= _dir(edges[j], u, t)
        inv = data.hom_values(chain)
        weights[i] = UnitMonomial(inv.sign, inv.flux, 4 * inv.volume)
    return weights


def _dir(edge, u, t):
    """+1 if going u -> t follows the black-to-white orientation."""
    return 1 if (edge.black == u and edge.white == t) else -1


def circuit_weight(A, weights, chain):
    """Product of weights over a 1-cycle (negative coefficients invert)."""
    sign, ep, eq = 1, 0, 0
    for i, c in enumerate(chain):
        if c:
            w = weights[i]
            sign *= w.sign ** abs(c)
            ep += c * w.e_p
            eq += c * w.e_q4
    return UnitMonomial(sign, ep, eq)


def kasteleyn_triple(A, cut=None, weights=None, root=0, order=None, whites=None, blacks=None):
    cut = cut or require_cut(A)
    if weights is None:
        weights = build_weight(A, cut, root, order)
    data = adjacency_data(A)
    cut_edges = {data.edge_index[side]: side for side in cut.sides}
    whites = list(whites) if whites is not None else A.whites()
    blacks = list(blacks) if blacks is not None else A.blacks()
    if len(whites) != len(blacks):
        raise UnbalancedSegment("the annulus is not balanced")
    wi = {s: i for i, s in enumerate(whites)}
    bj = {s: j for j, s in enumerate(blacks)}
    n = len(whites)
    zero = LaurentPoly()
    mats = {k: [[zero] * n for _ in range(n)] for k in (-1, 0, 1)}
    for i, e in enumerate(A.adjacency_edges):
        w = weights[i]
        if i in cut_edges:
            s, _ = cut_edges[i]
            cls = 1 if A.colors[s] == BLACK else -1
        else:
            cls = 0
        if w.e_p != cls:
            raise AssertionError(f"edge {i} has p-exponent {w.e_p}, expected {cls}")
        r, c = wi[e.white], bj[e.black]
        mats[cls][r][c] = mats[cls][r][c] + LaurentPoly.monomial(w.sign, 0, w.e_q4)
    return KasteleynTriple(mats[-1], mats[0], mats[1], whites, blacks)


def kasteleyn_matrix(A, cut=None, **kw):
    return kasteleyn_triple(A, cut, **kw).matrix()


def flux_polynomial(A, cut=None, engine="bareiss", **kw):
    """det of the Kasteleyn matrix; zero for unbalanced annuli."""
    if not A.is_balanced():
        return LaurentPoly()
    return det_exact(kasteleyn_matrix(A, cut, **kw), engine=engine)


def triple_determinant(triple, engine="bareiss"):
    return det_exact(triple.matrix(), engine=engine)


def cover_triple(triple, n):
    """Triple of the n-fold cover, in block form.

    Diagonal blocks M, subdiagonal N_plus, superdiagonal N_minus, and the
    corner blocks ``(-1)^(n+1) N_plus`` at (0, n-1) and ``(-1)^(n+1) N_minus``
    at (n-1, 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return triple
    m = triple.size
    N = n * m
    zero = LaurentPoly()
    M = [[zero] * N for _ in range(N)]
    NP = [[zero] * N for _ in range(N)]
    NM = [[zero] * N for _ in range(N)]
    sgn = 1 if (n + 1) % 2 == 0 else -1

    def put(target, bi, bj, block, scale=1):
        for i in range(m):
            for j in range(m):
                x = block[i][j]
                if x:
                    target[bi * m + i][bj * m + j] = x if scale == 1 else -x

    for b in range(n):
        put(M, b, b, triple.m)
        if b + 1 < n:
            put(M, b + 1, b, triple.n_plus)
            put(M, b, b + 1, triple.n_minus)
    put(NP, 0, n - 1, triple.n_plus, sgn)
    put(NM, n - 1, 0, triple.n_minus, sgn)
    whites = [c * 10 ** 9 + s for c in range(n) for s in triple.whites]
    blacks = [c * 10 ** 9 + s for c in range(n) for s in triple.blacks]
    return KasteleynTriple(NM, M, NP, whites, blacks)


def cover_polynomial(A, n, cut=None, engine="bareiss"):
    cut = cut or require_cut(A)
    return triple_determinant(cover_triple(kasteleyn_triple(A, cut), n), engine)


def cover_surface(A, n, cut=None):
    cut = cut or require_cut(A)
    return close_up(n_fold(cut_open(A, cut), n))


def verify_cover_law(A, n, cut=None, engine="bareiss"):
    """Phi of the n-cover (block determinant) equals the n-th root power of Phi_A."""
    cut = cut or require_cut(A)
    P1 = flux_polynomial(A, cut, engine)
    Pn = cover_polynomial(A, n, cut, engine)
    if not P1:
        return not Pn
    return equal_up_to_unit(Pn, root_power(P1, n))


def canonical_flux_polynomial(A, **kw):
    return canonical(flux_polynomial(A, **kw))


def signed_form(P, k):
    """``P(p, -1)`` rewritten as the signed flux count: substitute p -> (-1)^(k+1) p."""
    vals = P.specialize_q(-1)
    flip = (k + 1) % 2 == 1
    out = {}
    for ep, v in vals.items():
        v = int(v)
        if flip and ep % 2:
            v = -v
        out[(ep, 0)] = v
    return LaurentPoly(out)


__all__ = [
    "KasteleynTriple",
    "spanning_tree",
    "build_weight",
    "circuit_weight",
    "kasteleyn_triple",
    "kasteleyn_matrix",
    "flux_polynomial",
    "triple_determinant",
    "cover_triple",
    "cover_polynomial",
    "cover_surface",
    "verify_cover_law",
    "canonical_flux_polynomial",
    "signed_form",
]
