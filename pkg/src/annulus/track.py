"""Track-segment tilings, attachment indices and connection matrices.

An index is a bitmask over the sides of an attachment, bit ``j`` standing
for ``a0[j]`` (or ``a1[j]``); sides are ordered from the ``bo`` end, so the
least significant bit sits next to ``bo``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded
from .heights import VOLUME_HEIGHT_SIGN, height_function
from .laurent import LaurentPoly
from .oracle import DEFAULT_CAP
from .quad_surface import BLACK


@dataclass(frozen=True)
class AttachmentIndex:
    bits: int
    flux: int
    label: int


def index_flux(seg, side, bits):
    """Flux of an index: on a0 white squares count +1, on a1 black squares do."""
    S = seg.surface
    arc = seg.a0 if side == 0 else seg.a1
    plus = 1 if side == 0 else 0  # colour counting positively: WHITE on a0, BLACK on a1
    total = 0
    for j, (s, _) in enumerate(arc):
        if (bits >> j) & 1:
            is_white = S.colors[s] != BLACK
            total += 1 if is_white == bool(plus) else -1
    return total


def enumerate_indices(seg, side):
    """All indices of one attachment, labelled by (flux, bits), grouped by flux."""
    arc = seg.a0 if side == 0 else seg.a1
    raw = sorted(((index_flux(seg, side, b), b) for b in range(1 << len(arc))))
    out = {}
    for label, (f, b) in enumerate(raw, start=1):
        out.setdefault(f, []).append(AttachmentIndex(b, f, label))
    return out


def index_sides(seg, i0, i1):
    pref = [seg.a0[j] for j in range(len(seg.a0)) if (i0 >> j) & 1]
    pref += [seg.a1[j] for j in range(len(seg.a1)) if (i1 >> j) & 1]
    return pref


def prune(seg, i0, i1):
    """Squares left after removing those carrying a preferred side.

    Returns a frozenset of square ids, or ``None`` when some square has two
    sides in the indices.
    """
    hit = {}
    for s, _ in index_sides(seg, i0, i1):
        hit[s] = hit.get(s, 0) + 1
    if any(c > 1 for c in hit.values()):
        return None
    return frozenset(s for s in range(seg.n) if s not in hit)


def segment_volume_from_parts(seg, tiling, preferred):
    """Volume of a segment tiling, in quarter units of q.

    Interior vertices have weight 1, attachment-interior vertices weight
    ``n_v/4``, everything else 0.  Heights are measured from the outer end
    of a1.  ``theta // 4`` replaces ``theta / 4``; the difference depends only
    on the vertex, so volumes change by a tiling-independent constant.
    """
    S = seg.surface
    theta = height_function(S, tiling, seg.base_vertex(), preferred)
    total = 0
    for v in S.interior_vertices():
        total += 4 * (theta[v] // 4)
    for v in seg.attachment_interior_vertices():
        total += S.vertices[v].n * (theta[v] // 4)
    return VOLUME_HEIGHT_SIGN * total


@dataclass(frozen=True)
class SegmentTiling:
    dominoes: frozenset
    i0: int
    i1: int

    def preferred(self, seg):
        return index_sides(seg, self.i0, self.i1)


def segment_volume(seg, t):
    return segment_volume_from_parts(seg, t.dominoes, t.preferred(seg))


def volume_weights(seg):
    """Volume as an affine function of the crossed sides.

    Crossing a side shifts the height of every vertex beyond it (along a
    fixed spanning tree from the base vertex) by a multiple of 4, and
    ``theta // 4`` moves by exactly that multiple over 4.  So the volume of
    a segment tiling is ``const + sum of weights`` over its dominoes (edge
    indices) and preferred sides.  Returns ``(const, edge_w, side_w)``.
    """
    from collections import deque

    S = seg.surface
    base = seg.base_vertex()
    nbrs = [[] for _ in range(S.n_vertices)]
    for s in range(S.n):
        for k in range(4):
            u, v = S.vertex(s, k), S.vertex(s, k + 1)
            nbrs[u].append((v, (s, k), 1))
            nbrs[v].append((u, (s, k), -1))
    parent = {base: None}
    order = [base]
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v, side, d in nbrs[u]:
            if v not in parent:
                parent[v] = (u, side, d)
                order.append(v)
                queue.append(v)
    weight4 = {v: 4 for v in S.interior_vertices()}
    for v in seg.attachment_interior_vertices():
        weight4[v] = S.vertices[v].n
    theta0 = {base: 0}
    shift = {base: {}}
    for v in order[1:]:
        u, (s, k), d = parent[v]
        white = S.colors[s] != BLACK
        theta0[v] = theta0[u] + d * (1 if white else -1)
        sh = dict(shift[u])
        # crossing this side changes the step by -4 (white on the left) or +4
        delta = d * (-1 if white else 1)
        key = (s, k)
        sh[key] = sh.get(key, 0) + delta
        shift[v] = sh
    const = sum(w * (theta0[v] // 4) for v, w in weight4.items())
    side_w = {}
    for v, w in weight4.items():
        for key, c in shift[v].items():
            if c:
                side_w[key] = side_w.get(key, 0) + w * c
    edge_w = []
    for e in S.adjacency_edges:
        edge_w.append(side_w.get((e.black, e.bside), 0) + side_w.get((e.white, e.wside), 0))
    sgn = VOLUME_HEIGHT_SIGN
    return (sgn * const, [sgn * x for x in edge_w],
            {k: sgn * v for k, v in side_w.items()})


def iter_segment_tilings(seg, cap=DEFAULT_CAP, with_volume=False):
    """All segment tilings: each square is in a domino or has one preferred side.

    With ``with_volume`` yields ``(tiling, volume)`` pairs, the volume
    accumulated from ``volume_weights``.
    """
    S = seg.surface
    if S.n > cap:
        raise CapExceeded(f"{S.n} squares exceed the enumeration cap {cap}")
    const, edge_w, side_w = volume_weights(seg) if with_volume else (0, None, {})
    idx = {}
    for i, e in enumerate(S.adjacency_edges):
        idx[(e.black, e.bside)] = i
        idx[(e.white, e.wside)] = i
    att = {}
    for j, side in enumerate(seg.a0):
        att.setdefault(side[0], []).append((0, j, side_w.get(side, 0)))
    for j, side in enumerate(seg.a1):
        att.setdefault(side[0], []).append((1, j, side_w.get(side, 0)))
    nbrs = []
    for s in range(S.n):
        row = []
        for k in range(4):
            g = S.glue[s][k]
            if g is not None:
                i = idx[(s, k)]
                row.append((g[0], i, edge_w[i] if edge_w else 0))
        nbrs.append(row)
    covered = [False] * S.n
    chosen = []
    bits = [0, 0]

    def rec(s, vol):
        while s < S.n and covered[s]:
            s += 1
        if s == S.n:
            t = SegmentTiling(frozenset(chosen), bits[0], bits[1])
            yield (t, vol) if with_volume else t
            return
        covered[s] = True
        for t, e, w in nbrs[s]:
            if not covered[t]:
                covered[t] = True
                chosen.append(e)
                yield from rec(s + 1, vol + w)
                chosen.pop()
                covered[t] = False
        for which, j, w in att.get(s, ()):
            bits[which] |= 1 << j
            yield from rec(s + 1, vol + w)
            bits[which] &= ~(1 << j)
        covered[s] = False

    yield from rec(0, const)


@dataclass
class ConnectionMatrix:
    """Flux blocks of the connection matrix.

    ``blocks[f]`` is ``(rows, cols, matrix)`` where rows are 0-indices of
    flux f, columns 1-indices of flux ``f + shift`` and entries LaurentPoly.
    """

    blocks: dict
    shift: int = 0
    entries: dict = field(default_factory=dict)
    labels0: dict = field(default_factory=dict)
    labels1: dict = field(default_factory=dict)

    def fluxes(self):
        return sorted(self.blocks)

    def block(self, f):
        return self.blocks[f][2]

    def to_json(self):
        out = {}
        for f, (rows, cols, mat) in self.blocks.items():
            out[str(f)] = {
                "rows": [r.bits for r in rows],
                "cols": [c.bits for c in cols],
                "matrix": [[x.to_json() for x in row] for row in mat],
            }
        return out


def count_by_index(seg, cap=DEFAULT_CAP):
    """Counts keyed by (i0, i1, volume) without materializing tilings.

    Same search as ``iter_segment_tilings`` but accumulating in place, which
    avoids the per-tiling cost of a deep generator chain.
    """
    S = seg.surface
    if S.n > cap:
        raise CapExceeded(f"{S.n} squares exceed the enumeration cap {cap}")
    const, edge_w, side_w = volume_weights(seg)
    idx = {}
    for i, e in enumerate(S.adjacency_edges):
        idx[(e.black, e.bside)] = i
        idx[(e.white, e.wside)] = i
    opts = [[] for _ in range(S.n)]
    for s in range(S.n):
        for k in range(4):
            g = S.glue[s][k]
            if g is not None and g[0] > s:
                opts[s].append((g[0], 0, 0, edge_w[idx[(s, k)]]))
    for j, side in enumerate(seg.a0):
        opts[side[0]].append((-1, 1 << j, 0, side_w.get(side, 0)))
    for j, side in enumerate(seg.a1):
        opts[side[0]].append((-1, 0, 1 << j, side_w.get(side, 0)))
    n = S.n
    covered = [False] * n
    counts = {}

    def rec(s, b0, b1, vol):
        while s < n and covered[s]:
            s += 1
        if s == n:
            key = (b0, b1, vol)
            counts[key] = counts.get(key, 0) + 1
            return
        for t, m0, m1, w in opts[s]:
            if t < 0:
                rec(s + 1, b0 | m0, b1 | m1, vol + w)
            elif not covered[t]:
                covered[t] = True
                rec(s + 1, b0, b1, vol + w)
                covered[t] = False

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        rec(0, 0, 0, const)
    finally:
        sys.setrecursionlimit(old)
    return counts


def connection_matrix(seg, cap=DEFAULT_CAP):
    """Entry (i0, i1) sums q^volume over segment tilings with those indices."""
    entries = {}
    for (b0, b1, e4), c in count_by_index(seg, cap).items():
        bucket = entries.setdefault((b0, b1), {})
        bucket[(0, e4)] = bucket.get((0, e4), 0) + c
    entries = {k: LaurentPoly(v) for k, v in entries.items()}
    return _assemble(seg, entries)


def _assemble(seg, entries):
    idx0 = enumerate_indices(seg, 0)
    idx1 = enumerate_indices(seg, 1)
    shift = seg.color_imbalance()  # f1 - f0 = b - w; rows are keyed by f0
    blocks = {}
    zero = LaurentPoly()
    for f, rows in idx0.items():
        cols = idx1.get(f + shift, [])
        mat = [[entries.get((r.bits, c.bits), zero) for c in cols] for r in rows]
        blocks[f] = (rows, cols, mat)
    labels0 = {i.bits: i.label for ix in idx0.values() for i in ix}
    labels1 = {i.bits: i.label for ix in idx1.values() for i in ix}
    for (i0, i1), val in entries.items():
        if val and index_flux(seg, 1, i1) != index_flux(seg, 0, i0) + shift:
            raise AssertionError("entry with mismatched fluxes")
    return ConnectionMatrix(blocks, shift, entries, labels0, labels1)


def connection_matrix_oracle(seg, cap=DEFAULT_CAP):
    """Same matrix through pruning and plain disk enumeration."""
    from .oracle import count_segment_tilings

    entries = {}
    n0, n1 = len(seg.a0), len(seg.a1)
    for i0 in range(1 << n0):
        for i1 in range(1 << n1):
            val = count_segment_tilings(seg, i0, i1, cap)
            if val:
                entries[(i0, i1)] = val
    return _assemble(seg, entries)


# ---------------------------------------------------------------------------
# matrix helpers over LaurentPoly


def mat_mul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    inner = len(b)
    zero = LaurentPoly()
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_pow(a, n):
    size = len(a)
    result = [[LaurentPoly.one() if i == j else LaurentPoly() for j in range(size)] for i in range(size)]
    for _ in range(n):
        result = mat_mul(result, a)
    return result


def trace(a):
    acc = LaurentPoly()
    for i in range(min(len(a), len(a[0]) if a else 0)):
        acc = acc + a[i][i]
    return acc


def trace_polynomial(C):
    """Sum over f of p^f tr C_f (square blocks only)."""
    total = LaurentPoly()
    for f, (rows, cols, mat) in C.blocks.items():
        if len(rows) != len(cols):
            raise ValueError("trace needs square blocks (periodic segment)")
        total = total + trace(mat).shift(f, 0)
    return total


def equal_up_to_q_unit(a, b):
    """Matrices equal up to a common factor q^(k/4)."""
    diff = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if not x and not y:
                continue
            if not x or not y:
                return False
            (lx, _), (ly, _) = min(x.items()), min(y.items())
            d = lx[1] - ly[1]
            if diff is None:
                diff = d
            if d != diff or x != y.shift(0, d):
                return False
    return True


def block_equal_up_to_q_unit(C1, C2):
    if set(C1.blocks) != set(C2.blocks):
        return False
    return all(equal_up_to_q_unit(C1.block(f), C2.block(f)) for f in C1.blocks)


def eval_matrix(mat, q):
    """Numeric matrix at a real or complex q (numpy array)."""
    import numpy as np

    vals = [[complex(x.eval(1, q)) if x else 0j for x in row] for row in mat]
    arr = np.array(vals, dtype=complex).reshape(len(mat), len(mat[0]) if mat else 0)
    if np.all(np.abs(arr.imag) < 1e-12):
        return arr.real
    return arr


def integer_matrix_at(mat, q):
    """Exact integer matrix at integer q (integral q-exponents only)."""
    from fractions import Fraction

    out = []
    for row in mat:
        r = []
        for x in row:
            v = x.eval(1, q) if x else 0
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError("non-integer entry")
                v = v.numerator
            if isinstance(v, complex) or isinstance(v, float):
                raise ValueError("entry needs quarter powers of q")
            r.append(int(v))
        out.append(r)
    return out


def reduce_quarter_block(mat):
    """Factor out the common q^(c/4) so that the remaining exponents are integral.

    Returns (matrix, c) or (None, None) when no common shift exists.
    """
    rem = None
    for row in mat:
        for x in row:
            for (_, e4), _c in x.items():
                r = e4 % 4
                if rem is None:
                    rem = r
                elif rem != r:
                    return None, None
    if rem is None:
        return mat, 0
    return [[x.shift(0, -rem) for x in row] for row in mat], rem


# ---------------------------------------------------------------------------
# index graph


@dataclass
class IndexGraph:
    flux: int
    nodes: list
    adj: list  # adjacency as list of sets of node positions
    left_active: list
    right_active: list

    @property
    def bi_active(self):
        return [l and r for l, r in zip(self.left_active, self.right_active)]


def index_graph(C, f):
    rows, cols, mat = C.blocks[f]
    if [r.bits for r in rows] != [c.bits for c in cols]:
        raise ValueError("index graph needs a periodic segment")
    n = len(rows)
    adj = [{j for j in range(n) if mat[i][j]} for i in range(n)]
    on_cycle = _cycle_nodes(adj)
    # right-active: can reach a cycle; left-active: reachable from a cycle
    right = _reach(adj, on_cycle, reverse=True)
    left = _reach(adj, on_cycle, reverse=False)
    return IndexGraph(f, [r.bits for r in rows], adj,
                      [i in left for i in range(n)], [i in right for i in range(n)])


def _reach(adj, start, reverse):
    n = len(adj)
    if reverse:
        radj = [set() for _ in range(n)]
        for i in range(n):
            for j in adj[i]:
                radj[j].add(i)
        adj = radj
    seen = set(start)
    todo = list(start)
    while todo:
        i = todo.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return seen


def _cycle_nodes(adj):
    """Nodes lying on some directed cycle (Tarjan SCC)."""
    n = len(adj)
    index = [None] * n
    low = [0] * n
    on = [False] * n
    stack = []
    counter = [0]
    out = set()

    def strong(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on[v] = True
        for w in adj[v]:
            if index[w] is None:
                strong(w)
                low[v] = min(low[v], low[w])
            elif on[w]:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on[w] = False
                comp.append(w)
                if w == v:
                    break
            if len(comp) > 1 or v in adj[v]:
                out.update(comp)

    for v in range(n):
        if index[v] is None:
            strong(v)
    return out


def bi_active_submatrix(C, g):
    keep = [i for i, b in enumerate(g.bi_active) if b]
    mat = C.block(g.flux)
    return [[mat[i][j] for j in keep] for i in keep], keep


def path_pattern_holds(g, n):
    """Check: a path of length n joins i to i' iff i is right- and i' left-active."""
    import numpy as np

    size = len(g.nodes)
    if size == 0:
        return True
    a = np.zeros((size, size), dtype=bool)
    for i, row in enumerate(g.adj):
        for j in row:
            a[i, j] = True
    p = np.eye(size, dtype=bool)
    for _ in range(n):
        p = (p.astype(np.int64) @ a.astype(np.int64)) > 0
    expect = np.outer(np.array(g.right_active), np.array(g.left_active))
    return bool(np.array_equal(p, expect))


__all__ = [
    "AttachmentIndex",
    "SegmentTiling",
    "ConnectionMatrix",
    "IndexGraph",
    "index_flux",
    "enumerate_indices",
    "index_sides",
    "prune",
    "segment_volume",
    "segment_volume_from_parts",
    "iter_segment_tilings",
    "connection_matrix",
    "connection_matrix_oracle",
    "trace_polynomial",
    "mat_mul",
    "mat_pow",
    "trace",
    "equal_up_to_q_unit",
    "block_equal_up_to_q_unit",
    "eval_matrix",
    "integer_matrix_at",
    "reduce_quarter_block",
    "index_graph",
    "bi_active_submatrix",
    "path_pattern_holds",
]
