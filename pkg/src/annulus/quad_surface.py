"""Quadriculated surfaces as combinatorial maps.

A surface is a list of squares with sides ``0..3`` in counterclockwise order;
side ``k`` runs from corner ``k`` to corner ``k+1``.  A gluing pairs
``(s, k)`` with ``(t, j)`` and identifies corner ``k`` of ``s`` with corner
``j+1`` of ``t`` (and corner ``k+1`` of ``s`` with corner ``j`` of ``t``).
Unglued sides form the boundary.

For grid regions, cell ``(x, y)`` has side 0 at the bottom, 1 on the right,
2 on top and 3 on the left, and is black when ``x + y`` is even.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BadTopology,
    DisconnectedRegion,
    InputError,
    InteriorVertexDegree,
    NoBicoloring,
    NonInvolution,
    NotAnAnnulus,
    ShapeMismatch,
)

BLACK, WHITE = 0, 1

# grid neighbour of cell (x, y) across side k, and the side it uses
_GRID_STEP = {0: (0, -1, 2), 1: (1, 0, 3), 2: (0, 1, 0), 3: (-1, 0, 1)}


@dataclass(frozen=True)
class Edge:
    """An edge of the adjacency graph, oriented from black to white."""

    black: int
    bside: int
    white: int
    wside: int


@dataclass(frozen=True)
class Vertex:
    id: int
    boundary: bool
    n: int  # number of incident square corners


class QuadSurface:
    """Validated quadriculated disk or annulus.

    ``glue[s][k]`` is ``(t, j)`` or ``None`` for a boundary side.  ``colors``
    holds ``BLACK``/``WHITE`` per square.  ``coords`` is optional grid data
    used only for printing.  ``outer_hint`` is a boundary side known to lie
    on the outer boundary; it decides ties between boundary components.
    """

    def __init__(self, glue, colors, coords=None, outer_hint=None):
        self.n = len(glue)
        self.glue = [tuple(tuple(g) if g is not None else None for g in row) for row in glue]
        self.colors = list(colors)
        self.coords = list(coords) if coords is not None else None
        self.outer_hint = tuple(outer_hint) if outer_hint is not None else None
        if self.n == 0:
            raise BadTopology("surface has no squares")
        if len(self.colors) != self.n:
            raise InputError("colour list has the wrong length")
        self._check_involution()
        self._check_connected()
        self._check_colors()
        self._build_vertices()
        self._build_edges()
        self._build_boundary()
        self._classify()

    # -- validation ---------------------------------------------------------
    def _check_involution(self):
        for s, row in enumerate(self.glue):
            if len(row) != 4:
                raise NonInvolution(f"square {s} does not have four sides")
            for k, g in enumerate(row):
                if g is None:
                    continue
                t, j = g
                if not (0 <= t < self.n and 0 <= j < 4):
                    raise NonInvolution(f"side ({s},{k}) glued to missing side ({t},{j})")
                if t == s:
                    raise NonInvolution(f"square {s} glued to itself")
                if self.glue[t][j] != (s, k):
                    raise NonInvolution(f"gluing of ({s},{k}) and ({t},{j}) is not symmetric")

    def _check_connected(self):
        seen = {0}
        todo = [0]
        while todo:
            s = todo.pop()
            for g in self.glue[s]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    todo.append(g[0])
        if len(seen) != self.n:
            raise DisconnectedRegion(f"{self.n - len(seen)} squares are unreachable from square 0")

    def _check_colors(self):
        for s, row in enumerate(self.glue):
            if self.colors[s] not in (BLACK, WHITE):
                raise NoBicoloring(f"square {s} has colour {self.colors[s]!r}")
            for g in row:
                if g is not None and self.colors[g[0]] == self.colors[s]:
                    raise NoBicoloring(f"squares {s} and {g[0]} share a side and a colour")

    def _build_vertices(self):
        parent = list(range(4 * self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            a, b = find(a), find(b)
            if a != b:
                parent[max(a, b)] = min(a, b)

        for s, row in enumerate(self.glue):
            for k, g in enumerate(row):
                if g is None:
                    continue
                t, j = g
                union(4 * s + k, 4 * t + (j + 1) % 4)
                union(4 * s + (k + 1) % 4, 4 * t + j)
        ids = {}
        corner_vertex = []
        for c in range(4 * self.n):
            r = find(c)
            if r not in ids:
                ids[r] = len(ids)
            corner_vertex.append(ids[r])
        self.corner_vertex = [corner_vertex[4 * s:4 * s + 4] for s in range(self.n)]
        nv = len(ids)
        corners = [[] for _ in range(nv)]
        for s in range(self.n):
            for k in range(4):
                corners[self.corner_vertex[s][k]].append((s, k))
        self.vertex_corners = corners
        # boundary sides starting at each vertex
        starts = [0] * nv
        for s in range(self.n):
            for k in range(4):
                if self.glue[s][k] is None:
                    starts[self.corner_vertex[s][k]] += 1
        self.vertices = []
        self.sectors = []
        for v in range(nv):
            boundary = starts[v] > 0
            if starts[v] > 1:
                raise BadTopology(f"vertex {v} is a pinch point ({starts[v]} boundary passes)")
            if not boundary and len(corners[v]) != 4:
                raise InteriorVertexDegree(f"interior vertex {v} touches {len(corners[v])} squares")
            self.vertices.append(Vertex(v, boundary, len(corners[v])))
            self.sectors.append(self._rotation(v, boundary))
        self.n_vertices = nv

    def _rotation(self, v, boundary):
        """Sectors (square, corner) around ``v`` in counterclockwise order.

        For a boundary vertex the first sector has its side ``k`` on the
        boundary and the last has side ``k-1`` on the boundary.
        """
        corners = self.vertex_corners[v]
        if boundary:
            start = next((s, k) for s, k in corners if self.glue[s][k] is None)
        else:
            start = min(corners)
        out = [start]
        s, k = start
        while True:
            g = self.glue[s][(k - 1) % 4]
            if g is None:
                break
            s, k = g
            if (s, k) == start:
                break
            out.append((s, k))
        if len(out) != len(corners):
            raise BadTopology(f"vertex {v} has a broken corner cycle")
        return out

    def _build_edges(self):
        self.edge_of = [[None] * 4 for _ in range(self.n)]
        self.edge_sides = []
        for s in range(self.n):
            for k in range(4):
                if self.edge_of[s][k] is not None:
                    continue
                e = len(self.edge_sides)
                g = self.glue[s][k]
                self.edge_of[s][k] = e
                if g is None:
                    self.edge_sides.append(((s, k),))
                else:
                    self.edge_of[g[0]][g[1]] = e
                    self.edge_sides.append(((s, k), g))
        self.n_edges = len(self.edge_sides)
        adj = []
        for s in range(self.n):
            for k in range(4):
                g = self.glue[s][k]
                if g is not None and self.colors[s] == BLACK:
                    adj.append(Edge(s, k, g[0], g[1]))
        self.adjacency_edges = adj

    def _build_boundary(self):
        bsides = [(s, k) for s in range(self.n) for k in range(4) if self.glue[s][k] is None]
        seen = set()
        comps = []
        for side in bsides:
            if side in seen:
                continue
            comp = []
            cur = side
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                cur = self.next_boundary_side(cur)
            comps.append(comp)
        self.boundary_components = comps

    def next_boundary_side(self, side):
        """Successor of a boundary side, walking with the surface on the left."""
        s, k = side
        j = (k + 1) % 4
        while self.glue[s][j] is not None:
            t, i = self.glue[s][j]
            s, j = t, (i + 1) % 4
        return (s, j)

    def _classify(self):
        n_b = sum(len(c) for c in self.boundary_components)
        n_int = (4 * self.n - n_b) // 2
        self.euler = self.n - (n_int + n_b) + self.n_vertices
        comps = len(self.boundary_components)
        if self.euler == 1 and comps == 1:
            self.kind = "disk"
        elif self.euler == 0 and comps == 2:
            self.kind = "annulus"
        else:
            raise BadTopology(f"Euler characteristic {self.euler} with {comps} boundary components")
        if self.kind == "annulus":
            curv = [self.component_curvature(c) for c in self.boundary_components]
            if curv[0] != curv[1]:
                outer = 0 if curv[0] > curv[1] else 1
            elif self.outer_hint is not None:
                outer = 0 if self.outer_hint in self.boundary_components[0] else 1
            else:
                outer = 0
            self.outer_index = outer
        else:
            self.outer_index = 0

    # -- basic queries ------------------------------------------------------
    @property
    def is_annulus(self):
        return self.kind == "annulus"

    @property
    def is_disk(self):
        return self.kind == "disk"

    def color_counts(self):
        b = sum(1 for c in self.colors if c == BLACK)
        return b, self.n - b

    def is_balanced(self):
        b, w = self.color_counts()
        return b == w

    def blacks(self):
        return [s for s in range(self.n) if self.colors[s] == BLACK]

    def whites(self):
        return [s for s in range(self.n) if self.colors[s] == WHITE]

    def vertex(self, s, k):
        return self.corner_vertex[s][k % 4]

    def interior_vertices(self):
        return [v.id for v in self.vertices if not v.boundary]

    def boundary_vertices(self):
        return [v.id for v in self.vertices if v.boundary]

    @property
    def outer_sides(self):
        return self.boundary_components[self.outer_index]

    @property
    def inner_sides(self):
        if not self.is_annulus:
            return []
        return self.boundary_components[1 - self.outer_index]

    def outer_vertices(self):
        return sorted({self.vertex(s, k) for s, k in self.outer_sides})

    def inner_vertices(self):
        return sorted({self.vertex(s, k) for s, k in self.inner_sides})

    def curvature(self, v):
        """Boundary curvature ``2 - n_v`` (surface on the left); 0 inside."""
        vert = self.vertices[v]
        return 2 - vert.n if vert.boundary else 0

    def component_curvature(self, comp):
        return sum(self.curvature(self.vertex(s, k)) for s, k in comp)

    def total_boundary_curvature(self):
        return sum(self.curvature(v) for v in self.boundary_vertices())

    def interior_side_count(self):
        return len(self.adjacency_edges)

    def other_side(self, s, k):
        return self.glue[s][k]

    # -- directed steps along edges -----------------------------------------
    # A step (s, k, d) walks side k of s from corner k to k+1 when d = +1 and
    # backwards when d = -1.  Steps along glued sides always use d = +1.
    def step_start(self, step):
        s, k, d = step
        return self.vertex(s, k) if d > 0 else self.vertex(s, k + 1)

    def step_end(self, step):
        s, k, d = step
        return self.vertex(s, k + 1) if d > 0 else self.vertex(s, k)

    def reverse_step(self, step):
        s, k, d = step
        if d < 0:
            return (s, k, 1)
        g = self.glue[s][k]
        if g is None:
            return (s, k, -1)
        return (g[0], g[1], 1)

    def spokes(self, v):
        """Steps leaving ``v`` in counterclockwise order.

        Sector ``i`` of the rotation lies between spokes ``i`` and ``i+1``.
        """
        cache = getattr(self, "_spokes", None)
        if cache is None:
            cache = self._spokes = {}
        if v in cache:
            return cache[v]
        secs = self.sectors[v]
        out = [(s, k, 1) for s, k in secs]
        if self.vertices[v].boundary:
            s, k = secs[-1]
            out.append((s, (k - 1) % 4, -1))
        cache[v] = out
        return out

    def turn_curvature(self, step_in, step_out):
        """Curvature of a path at the vertex between two consecutive steps."""
        v = self.step_end(step_in)
        sp = self.spokes(v)
        b = sp.index(self.reverse_step(step_in))
        a = sp.index(step_out)
        if not self.vertices[v].boundary:
            return 2 - (b - a) % len(sp)
        if b > a:
            return 2 - (b - a)
        return (a - b) - 2

    def turn_options(self, step_in, curv):
        """Steps leaving the end of ``step_in`` with the given curvature."""
        v = self.step_end(step_in)
        sp = self.spokes(v)
        b = sp.index(self.reverse_step(step_in))
        if not self.vertices[v].boundary:
            return [sp[(b - (2 - curv)) % len(sp)]]
        out = []
        a = b - (2 - curv)
        if 0 <= a < b:
            out.append(sp[a])
        a = b + (curv + 2)
        if b < a < len(sp):
            out.append(sp[a])
        return out

    # -- printing -----------------------------------------------------------
    def ascii(self):
        """Debug picture of a grid surface: B/W per square."""
        if self.coords is None:
            return f"<surface with {self.n} squares>"
        xs = [c[0] for c in self.coords]
        ys = [c[1] for c in self.coords]
        at = {c: s for s, c in enumerate(self.coords)}
        lines = []
        for y in range(max(ys), min(ys) - 1, -1):
            row = ""
            for x in range(min(xs), max(xs) + 1):
                s = at.get((x, y))
                row += "." if s is None else ("B" if self.colors[s] == BLACK else "W")
            lines.append(row)
        return "\n".join(lines)

    def __repr__(self):
        return f"QuadSurface({self.kind}, {self.n} squares, {self.n_vertices} vertices)"


# ---------------------------------------------------------------------------
# constructors


def build_from_grid(cells):
    cells = sorted({(int(x), int(y)) for x, y in cells}, key=lambda c: (-c[1], c[0]))
    if not cells:
        raise BadTopology("empty region")
    index = {c: i for i, c in enumerate(cells)}
    glue = []
    for x, y in cells:
        row = []
        for k in range(4):
            dx, dy, j = _GRID_STEP[k]
            t = index.get((x + dx, y + dy))
            row.append(None if t is None else (t, j))
        glue.append(row)
    colors = [BLACK if (x + y) % 2 == 0 else WHITE for x, y in cells]
    return QuadSurface(glue, colors, coords=cells)


def build_from_gluing(squares, side_gluing, colors, outer_hint=None):
    """Surface from explicit gluings.

    ``squares`` is a count or an iterable of ids ``0..n-1``; ``side_gluing``
    an iterable of ``((s, k), (t, j))`` pairs; ``colors`` a sequence of
    ``BLACK``/``WHITE`` (or ``'B'``/``'W'``).
    """
    n = squares if isinstance(squares, int) else len(list(squares))
    glue = [[None] * 4 for _ in range(n)]
    for a, b in side_gluing:
        (s, k), (t, j) = a, b
        for (u, i), other in (((s, k), (t, j)), ((t, j), (s, k))):
            if not (0 <= u < n and 0 <= i < 4):
                raise NonInvolution(f"side ({u},{i}) does not exist")
            if glue[u][i] is not None and glue[u][i] != other:
                raise NonInvolution(f"side ({u},{i}) glued twice")
            glue[u][i] = other
    cols = [_color(c) for c in colors]
    return QuadSurface(glue, cols, outer_hint=outer_hint)


def _color(c):
    if c in (BLACK, WHITE):
        return c
    if isinstance(c, str) and c.upper() in ("B", "W"):
        return BLACK if c.upper() == "B" else WHITE
    raise NoBicoloring(f"unknown colour {c!r}")


def build_periodic(cells, period, outer_hint_cell=None, outer_hint_side=None):
    """Annulus from a grid band modulo a translation ``period = (a, b)``, b > 0.

    ``cells`` lists one representative per orbit, with ``0 <= y < b``.
    """
    pa, pb = period
    if pb <= 0:
        raise ValueError("period must have positive y-component")

    def rep(x, y):
        t = y // pb
        return (x - t * pa, y - t * pb)

    cells = sorted({rep(x, y) for x, y in cells}, key=lambda c: (-c[1], c[0]))
    index = {c: i for i, c in enumerate(cells)}
    glue = []
    for x, y in cells:
        row = []
        for k in range(4):
            dx, dy, j = _GRID_STEP[k]
            t = index.get(rep(x + dx, y + dy))
            row.append(None if t is None else (t, j))
        glue.append(row)
    if (pa + pb) % 2:
        raise NoBicoloring("period changes the colour of squares")
    colors = [BLACK if (x + y) % 2 == 0 else WHITE for x, y in cells]
    hint = None
    if outer_hint_cell is not None:
        hint = (index[rep(*outer_hint_cell)], outer_hint_side)
    return QuadSurface(glue, colors, coords=cells, outer_hint=hint)


def build_ladder(d, length=2):
    """The band ``0 <= x - y <= d - 1`` modulo the translation ``(length, length)``.

    ``d = 2`` is a single ladder (two walls); ``d = 2n`` has ``n + 1`` walls.
    """
    if d < 1 or length < 2:
        raise ValueError("need d >= 1 and length >= 2")
    cells = [(y + j, y) for y in range(length) for j in range(d)]
    return build_periodic(cells, (length, length), outer_hint_cell=(d - 1, 0), outer_hint_side=0)


# ---------------------------------------------------------------------------
# text formats


def parse_region(text):
    """Grid region: rows of ``#`` (square) and ``.`` (empty), row 0 on top."""
    cells = []
    for r, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n\r")
        if not line.strip():
            continue
        for c, ch in enumerate(line, start=1):
            if ch == "#":
                cells.append((c - 1, -(r - 1)))
            elif ch in ". ":
                continue
            else:
                raise InputError(f"unexpected character {ch!r}", r, c)
    if not cells:
        raise InputError("region has no squares")
    return build_from_grid(cells)


def parse_gluing(text):
    """Gluing format.

    Lines ``s k t j`` glue side k of square s to side j of square t;
    ``colors B W ...`` lists the colours; ``outer s k`` marks an outer
    boundary side; ``squares n`` fixes the square count.  ``%`` starts a
    comment.
    """
    pairs = []
    colors = None
    outer = None
    n = None
    for r, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%")[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0].lower()
        try:
            if head in ("colors", "colours"):
                colors = [_color(t) for t in tok[1:]]
            elif head == "outer":
                outer = (int(tok[1]), int(tok[2]))
            elif head == "squares":
                n = int(tok[1])
            else:
                if len(tok) != 4:
                    raise InputError("expected 'square side square side'", r, 1)
                s, k, t, j = (int(x) for x in tok)
                pairs.append(((s, k), (t, j)))
        except (ValueError, IndexError, NoBicoloring) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(str(exc) or "malformed line", r, 1) from None
    if colors is None:
        raise InputError("missing colors line")
    if n is None:
        n = len(colors)
    return build_from_gluing(n, pairs, colors, outer_hint=outer)


def load_surface(path_or_text):
    import os

    text = path_or_text
    if "\n" not in path_or_text and os.path.exists(path_or_text):
        try:
            with open(path_or_text) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path_or_text}: {exc}") from None
    body = [ln for ln in text.splitlines() if ln.strip()]
    if body and all(set(ln.strip()) <= set("#.") for ln in body):
        return parse_region(text)
    return parse_gluing(text)


def to_gluing_text(S):
    lines = [f"squares {S.n}"]
    for s in range(S.n):
        for k in range(4):
            g = S.glue[s][k]
            if g is not None and (s, k) < g:
                lines.append(f"{s} {k} {g[0]} {g[1]}")
    lines.append("colors " + " ".join("B" if c == BLACK else "W" for c in S.colors))
    if S.is_annulus:
        s, k = S.outer_sides[0]
        lines.append(f"outer {s} {k}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# isomorphism


def isomorphic(S, T):
    """Orientation-preserving isomorphism of combinatorial maps with colours."""
    if S.n != T.n or S.kind != T.kind or sorted(S.colors) != sorted(T.colors):
        return False
    for t0 in range(T.n):
        if T.colors[t0] != S.colors[0]:
            continue
        for r in range(4):
            if _try_map(S, T, t0, r):
                return True
    return False


def _try_map(S, T, t0, r0):
    phi = {0: (t0, r0)}
    used = {t0}
    todo = [0]
    while todo:
        s = todo.pop()
        t, r = phi[s]
        if S.colors[s] != T.colors[t]:
            return False
        for k in range(4):
            g = S.glue[s][k]
            h = T.glue[t][(k + r) % 4]
            if (g is None) != (h is None):
                return False
            if g is None:
                continue
            s2, k2 = g
            t2, j2 = h
            r2 = (j2 - k2) % 4
            if s2 in phi:
                if phi[s2] != (t2, r2):
                    return False
            else:
                if t2 in used:
                    return False
                phi[s2] = (t2, r2)
                used.add(t2)
                todo.append(s2)
    return len(phi) == S.n


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class Cut:
    """Path along edges from the outer to the inner boundary.

    ``sides[i] = (s, k)`` is walked from corner k to k+1 of s, going from
    ``vertices[i]`` to ``vertices[i+1]``; square s is on the left of the path.
    """

    vertices: tuple
    sides: tuple

    def __len__(self):
        return len(self.sides)

    def crossed_edges(self, S):
        return [(s, S.glue[s][k][0]) for s, k in self.sides]

    def edge_ids(self, S):
        return [S.edge_of[s][k] for s, k in self.sides]


def _require_annulus(A):
    if not isinstance(A, QuadSurface) or not A.is_annulus:
        raise NotAnAnnulus("an annulus is required")


def is_valid_cut(A, cut):
    _require_annulus(A)
    outer = set(A.outer_vertices())
    inner = set(A.inner_vertices())
    vs = list(cut.vertices)
    if len(vs) != len(cut.sides) + 1 or len(set(vs)) != len(vs):
        return False
    if vs[0] not in outer or vs[-1] not in inner:
        return False
    if any(A.vertices[v].boundary for v in vs[1:-1]):
        return False
    for i, (s, k) in enumerate(cut.sides):
        if A.glue[s][k] is None:
            return False
        if A.vertex(s, k) != vs[i] or A.vertex(s, k + 1) != vs[i + 1]:
            return False
    return True


def _glued_moves(A, v):
    """(next vertex, side) pairs for glued sides starting at ``v``."""
    out = []
    for s, k, d in A.spokes(v):
        if d > 0 and A.glue[s][k] is not None:
            out.append((A.vertex(s, k + 1), (s, k)))
    return sorted(out)


def find_cut(A, allowed=None):
    """Shortest cut, ties broken by the lexicographically least vertex sequence.

    ``allowed(side)`` optionally restricts the sides the path may use.
    Returns ``None`` when no cut exists under the restriction.
    """
    _require_annulus(A)
    outer = set(A.outer_vertices())
    inner = set(A.inner_vertices())
    moves = {v: [m for m in _glued_moves(A, v) if allowed is None or allowed(m[1])]
             for v in range(A.n_vertices)}
    # distance to the inner boundary through interior vertices
    rev = {v: [] for v in range(A.n_vertices)}
    for v, ms in moves.items():
        for w, _ in ms:
            rev[w].append(v)
    dist = {v: 0 for v in inner}
    queue = deque(sorted(inner))
    while queue:
        w = queue.popleft()
        if w in outer:
            continue
        for v in rev[w]:
            if v in dist or v in inner:
                continue
            if A.vertices[v].boundary and v not in outer:
                continue
            dist[v] = dist[w] + 1
            queue.append(v)
    starts = [v for v in sorted(outer) if v in dist]
    if not starts:
        return None
    best = min(dist[v] for v in starts)
    v = next(v for v in starts if dist[v] == best)
    verts = [v]
    sides = []
    while dist[v] > 0:
        for w, side in moves[v]:
            if w in dist and dist[w] == dist[v] - 1 and (dist[w] == 0 or not A.vertices[w].boundary):
                verts.append(w)
                sides.append(side)
                v = w
                break
        else:  # pragma: no cover - distances guarantee progress
            raise RuntimeError("cut reconstruction failed")
    return Cut(tuple(verts), tuple(sides))


def require_cut(A):
    cut = find_cut(A)
    if cut is None:
        raise NotAnAnnulus("no cut joins the boundary components")
    return cut


def find_zigzag_cut(A):
    """A cut along which every turn is sharp, so all left squares share a colour.

    First tries cuts lying on a genuine zig-zag (turns alternate); otherwise
    the shortest cut whose left squares all have one colour.  Along such a
    cut every domino crosses in the same direction.
    """
    _require_annulus(A)
    zz = _zigzag_cuts(A)
    if zz:
        return min(zz, key=lambda c: (len(c), c.vertices))
    best = None
    for color in (BLACK, WHITE):
        cut = find_cut(A, allowed=lambda side, c=color: A.colors[side[0]] == c)
        if cut is not None and (best is None or (len(cut), cut.vertices) < (len(best), best.vertices)):
            best = cut
    if best is None:
        raise NotAnAnnulus("no monochrome cut found")
    return best


def _zigzag_cuts(A):
    outer = set(A.outer_vertices())
    inner = set(A.inner_vertices())
    found = []
    for v in sorted(outer):
        for w, side in _glued_moves(A, v):
            if w in inner:
                found.append(Cut((v, w), (side,)))
                continue
            if A.vertices[w].boundary:
                continue
            for first in (1, -1):
                path = _follow_zigzag_to_boundary(A, (side[0], side[1], 1), first)
                if path is None:
                    continue
                verts = [v] + [A.step_end(st) for st in path]
                if verts[-1] in inner and len(set(verts)) == len(verts):
                    found.append(Cut(tuple(verts), tuple((s, k) for s, k, _ in path)))
    return found


def _follow_zigzag_to_boundary(A, step, curv):
    path = [step]
    seen = {A.step_start(step), A.step_end(step)}
    while True:
        v = A.step_end(path[-1])
        if A.vertices[v].boundary:
            return path
        nxt = A.turn_options(path[-1], curv)[0]
        if nxt[2] < 0 or A.glue[nxt[0]][nxt[1]] is None:
            return None
        w = A.step_end(nxt)
        if w in seen:
            return None
        seen.add(w)
        path.append(nxt)
        curv = -curv


def cut_is_monochrome(A, cut):
    return len({A.colors[s] for s, _ in cut.sides}) == 1


# ---------------------------------------------------------------------------
# track segments


@dataclass
class TrackSegment:
    """A disk with its boundary split into arcs ``bi, a0, bo, a1``.

    ``a0`` and ``a1`` list boundary sides in order from the ``bo`` end to the
    ``bi`` end.  Sides of ``a1`` are walked from bo to bi with the surface on
    the left; sides of ``a0`` the other way.
    """

    surface: QuadSurface
    a0: list
    a1: list
    bo: list = field(default_factory=list)
    bi: list = field(default_factory=list)
    periodic: bool = False

    def __post_init__(self):
        S = self.surface
        if not S.is_disk:
            raise BadTopology("a track segment must be a disk")
        self.a0 = [tuple(x) for x in self.a0]
        self.a1 = [tuple(x) for x in self.a1]
        if len(self.a0) != len(self.a1) and self.periodic:
            raise ShapeMismatch("periodic segment needs attachments of equal length")
        if not self.bo and not self.bi:
            self.bo, self.bi = _split_rest(S, self.a0, self.a1)
        self.periodic = bool(self.periodic) and attachments_compatible(self, self)

    @property
    def n(self):
        return self.surface.n

    def base_vertex(self):
        """Outer end of ``a1``: the reference point for segment heights."""
        s, k = self.a1[0]
        return self.surface.vertex(s, k)

    def a1_vertices(self):
        S = self.surface
        vs = [S.vertex(s, k) for s, k in self.a1]
        s, k = self.a1[-1]
        return vs + [S.vertex(s, k + 1)]

    def a0_vertices(self):
        """Vertices of a0 from the bo end to the bi end."""
        S = self.surface
        vs = [S.vertex(s, k + 1) for s, k in self.a0]
        s, k = self.a0[-1]
        return vs + [S.vertex(s, k)]

    def attachment_interior_vertices(self):
        return set(self.a0_vertices()[1:-1]) | set(self.a1_vertices()[1:-1])

    def attachment_end_vertices(self):
        a0 = self.a0_vertices()
        a1 = self.a1_vertices()
        return {a0[0], a0[-1], a1[0], a1[-1]}

    def bo_vertices(self):
        S = self.surface
        out = set()
        for s, k in self.bo:
            out.add(S.vertex(s, k))
            out.add(S.vertex(s, k + 1))
        return out

    def bi_vertices(self):
        S = self.surface
        out = set()
        for s, k in self.bi:
            out.add(S.vertex(s, k))
            out.add(S.vertex(s, k + 1))
        return out

    def color_imbalance(self):
        b, w = self.surface.color_counts()
        return b - w


def _split_rest(S, a0, a1):
    """Boundary sides outside the attachments, as (bo, bi)."""
    att = set(a0) | set(a1)
    comp = S.boundary_components[0]
    if not a1:
        raise ShapeMismatch("empty attachment")
    # walk from the end of a1: bi follows, then a0 (reversed), then bo
    cur = S.next_boundary_side(a1[-1])
    bi = []
    while cur not in att:
        bi.append(cur)
        cur = S.next_boundary_side(cur)
    if a0 and cur != a0[-1]:
        raise ShapeMismatch("attachments are not in the order a1, bi, a0, bo")
    while cur in att and cur not in a1:
        cur = S.next_boundary_side(cur)
    bo = []
    while cur not in att:
        bo.append(cur)
        cur = S.next_boundary_side(cur)
    if cur != a1[0]:
        raise ShapeMismatch("attachments are not in the order a1, bi, a0, bo")
    if len(bo) + len(bi) + len(att) != len(comp):
        raise ShapeMismatch("attachments overlap or are not contiguous")
    return bo, bi


def attachment_shape(seg, which):
    """(colours of the squares, n_v at arc-interior vertices) along an attachment."""
    S = seg.surface
    arc = seg.a0 if which == 0 else seg.a1
    verts = seg.a0_vertices() if which == 0 else seg.a1_vertices()
    colors = tuple(S.colors[s] for s, _ in arc)
    degrees = tuple(S.vertices[v].n for v in verts[1:-1])
    return colors, degrees


def attachments_compatible(left, right):
    """Can ``a1`` of ``left`` be glued to ``a0`` of ``right``?"""
    if len(left.a1) != len(right.a0):
        return False
    c1, d1 = attachment_shape(left, 1)
    c0, d0 = attachment_shape(right, 0)
    if any(x == y for x, y in zip(c1, c0)):
        return False
    return all(x + y == 4 for x, y in zip(d1, d0))


def cut_open(A, cut):
    _require_annulus(A)
    if not is_valid_cut(A, cut):
        raise NotAnAnnulus("not a valid cut")
    glue = [list(row) for row in A.glue]
    a1 = []
    a0 = []
    for s, k in cut.sides:
        t, j = glue[s][k]
        glue[s][k] = None
        glue[t][j] = None
        a1.append((s, k))
        a0.append((t, j))
    D = QuadSurface(glue, A.colors, coords=A.coords)
    bo = [side for side in A.outer_sides]
    bi = [side for side in A.inner_sides]
    return TrackSegment(D, a0, a1, _order_arc(D, bo), _order_arc(D, bi), periodic=True)


def _order_arc(D, sides):
    sides = set(sides)
    if not sides:
        return []
    # start at the side whose predecessor is not in the arc
    succ = {x: D.next_boundary_side(x) for x in sides}
    has_pred = {y for y in succ.values() if y in sides}
    start = [x for x in sides if x not in has_pred]
    cur = min(start) if start else min(sides)
    out = []
    while cur in sides and cur not in out:
        out.append(cur)
        cur = succ[cur]
    return out


def close_up(seg):
    if not seg.periodic and not attachments_compatible(seg, seg):
        raise ShapeMismatch("attachments of the segment do not match")
    glue = [list(row) for row in seg.surface.glue]
    for x, y in zip(seg.a1, seg.a0):
        glue[x[0]][x[1]] = y
        glue[y[0]][y[1]] = x
    hint = seg.bo[0] if seg.bo else None
    try:
        A = QuadSurface(glue, seg.surface.colors, coords=seg.surface.coords, outer_hint=hint)
    except (BadTopology, InteriorVertexDegree, NonInvolution) as exc:
        raise ShapeMismatch(f"closing the segment fails: {exc}") from None
    if not A.is_annulus:
        raise ShapeMismatch("closing did not produce an annulus")
    return A


def juxtapose(left, right):
    """Glue ``a1`` of ``left`` to ``a0`` of ``right``; ids of ``right`` are shifted."""
    if not attachments_compatible(left, right):
        raise ShapeMismatch("a1 of the first segment and a0 of the second differ in shape")
    off = left.n

    def sh(side):
        return (side[0] + off, side[1])

    glue = [list(row) for row in left.surface.glue]
    for row in right.surface.glue:
        glue.append([None if g is None else sh(g) for g in row])
    for x, y in zip(left.a1, right.a0):
        y = sh(y)
        glue[x[0]][x[1]] = y
        glue[y[0]][y[1]] = x
    colors = list(left.surface.colors) + list(right.surface.colors)
    try:
        D = QuadSurface(glue, colors)
    except (BadTopology, InteriorVertexDegree) as exc:
        raise ShapeMismatch(f"juxtaposition fails: {exc}") from None
    bo = list(left.bo) + [sh(x) for x in right.bo]
    bi = list(left.bi) + [sh(x) for x in right.bi]
    seg = TrackSegment(D, list(left.a0), [sh(x) for x in right.a1],
                       _order_arc(D, bo), _order_arc(D, bi),
                       periodic=left.periodic and right.periodic)
    return seg


def n_fold(seg, n):
    if n < 1:
        raise ValueError("n must be >= 1")
    out = seg
    for _ in range(n - 1):
        out = juxtapose(out, seg)
    return out


def cover(A, n, cut=None):
    """The n-fold cover of an annulus (closing ``n`` copies of a cut-open segment)."""
    cut = cut or require_cut(A)
    return close_up(n_fold(cut_open(A, cut), n))


def induced_cuts(seg, n):
    """Cuts of ``close_up(n_fold(seg, n))`` between consecutive copies."""
    A = close_up(n_fold(seg, n))
    cuts = []
    for c in range(n):
        sides = tuple((s + c * seg.n, k) for s, k in seg.a1)
        verts = [A.vertex(s, k) for s, k in sides]
        s, k = sides[-1]
        verts.append(A.vertex(s, k + 1))
        cuts.append(Cut(tuple(verts), sides))
    return A, cuts


def grid_segment(cells, a0_cells, a1_cells):
    """Track segment from a grid disk: a0 = left sides of ``a0_cells``, a1 = right
    sides of ``a1_cells``, both listed bottom to top (bo at the bottom)."""
    D = build_from_grid(cells)
    index = {c: i for i, c in enumerate(D.coords)}
    a0 = [(index[c], 3) for c in a0_cells]
    a1 = [(index[c], 1) for c in a1_cells]
    return TrackSegment(D, a0, a1, periodic=True)


# ---------------------------------------------------------------------------
# zig-zags and walls


@dataclass(frozen=True)
class ZigZag:
    vertices: tuple
    steps: tuple
    closed: bool
    curvatures: tuple

    def edge_ids(self, S):
        return frozenset(S.edge_of[s][k] for s, k, _ in self.steps)


@dataclass(frozen=True)
class Wall:
    zigzag: ZigZag
    black: int
    white: int
    region: frozenset


def closed_zigzags(S, max_len=None):
    """All simple closed zig-zags of a surface, deduplicated."""
    max_len = max_len or 2 * S.n_edges
    found = {}
    all_steps = []
    for s in range(S.n):
        for k in range(4):
            all_steps.append((s, k, 1))
            if S.glue[s][k] is None:
                all_steps.append((s, k, -1))
    for start in all_steps:
        for c0 in (1, -1):
            for path in _closed_from(S, start, c0, max_len):
                key = frozenset(S.edge_of[s][k] for s, k, _ in path)
                if key in found:
                    continue
                verts = tuple(S.step_start(st) for st in path)
                curv = tuple(S.turn_curvature(path[i - 1], path[i]) for i in range(len(path)))
                found[key] = ZigZag(verts, tuple(path), True, curv)
    return [found[k] for k in sorted(found, key=lambda k: sorted(k))]


def _closed_from(S, start, c0, max_len):
    """Closed zig-zags starting with ``start`` and turning by ``c0`` after it."""
    v0 = S.step_start(start)
    v1 = S.step_end(start)
    if v1 == v0:
        return []
    out = []
    stack = [([start], frozenset((v0, v1)), c0)]
    while stack:
        path, seen, curv = stack.pop()
        if len(path) >= max_len:
            continue
        for nxt in S.turn_options(path[-1], curv):
            w = S.step_end(nxt)
            if w == v0:
                if (len(path) + 1) % 2 == 0 and S.turn_curvature(nxt, start) == -c0:
                    out.append(path + [nxt])
                continue
            if w in seen:
                continue
            stack.append((path + [nxt], seen | {w}, -curv))
    return out


def enclosed_region(S, zz):
    """Squares between a closed curve and the inner boundary (flood fill)."""
    on = zz.edge_ids(S)
    start = [s for s, k in S.inner_sides if S.edge_of[s][k] not in on]
    seen = set(start)
    todo = list(start)
    while todo:
        s = todo.pop()
        for k in range(4):
            g = S.glue[s][k]
            if g is None or S.edge_of[s][k] in on:
                continue
            if g[0] not in seen:
                seen.add(g[0])
                todo.append(g[0])
    return frozenset(seen)


def winds_once(S, zz, region=None):
    region = enclosed_region(S, zz) if region is None else region
    on = zz.edge_ids(S)
    for s, k in S.outer_sides:
        if S.edge_of[s][k] not in on and s in region:
            return False
    return True


def find_walls(S):
    _require_annulus(S)
    walls = []
    for zz in closed_zigzags(S):
        region = enclosed_region(S, zz)
        if not winds_once(S, zz, region):
            continue
        b = sum(1 for s in region if S.colors[s] == BLACK)
        w = len(region) - b
        if b == w:
            walls.append(Wall(zz, b, w, region))
    return walls


def is_wall_free(S):
    return not find_walls(S)


__all__ = [
    "BLACK",
    "WHITE",
    "Edge",
    "Vertex",
    "QuadSurface",
    "Cut",
    "TrackSegment",
    "ZigZag",
    "Wall",
    "build_from_grid",
    "build_from_gluing",
    "build_periodic",
    "build_ladder",
    "parse_region",
    "parse_gluing",
    "load_surface",
    "to_gluing_text",
    "isomorphic",
    "find_cut",
    "require_cut",
    "find_zigzag_cut",
    "is_valid_cut",
    "cut_open",
    "close_up",
    "juxtapose",
    "n_fold",
    "cover",
    "induced_cuts",
    "grid_segment",
    "closed_zigzags",
    "find_walls",
    "is_wall_free",
]
