"""Cycle space of the adjacency graph and the flux/volume/sign homomorphisms.

Edges of the adjacency graph are the glued side pairs of the annulus,
oriented from black to white.  A 1-chain is a list of integer coefficients
indexed like ``A.adjacency_edges``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AnnulusError, NotACycle, NotAnAnnulus
from .quad_surface import BLACK


@dataclass(frozen=True)
class Invariants:
    flux: int
    volume: int
    sign: int

    def __iter__(self):
        return iter((self.flux, self.volume, self.sign))


@dataclass
class Face:
    darts: list  # (square, side) pairs: leave square across side
    swept: list  # boundary sides met while tracing
    kind: str  # "small", "large" or "outer"
    vertex: int | None = None


class AdjacencyData:
    """Faces, hole basis and a cached exact solver for one annulus."""

    def __init__(self, A):
        self.A = A
        self.annulus = A.is_annulus
        self.edges = A.adjacency_edges
        self.edge_index = {}
        for i, e in enumerate(self.edges):
            self.edge_index[(e.black, e.bside)] = i
            self.edge_index[(e.white, e.wside)] = i
        self._trace_faces()
        self._build_basis()

    # -- faces --------------------------------------------------------------
    def dart_edge(self, dart):
        return self.edge_index[dart]

    def dart_sign(self, dart):
        """+1 if the dart runs black to white."""
        return 1 if self.A.colors[dart[0]] == BLACK else -1

    def _trace_faces(self):
        A = self.A
        inner = set(A.inner_sides)
        outer = set(A.outer_sides)
        seen = set()
        faces = []
        self.face_of_dart = {}
        for s in range(A.n):
            for k in range(4):
                if A.glue[s][k] is None or (s, k) in seen:
                    continue
                darts, swept = [], []
                cur = (s, k)
                while cur not in seen:
                    seen.add(cur)
                    darts.append(cur)
                    t, j = A.glue[cur[0]][cur[1]]
                    i = (j - 1) % 4
                    while A.glue[t][i] is None:
                        swept.append((t, i))
                        i = (i - 1) % 4
                    cur = (t, i)
                hit_in = any(x in inner for x in swept)
                hit_out = any(x in outer for x in swept)
                if hit_in and hit_out:
                    raise AnnulusError("a face touches both boundary components")
                kind = "large" if hit_in else "outer" if hit_out else "small"
                face = Face(darts, swept, kind)
                if kind == "small":
                    if len(darts) != 4:
                        raise AnnulusError("small hole is not a 4-cycle")
                    face.vertex = A.vertex(darts[0][0], darts[0][1] + 1)
                for d in darts:
                    self.face_of_dart[d] = len(faces)
                faces.append(face)
        self.faces = faces
        larges = [f for f in faces if f.kind == "large"]
        outers = [f for f in faces if f.kind == "outer"]
        if len(larges) != int(self.annulus) or len(outers) > 1:
            raise AnnulusError("unexpected face structure")
        if not outers:
            # a surface whose adjacency graph is a tree has no bounded faces
            # and the outer face is never traced
            outers = [Face([], [], "outer")]
            faces.append(outers[0])
        self.large = larges[0] if larges else None
        self.small = sorted((f for f in faces if f.kind == "small"), key=lambda f: f.vertex)
        self.k = len(self.large.darts) // 2 if self.large else 0

    def face_chain(self, face):
        c = [0] * len(self.edges)
        for d in face.darts:
            c[self.dart_edge(d)] += self.dart_sign(d)
        return c

    # -- basis and solver -----------------------------------------------------
    def _build_basis(self):
        rows = [self.face_chain(f) for f in self.small]
        if self.large is not None:
            rows.append(self.face_chain(self.large))
        self.basis = rows
        r = len(rows)
        n_int = len(self.A.interior_vertices())
        if len(self.small) != n_int:
            raise AnnulusError("small holes do not match interior vertices")
        dim = len(self.edges) - self.A.n + 1
        if r == 0:
            self.pivots, self._inv = [], []
            if dim != 0:
                raise AnnulusError("cycle space is not spanned by holes")
            return
        if dim != r:
            raise AnnulusError(f"cycle space has dimension {dim}, hole basis has {r} elements")
        # choose r independent columns by elimination over the rationals
        m = [[Fraction(x) for x in row] for row in rows]
        pivots = []
        row_i = 0
        work = [list(row) for row in m]
        for col in range(len(self.edges)):
            piv = next((i for i in range(row_i, r) if work[i][col] != 0), None)
            if piv is None:
                continue
            work[row_i], work[piv] = work[piv], work[row_i]
            for i in range(r):
                if i != row_i and work[i][col] != 0:
                    f = work[i][col] / work[row_i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[row_i])]
            pivots.append(col)
            row_i += 1
            if row_i == r:
                break
        if len(pivots) != r:
            raise AnnulusError("hole basis is not independent")
        self.pivots = pivots
        # x . B[:, pivots] = c[pivots]  ->  x = c[pivots] . inv(B[:, pivots])
        sub = [[m[i][c] for c in pivots] for i in range(r)]
        self._inv = _invert(sub)

    def coordinates(self, chain):
        """Coefficients of ``chain`` on the small holes and on ℓ (last)."""
        r = len(self.basis)
        cp = [chain[c] for c in self.pivots]
        x = [sum(cp[j] * self._inv[j][i] for j in range(r)) for i in range(r)]
        if any(v.denominator != 1 for v in x):
            raise NotACycle("chain is not an integral cycle")
        x = [int(v) for v in x]
        total = [0] * len(self.edges)
        for xi, row in zip(x, self.basis):
            if xi:
                for e, c in enumerate(row):
                    if c:
                        total[e] += xi * c
        if total != list(chain):
            raise NotACycle("chain is not in the span of the hole basis")
        return x

    def hom_values(self, chain):
        x = self.coordinates(chain)
        if self.large is None:
            phi, nu = 0, sum(x)
        else:
            phi, nu = x[-1], sum(x[:-1])
        sign = (-1) ** (nu % 2)
        if (self.k + 1) % 2 and phi % 2:
            sign = -sign
        return Invariants(phi, nu, sign)

    # -- chains from tilings --------------------------------------------------
    def tiling_chain(self, tiling):
        c = [0] * len(self.edges)
        for e in tiling:
            c[e] += 1
        return c

    def difference(self, t, t0):
        c = [0] * len(self.edges)
        for e in t:
            c[e] += 1
        for e in t0:
            c[e] -= 1
        return c

    def tiling_invariants(self, t, t0):
        return self.hom_values(self.difference(t, t0))

    # -- geometric cross-check -----------------------------------------------
    def geometric_values(self, chain):
        """Invariants from a decomposition into simple circuits.

        Each circuit is placed against the faces by flood fill; flux is the
        coefficient of ℓ, volume the signed count of enclosed small holes and
        the sign is ``(-1)^(b+w+k+1)`` with b, w the enclosed squares.
        """
        phi = nu = 0
        sign = 1
        for circ in decompose_circuits(self, chain):
            f, v, s = self._circuit_values(circ)
            phi += f
            nu += v
            sign *= s
        return Invariants(phi, nu, sign)

    def _circuit_values(self, darts):
        A = self.A
        on = {self.dart_edge(d) for d in darts}
        left = {self.face_of_dart[d] for d in darts}
        todo = list(left)
        while todo:
            fi = todo.pop()
            for d in self.faces[fi].darts:
                if self.dart_edge(d) in on:
                    continue
                t, j = A.glue[d[0]][d[1]]
                g = self.face_of_dart[(t, j)]
                if g not in left:
                    left.add(g)
                    todo.append(g)
        outer_face = next(i for i, f in enumerate(self.faces) if f.kind == "outer")
        if outer_face in left:
            inside = set(range(len(self.faces))) - left
            coeff = -1
        else:
            inside = left
            coeff = 1
        large_i = self.faces.index(self.large) if self.large is not None else -1
        phi = coeff if large_i in inside else 0
        nu = coeff * sum(1 for i in inside if self.faces[i].kind == "small")
        on_squares = {d[0] for d in darts}
        b = w = 0
        for sq in range(A.n):
            if sq in on_squares:
                continue
            fs = {self.face_of_dart[(sq, k)] for k in range(4) if A.glue[sq][k] is not None}
            if fs and fs <= inside:
                if A.colors[sq] == BLACK:
                    b += 1
                else:
                    w += 1
        k = len(darts) // 2
        sign = (-1) ** ((b + w + k + 1) % 2)
        return phi, nu, sign


def decompose_circuits(data, chain):
    """Split a cycle with coefficients in {-1, 0, 1} into simple circuits of darts."""
    A = data.A
    out = {}
    for e, c in enumerate(chain):
        if c == 0:
            continue
        if abs(c) != 1:
            raise ValueError("circuit decomposition needs coefficients in {-1, 0, 1}")
        ed = data.edges[e]
        dart = (ed.black, ed.bside) if c > 0 else (ed.white, ed.wside)
        if dart[0] in out:
            raise ValueError("chain is not a disjoint union of circuits")
        out[dart[0]] = dart
    circuits = []
    used = set()
    for start in sorted(out):
        if start in used:
            continue
        darts = []
        cur = start
        while cur not in used:
            used.add(cur)
            d = out.get(cur)
            if d is None:
                raise NotACycle("chain is not a cycle")
            darts.append(d)
            cur = A.glue[d[0]][d[1]][0]
        if cur != start:
            raise NotACycle("chain is not a union of circuits")
        circuits.append(darts)
    return circuits


def _invert(m):
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


_CACHE = {}


def adjacency_data(A):
    key = id(A)
    hit = _CACHE.get(key)
    if hit is not None and hit.A is A:
        return hit
    data = AdjacencyData(A)
    if len(_CACHE) > 256:
        _CACHE.clear()
    _CACHE[key] = data
    return data


def hole_basis(A):
    """(small hole chains, large hole chain, k) with ``2k`` the length of ℓ."""
    if not A.is_annulus:
        raise NotAnAnnulus("the hole basis is defined for annuli")
    data = adjacency_data(A)
    return [data.face_chain(f) for f in data.small], data.face_chain(data.large), data.k


def hom_values(A, chain):
    return adjacency_data(A).hom_values(chain)


def tiling_invariants(A, t, t0):
    return adjacency_data(A).tiling_invariants(t, t0)


def flux_across_cut(A, tiling, cut):
    """Signed count of domino arrows crossing a cut (black on the left counts +1)."""
    edges = A.adjacency_edges
    used = {}
    for e in tiling:
        ed = edges[e]
        used[(ed.black, ed.bside)] = True
        used[(ed.white, ed.wside)] = True
    total = 0
    for s, k in cut.sides:
        if (s, k) in used:
            total += 1 if A.colors[s] == BLACK else -1
    return total


def permutation_sign(A, t, t0):
    """Parity of ``beta_t o beta_t0^-1`` as a permutation of the white squares."""
    edges = A.adjacency_edges
    bt = {edges[e].black: edges[e].white for e in t}
    bt0 = {edges[e].black: edges[e].white for e in t0}
    perm = {bt0[b]: bt[b] for b in bt}
    return _perm_sign(perm)


def _perm_sign(perm):
    seen = set()
    sign = 1
    for start in perm:
        if start in seen:
            continue
        n = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = perm[cur]
            n += 1
        if n % 2 == 0:
            sign = -sign
    return sign


__all__ = [
    "Invariants",
    "AdjacencyData",
    "adjacency_data",
    "hole_basis",
    "hom_values",
    "tiling_invariants",
    "flux_across_cut",
    "permutation_sign",
    "decompose_circuits",
]
