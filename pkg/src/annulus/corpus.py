"""Seeded corpora of balanced annuli and balanced disks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import AnnulusError
from .oracle import iter_tilings
from .quad_surface import build_from_grid, build_ladder, close_up, grid_segment, isomorphic, juxtapose


@dataclass
class CorpusEntry:
    name: str
    kind: str  # grid-ring, random-grid-annulus, ladder, juxtaposed
    surface: object
    walls: int | None = None


def rect(w, h, x0=0, y0=0):
    return [(x0 + x, y0 + y) for y in range(h) for x in range(w)]


def ring_cells(w, h, hx, hy, hw, hh):
    hole = set(rect(hw, hh, hx, hy))
    return [c for c in rect(w, h) if c not in hole]


GRID_RINGS = [
    ("ring3x3", (3, 3, 1, 1, 1, 1)),
    ("ring4x3", (4, 3, 1, 1, 2, 1)),
    ("ring4x4", (4, 4, 1, 1, 2, 2)),
    ("ring5x4", (5, 4, 1, 1, 3, 2)),
    ("ring5x5", (5, 5, 1, 1, 3, 3)),
    ("ring6x4", (6, 4, 2, 1, 2, 2)),
    ("ring5x5c", (5, 5, 2, 2, 1, 1)),
    ("ring6x5", (6, 5, 2, 2, 2, 1)),
    ("ring6x6", (6, 6, 2, 2, 2, 2)),
]

LADDERS = [(2, 2), (2, 3), (2, 4), (4, 2), (4, 3), (6, 2)]


def _has_tiling(S):
    for _ in iter_tilings(S, cap=10 ** 6):
        return True
    return False


def _acceptable(S, need_annulus=True):
    if need_annulus and not S.is_annulus:
        return False
    if not need_annulus and not S.is_disk:
        return False
    return S.is_balanced() and _has_tiling(S)


def grid_rings():
    out = []
    for name, args in GRID_RINGS:
        S = build_from_grid(ring_cells(*args))
        out.append(CorpusEntry(name, "grid-ring", S))
    return out


def ladders():
    out = []
    for d, L in LADDERS:
        out.append(CorpusEntry(f"ladder{d}x{L}", "ladder", build_ladder(d, L), walls=d // 2 + 1))
    return out


def random_grid_annulus(rng, max_squares=28, tries=500):
    """Rectangle with a rectangular hole, then random cells shaved off the rim."""
    for _ in range(tries):
        w = rng.randint(3, 7)
        h = rng.randint(3, 6)
        hw = rng.randint(1, max(1, w - 2))
        hh = rng.randint(1, max(1, h - 2))
        hx = rng.randint(1, w - hw - 1)
        hy = rng.randint(1, h - hh - 1)
        cells = set(ring_cells(w, h, hx, hy, hw, hh))
        hole = set(rect(hw, hh, hx, hy))
        rim = [c for c in sorted(cells) if c[0] in (0, w - 1) or c[1] in (0, h - 1)]
        for c in rim:
            if rng.random() < 0.25:
                # never touch the hole, so the hole stays a hole
                x, y = c
                near = any((x + dx, y + dy) in hole for dx in (-1, 0, 1) for dy in (-1, 0, 1))
                if not near:
                    cells.discard(c)
        if len(cells) > max_squares or len(cells) < 8:
            continue
        try:
            S = build_from_grid(sorted(cells))
        except AnnulusError:
            continue
        if _acceptable(S):
            return S
    raise AnnulusError("could not generate a random annulus")


def random_strip_segment(rng, width, height):
    """Grid strip of even width with random notches in the top and bottom rows."""
    cells = set(rect(width, height))
    for x in range(1, width - 1):
        if height > 2 and rng.random() < 0.3:
            cells.discard((x, height - 1))
        if height > 2 and rng.random() < 0.3:
            cells.discard((x, 0))
    col0 = sorted(c for c in cells if c[0] == 0)
    col1 = sorted(c for c in cells if c[0] == width - 1)
    return grid_segment(sorted(cells), [(0, y) for _, y in col0], [(width - 1, y) for _, y in col1])


def juxtaposed_annulus(rng, max_squares=28, tries=200):
    for _ in range(tries):
        height = rng.randint(2, 3)
        pieces = rng.randint(2, 3)
        segs = [random_strip_segment(rng, rng.choice([2, 2, 4]), height) for _ in range(pieces)]
        total = sum(s.surface.n for s in segs)
        if total > max_squares:
            continue
        try:
            seg = segs[0]
            for s in segs[1:]:
                seg = juxtapose(seg, s)
            A = close_up(seg)
        except AnnulusError:
            continue
        if _acceptable(A):
            return A
    raise AnnulusError("could not generate a juxtaposed annulus")


def _is_new(S, seen):
    return not any(isomorphic(S, T) for T in seen)


def build_corpus(seed=0, n_random=5, n_juxtaposed=4, max_squares=36):
    """At least 20 balanced annuli with tilings, reproducible from ``seed``.

    Random and juxtaposed entries are pairwise non-isomorphic.
    """
    rng = random.Random(seed)
    out = grid_rings() + ladders()
    seen = []
    while len(seen) < n_random:
        S = random_grid_annulus(rng, max_squares)
        if _is_new(S, seen):
            seen.append(S)
            out.append(CorpusEntry(f"random{len(seen) - 1}", "random-grid-annulus", S))
    seen = []
    while len(seen) < n_juxtaposed:
        S = juxtaposed_annulus(rng, max_squares)
        if _is_new(S, seen):
            seen.append(S)
            out.append(CorpusEntry(f"juxtaposed{len(seen) - 1}", "juxtaposed", S))
    return out


def random_disk(rng, max_cells=36, tries=1000):
    """Balanced simply connected grid region grown cell by cell."""
    for _ in range(tries):
        target = rng.randrange(2, max_cells + 1, 2)
        cells = {(0, 0)}
        while len(cells) < target:
            x, y = rng.choice(sorted(cells))
            dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
            cells.add((x + dx, y + dy))
        try:
            D = build_from_grid(sorted(cells))
        except AnnulusError:
            continue
        if D.is_disk and D.is_balanced():
            return D
    raise AnnulusError("could not generate a balanced disk")


def random_disks(seed=0, count=100, max_cells=36):
    rng = random.Random(seed)
    return [random_disk(rng, max_cells) for _ in range(count)]


__all__ = [
    "CorpusEntry",
    "build_corpus",
    "grid_rings",
    "ladders",
    "random_grid_annulus",
    "random_strip_segment",
    "juxtaposed_annulus",
    "random_disk",
    "random_disks",
    "ring_cells",
    "rect",
]
