"""Command-line interface: ``annulus <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .corpus import build_corpus, ring_cells
from .errors import AnnulusError, CapExceeded
from .heights import flip_components, flux_classes
from .homology import adjacency_data
from .kasteleyn import cover_polynomial, flux_polynomial
from .laurent import canonical
from .oracle import DEFAULT_CAP, enumerate_tilings
from .quad_surface import build_from_grid, cut_open, find_walls, load_surface, require_cut, to_gluing_text
from .track import bi_active_submatrix, connection_matrix, eval_matrix, index_graph, trace_polynomial
from .verify import CHECKS, verify_all


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=False))


def _poly(P):
    return {"terms": P.to_json(), "text": str(P), "canonical": str(canonical(P)) if P else "0"}


def _parse_q(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return float(text)


def _number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, complex):
        return [x.real, x.imag] if x.imag else x.real
    return x


def _load(path):
    return load_surface(Path(path).read_text())


def _annulus(args):
    S = _load(args.file)
    if not S.is_annulus:
        raise AnnulusError(f"surface is a {S.kind}, not an annulus")
    return S


# ---------------------------------------------------------------------------


def cmd_load(args):
    S = _load(args.file)
    out = {
        "squares": S.n,
        "kind": S.kind,
        "euler": S.euler,
        "colors": list(S.color_counts()),
        "balanced": S.is_balanced(),
        "interior_vertices": len(S.interior_vertices()),
        "boundary_curvature": S.total_boundary_curvature(),
    }
    if S.is_annulus:
        out["component_curvature"] = [S.component_curvature(c) for c in S.boundary_components]
        out["cut_length"] = len(require_cut(S))
        out["walls"] = len(find_walls(S))
    if args.gluing:
        out["gluing"] = to_gluing_text(S)
    _emit(out)
    return 0


def cmd_phi(args):
    A = _annulus(args)
    engine = "interp" if args.engine == "interp" else "bareiss"
    if args.cover > 1:
        P = cover_polynomial(A, args.cover, engine=engine)
    else:
        P = flux_polynomial(A, engine=engine)
    _emit({"cover": args.cover, "engine": args.engine, "phi": _poly(P)})
    return 0


def cmd_transfer(args):
    A = _annulus(args)
    seg = cut_open(A, require_cut(A))
    C = connection_matrix(seg, cap=args.cap)
    fluxes = C.fluxes() if args.flux is None else [args.flux]
    out = {"shift": C.shift, "trace": _poly(trace_polynomial(C)), "blocks": {}}
    for f in fluxes:
        if f not in C.blocks:
            raise AnnulusError(f"no block with flux {f}")
        rows, cols, mat = C.blocks[f]
        g = index_graph(C, f)
        _, keep = bi_active_submatrix(C, g)
        block = {
            "rows": [r.bits for r in rows],
            "cols": [c.bits for c in cols],
            "left_active": g.left_active,
            "right_active": g.right_active,
            "bi_active": keep,
        }
        if args.q is None:
            block["matrix"] = [[x.to_json() for x in row] for row in mat]
        else:
            q = _parse_q(args.q)
            block["q"] = args.q
            block["matrix"] = eval_matrix(mat, float(q)).tolist() if mat else []
            block["matrix"] = [[_number(v) for v in row] for row in block["matrix"]]
        out["blocks"][str(f)] = block
    _emit(out)
    return 0


def cmd_flips(args):
    A = _annulus(args)
    classes = flux_classes(A, tilings=enumerate_tilings(A, cap=args.cap))
    fluxes = sorted(classes) if args.flux is None else [args.flux]
    out = {}
    for f in fluxes:
        ts = classes.get(f, [])
        comps = flip_components(A, ts)
        out[str(f)] = {"tilings": len(ts), "components": len(comps), "sizes": sorted((len(c) for c in comps), reverse=True)}
    _emit({"flux_classes": out})
    return 0


def cmd_enumerate(args):
    S = _load(args.file)
    ts = enumerate_tilings(S, cap=args.cap, limit=args.limit)
    edges = S.adjacency_edges
    rows = []
    data = adjacency_data(S) if S.is_annulus or S.is_disk else None
    for t in ts:
        row = {"dominoes": sorted([edges[i].black, edges[i].white] for i in t)}
        if data is not None and ts:
            inv = data.tiling_invariants(t, ts[0])
            row.update({"flux": inv.flux, "volume": inv.volume, "sign": inv.sign})
        rows.append(row)
    _emit({"count": len(ts), "tilings": rows})
    return 0


def cmd_verify(args):
    A = _annulus(args)
    only = None if args.all or not args.only else set(args.only)
    verdicts = verify_all(A, only=only)
    _emit({"verdicts": [v.to_json() for v in verdicts]})
    return 1 if any(v.ok is False for v in verdicts) else 0


def cmd_corpus(args):
    corpus = build_corpus(args.seed)
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    failed = False
    rows = []
    for e in corpus:
        A = e.surface
        row = {"name": e.name, "kind": e.kind, "squares": A.n}
        if out_dir:
            (out_dir / f"{e.name}.glu").write_text(to_gluing_text(A))
        if args.verify:
            vs = verify_all(A)
            row["verdicts"] = {v.name: v.status for v in vs}
            failed |= any(v.ok is False for v in vs)
        else:
            row["phi"] = str(canonical(flux_polynomial(A)))
        rows.append(row)
    if args.json:
        _emit(rows)
    else:
        width = max(len(r["name"]) for r in rows)
        for r in rows:
            tail = " ".join(f"{k}:{v}" for k, v in r["verdicts"].items()) if "verdicts" in r else r["phi"]
            print(f"{r['name']:<{width}}  {r['kind']:<20} {r['squares']:>3}  {tail}")
    return 1 if failed else 0


def bench_family(max_len):
    """Width-2 grid rings (n + 4) x 6 with an n x 2 hole."""
    for n in range(1, max_len + 1):
        yield f"ring{n + 4}x6", build_from_grid(ring_cells(n + 4, 6, 2, 2, n, 2))


def cmd_bench(args):
    writer = csv.writer(sys.stdout if args.out is None else open(args.out, "w", newline=""))
    writer.writerow(["name", "squares", "engine", "seconds", "terms"])
    for name, A in bench_family(args.max):
        if not A.is_balanced():
            continue
        cut = require_cut(A)
        for engine in args.engines:
            t = time.perf_counter()
            if engine == "transfer":
                P = trace_polynomial(connection_matrix(cut_open(A, cut), cap=args.cap))
            else:
                P = flux_polynomial(A, cut, engine="interp" if engine == "interp" else "bareiss")
            dt = time.perf_counter() - t
            writer.writerow([name, A.n, engine, f"{dt:.4f}", len(P)])
            sys.stdout.flush()
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="annulus", description="q-count domino tilings of quadriculated annuli")
    ap.add_argument("--cap", type=int, default=None, help="square-count cap for enumeration")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("load", help="validate a region or gluing file")
    p.add_argument("file")
    p.add_argument("--gluing", action="store_true", help="also print the gluing form")
    p.set_defaults(fn=cmd_load)

    p = sub.add_parser("phi", help="q-flux polynomial by determinant")
    p.add_argument("file")
    p.add_argument("--cover", type=int, default=1)
    p.add_argument("--engine", choices=["det", "interp"], default="det")
    p.set_defaults(fn=cmd_phi)

    p = sub.add_parser("transfer", help="connection-matrix blocks")
    p.add_argument("file")
    p.add_argument("--flux", type=int, default=None)
    p.add_argument("--q", default=None, help="evaluate entries at this q")
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser("flips", help="flip components of each flux class")
    p.add_argument("file")
    p.add_argument("--flux", type=int, default=None)
    p.set_defaults(fn=cmd_flips)

    p = sub.add_parser("enumerate", help="list tilings with their invariants")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="run theorem validators")
    p.add_argument("file")
    p.add_argument("--all", action="store_true")
    p.add_argument("--only", nargs="*", default=None, choices=list(CHECKS))
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("corpus", help="generate (and optionally verify) the seeded corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="directory for gluing files")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("bench", help="time determinant and transfer engines (CSV)")
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--engines", nargs="*", default=["det", "interp", "transfer"])
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cap is None:
        args.cap = DEFAULT_CAP if args.command not in ("transfer", "bench") else 200
    try:
        return args.fn(args)
    except CapExceeded as exc:
        print(f"error: {exc} (raise --cap)", file=sys.stderr)
        return 2
    except AnnulusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
