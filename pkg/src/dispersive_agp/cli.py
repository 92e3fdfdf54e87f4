"""Command line front end: gen, solve, verify, render, bench.

Exit codes: 0 ok, 1 verification failed, 2 usage or input error,
3 internal error.  Numeric options accept "a/b".
"""
from __future__ import annotations

import argparse
import multiprocessing as mp
import os
import sys
import time
from pathlib import Path

from . import dp, exact, instances, worstcase
from .geom import OfficePolygon, as_coord, format_coord
from .witness import INF, verify_solution

TIMEOUT_ENV = "DAGP_TIMEOUT"
METHODS = ("sat", "dp", "wc3", "wc2")


class UsageError(Exception):
    pass


def _coord(text):
    try:
        return as_coord(text)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _fmt(d) -> str:
    return INF if d == INF else str(format_coord(d))


def _office(inst, method) -> OfficePolygon:
    if not isinstance(inst, OfficePolygon):
        raise UsageError(f"method {method} needs an office instance (rooms and corridors)")
    return inst


def run_method(inst, method: str):
    if method == "sat":
        return exact.max_dispersion(instances.as_polygon(inst))
    if method == "dp":
        return dp.max_dispersion_dp(_office(inst, method))
    if method == "wc3":
        return worstcase.wc3(_office(inst, method))
    if method == "wc2":
        return worstcase.wc2(_office(inst, method))
    raise UsageError(f"unknown method {method}")


# --- verbs


def cmd_gen(a):
    if a.kind == "office":
        cfg = instances.GenConfig(seed=a.seed, n_rooms=a.rooms, allow_holes=a.holes,
                                  independent=a.independent)
        inst = instances.gen_random_office(cfg)
        if a.rational:
            inst = instances.rationalize_office(inst, a.seed)
    elif a.kind == "packing":
        inst = instances.gen_packing(a.c, a.eps, a.tau)
    elif a.kind == "ratio":
        inst = instances.gen_ratio_family(a.k)
    elif a.kind == "fig-disp3":
        inst = instances.gen_fig_disp3()
    else:
        inst = instances.gen_random_orthogonal(a.n, seed=a.seed, holes=a.holes)
    instances.write_instance(a.output, inst)
    print(f"wrote {a.output} ({instances.as_polygon(inst).n} vertices)")
    return 0


def cmd_solve(a):
    inst = instances.read_instance(a.file)
    sol = run_method(inst, a.method)
    if a.output:
        sol.write(a.output)
    print(_fmt(sol.dispersion))
    return 0


def cmd_verify(a):
    inst = instances.read_instance(a.file)
    sol = exact.Solution.read(a.solution)
    rep = verify_solution(instances.as_polygon(inst), sol.guards, sol.dispersion)
    if rep.ok:
        print(f"ok: {len(sol.guards)} guards, dispersion {_fmt(rep.dispersion)}")
        return 0
    for e in rep.errors:
        print(e)
    return 1


def cmd_render(a):
    inst = instances.read_instance(a.file)
    sol = exact.Solution.read(a.solution) if a.solution else None
    Path(a.output).write_text(render_svg(inst, sol))
    print(f"wrote {a.output}")
    return 0


def _bench_worker(path, method, q):
    try:
        inst = instances.read_instance(path)
        t = time.perf_counter()
        sol = run_method(inst, method)
        q.put(("ok", _fmt(sol.dispersion), time.perf_counter() - t))
    except Exception as e:  # reported in the table
        q.put(("error", f"{type(e).__name__}: {e}", 0.0))


def bench(paths, method: str, timeout: float):
    """Rows (name, vertices, optimum, seconds, status), each instance in its own process."""
    rows = []
    ctx = mp.get_context("fork" if "fork" in mp.get_all_start_methods() else "spawn")
    for path in paths:
        n = instances.as_polygon(instances.read_instance(path)).n
        q = ctx.Queue()
        proc = ctx.Process(target=_bench_worker, args=(str(path), method, q))
        t = time.perf_counter()
        proc.start()
        proc.join(timeout)
        if proc.is_alive():
            proc.terminate()
            proc.join()
            rows.append((Path(path).name, n, "-", time.perf_counter() - t, "timeout"))
            continue
        status, value, secs = q.get() if not q.empty() else ("error", "worker died", 0.0)
        if status == "ok":
            rows.append((Path(path).name, n, value, secs, "ok"))
        else:
            rows.append((Path(path).name, n, "-", secs, value))
    return rows


def format_table(rows) -> str:
    head = ("instance", "n", "optimum", "seconds", "status")
    body = [(r[0], str(r[1]), r[2], f"{r[3]:.2f}", r[4]) for r in rows]
    widths = [max(len(x[i]) for x in [head] + body) for i in range(5)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    return "\n".join([line(head), line(["-" * w for w in widths])] + [line(b) for b in body])


def cmd_bench(a):
    d = Path(a.dir)
    paths = sorted(d.glob("*.json")) if d.is_dir() else [d]
    if not paths:
        raise UsageError(f"no *.json instances in {a.dir}")
    timeout = a.timeout if a.timeout is not None else float(os.environ.get(TIMEOUT_ENV, "60"))
    rows = bench(paths, a.method, timeout)
    print(format_table(rows))
    return 0 if all(r[4] == "ok" for r in rows) else 1


# --- drawing


def render_svg(inst, sol=None, size: int = 640) -> str:
    poly = instances.as_polygon(inst)
    (x0, y0), (x1, y1) = poly.bbox
    span = max(x1 - x0, y1 - y0) or 1
    s = (size - 40) / float(span)

    def X(v):
        return 20 + float(v - x0) * s

    def Y(v):
        return 20 + float(y1 - v) * s

    w, h = X(x1) + 20, Y(y0) + 20
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}">',
           '<rect width="100%" height="100%" fill="white"/>']
    if isinstance(inst, OfficePolygon):
        for rects, fill in ((inst.rooms, "#dde6f0"), ([c.rect for c in inst.corridors], "#f3e3c3")):
            for r in rects:
                out.append(f'<rect x="{X(r.lo.x):.2f}" y="{Y(r.hi.y):.2f}" width="{float(r.width) * s:.2f}" '
                           f'height="{float(r.height) * s:.2f}" fill="{fill}"/>')
    d = " ".join("M" + " L".join(f"{X(p.x):.2f},{Y(p.y):.2f}" for p in ring) + " Z" for ring in poly.rings)
    fill = "none" if isinstance(inst, OfficePolygon) else "#eeeeee"
    out.append(f'<path d="{d}" fill="{fill}" fill-rule="evenodd" stroke="black" stroke-width="1.5"/>')
    if sol is not None and sol.guards:
        from .witness import closest_pair
        from .geodesic import all_pairs_vertex_dist
        pair = None
        if len(sol.guards) > 1:
            dists = all_pairs_vertex_dist(poly)
            pair = closest_pair(dists, [poly.vertex_index[g] for g in sol.guards])
        if pair:
            a, b = pair
            out.append(f'<line x1="{X(a.x):.2f}" y1="{Y(a.y):.2f}" x2="{X(b.x):.2f}" y2="{Y(b.y):.2f}" '
                       'stroke="crimson" stroke-width="2" stroke-dasharray="6 4"/>')
        for g in sol.guards:
            hot = pair is not None and g in pair
            out.append(f'<circle cx="{X(g.x):.2f}" cy="{Y(g.y):.2f}" r="5" '
                       f'fill="{"crimson" if hot else "#1f4e9c"}"/>')
        out.append(f'<text x="20" y="14" font-family="sans-serif" font-size="12">'
                   f'{len(sol.guards)} guards, dispersion {_fmt(sol.dispersion)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dagp", description="Dispersive vertex guards in orthogonal polygons.")
    sub = ap.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="write an instance")
    g.add_argument("kind", choices=("office", "packing", "ratio", "fig-disp3", "orthogonal"))
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rooms", type=int, default=5)
    g.add_argument("--holes", action="store_true")
    g.add_argument("--independent", action="store_true")
    g.add_argument("--rational", action="store_true", help="move coordinates off the integer grid")
    g.add_argument("--c", type=int, default=11, help="packing corridor count")
    g.add_argument("--eps", type=_coord, default=as_coord("1/2"))
    g.add_argument("--tau", type=_coord, default=as_coord("1/8"))
    g.add_argument("--k", type=int, default=2, help="ratio family parameter")
    g.add_argument("--n", type=int, default=100, help="vertex count for orthogonal")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="compute a guard set")
    s.add_argument("file")
    s.add_argument("--method", choices=METHODS, default="sat")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("file")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw an instance as SVG")
    r.add_argument("file")
    r.add_argument("solution", nargs="?")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="solve a directory of instances and tabulate")
    b.add_argument("dir")
    b.add_argument("--method", choices=METHODS, default="sat")
    b.add_argument("--timeout", type=float, default=None,
                   help=f"seconds per instance (default ${TIMEOUT_ENV} or 60)")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return a.func(a)
    except (UsageError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
