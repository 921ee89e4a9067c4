"""Command line entry point: ``hfk11 compute|render|verify-paper|scan``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import diagram as diagram_mod
from .diagram import RasmussenParams, family_params, from_record
from .errors import ConsistencyError, DiagramError, HFKError, ParameterError
from .floer import enumerate_bigons
from .geometry import realize
from .invariants import InvariantReport, run_pipeline

SCHEMA_VERSION = 1
SCAN_CEILING = 64

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


# --- report document --------------------------------------------------------


def report_document(report: InvariantReport, d=None) -> dict:
    diffs = {
        mode: [list(e) for e in diff.entries] for mode, diff in sorted(report.differentials.items())
    }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "parameters": list(report.params) if report.params else None,
        "family_index": report.family_index,
        "generator_count": report.generator_count,
        "generators": [
            {"index": g.index, "alexander": g.alexander, "maslov": g.maslov} for g in report.gradings
        ],
        "differentials": diffs,
        "hfk": [[a, m, c] for (a, m), c in sorted(report.hfk.items())],
        "poincare": [[m, a, c] for (m, a), c in sorted(report.poincare.items())],
        "alexander": [[a, c] for a, c in sorted(report.alexander.items())],
        "seifert_genus": report.seifert_genus,
        "tau": report.tau,
        "verdicts": {
            "g4_lower_bound": report.g4_lower_bound,
            "conway_trivial": report.conway_trivial,
            "topologically_slice_certified": report.topologically_slice_certified,
            "smoothly_slice_obstructed": report.smoothly_slice_obstructed,
        },
        "notes": report.notes,
    }
    if d is not None:
        doc["diagram"] = d.to_record()
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _failure(exc) -> dict:
    if isinstance(exc, ConsistencyError):
        return {"error": "consistency", "invariant": exc.invariant, "message": str(exc)}
    if isinstance(exc, DiagramError):
        return {"error": "invalid-input", "code": exc.code, "message": str(exc)}
    return {"error": "invalid-input", "message": str(exc)}


def _exit_code(exc) -> int:
    return EXIT_INTERNAL if isinstance(exc, ConsistencyError) else EXIT_INPUT


def _parse_params(text):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParameterError(f"expected four integers p,q,r,s, got {text!r}")
    if len(vals) != 4:
        raise ParameterError(f"expected four integers p,q,r,s, got {text!r}")
    return RasmussenParams(*vals)


def _source(args):
    """The diagram (or parameters) selected by --family/--params/--matchings."""
    if args.family is not None:
        return family_params(args.family)
    if args.params is not None:
        return _parse_params(args.params)
    try:
        record = json.loads(Path(args.matchings).read_text())
    except (OSError, ValueError) as exc:
        raise ParameterError(f"cannot read matchings file: {exc}")
    return from_record(record)


def _diagram(source):
    if isinstance(source, RasmussenParams):
        return diagram_mod.decode(source)
    return source


def _add_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--family", type=int, metavar="N", help="member K_N of the slice family")
    g.add_argument("--params", metavar="P,Q,R,S", help="Rasmussen parameters")
    g.add_argument("--matchings", metavar="PATH", help="JSON file with p, bottom, top, through")


def _write(text, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# --- compute ----------------------------------------------------------------


def cmd_compute(args) -> int:
    start = time.perf_counter()
    try:
        d = _diagram(_source(args))
        result = run_pipeline(d, window=args.window)
    except HFKError as exc:
        sys.stderr.write(dumps(_failure(exc)))
        return _exit_code(exc)
    _write(dumps(report_document(result.report, result.diagram)), args.output)
    if args.timing:
        side = {"seconds": round(time.perf_counter() - start, 6)}
        Path(args.timing).write_text(dumps(side))
    return EXIT_OK


# --- render -----------------------------------------------------------------


def _svg_path(points, sx, sy, height, close=False):
    parts = [f"{float(x) * sx:.3f},{height - float(y) * sy:.3f}" for x, y in points]
    return "M" + " L".join(parts) + (" Z" if close else "")


def render_svg(real, bigon=None, slot_width=36.0, height=360.0) -> str:
    p = real.p
    margin = 30.0
    width = p * slot_width
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * margin:.0f}" '
        f'height="{height + 2 * margin:.0f}" viewBox="{-margin} {-margin} '
        f'{width + 2 * margin} {height + 2 * margin}">',
        '<defs><clipPath id="box">'
        f'<rect x="0" y="0" width="{width}" height="{height}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="none" stroke="#888"/>',
    ]
    if bigon is not None:
        poly = bigon.witness.polygon()
        xs = [x for x, _ in poly]
        ys = [y for _, y in poly]
        shapes = []
        for k in range(int(min(xs) // p) - 1, int(max(xs) // p) + 2):
            for j in range(int(min(ys)) - 1, int(max(ys)) + 2):
                moved = [(x - k * p, y - j) for x, y in poly]
                shapes.append(_svg_path(moved, slot_width, height, height, close=True))
        out.append(
            f'<g clip-path="url(#box)"><path d="{" ".join(shapes)}" fill="#f4a261" '
            'fill-opacity="0.45" fill-rule="nonzero" stroke="none"/></g>'
        )
    out.append(f'<line x1="0" y1="{height}" x2="{width}" y2="{height}" stroke="#c0392b" '
               'stroke-width="2"/>')
    strands = []
    for arc in real.arcs:
        xs = [x for x, _ in arc.points]
        for k in range(int(min(xs) // p) - 1, int(max(xs) // p) + 2):
            moved = [(x - k * p, y) for x, y in arc.points]
            strands.append(_svg_path(moved, slot_width, height, height))
    out.append(
        f'<g clip-path="url(#box)"><path d="{" ".join(strands)}" fill="none" '
        'stroke="#1f4e79" stroke-width="1.5"/></g>'
    )
    for i in range(1, p + 1):
        x = (i - 0.5) * slot_width
        out.append(f'<text x="{x:.2f}" y="{height + 16}" font-size="10" '
                   f'text-anchor="middle">x{i}</text>')
    for (x, y), fill, name in ((real.w_point, "black", "w"), (real.z_point, "white", "z")):
        cx, cy = float(x) * slot_width, height - float(y) * height
        for shift in (0, p) if x == 0 else (0,):
            out.append(f'<circle class="{name}" cx="{cx + shift * slot_width:.3f}" cy="{cy:.3f}" '
                       f'r="4" fill="{fill}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _find_bigon(bigons, ident):
    try:
        src, dst = (int(x) for x in ident.split("-"))
    except ValueError:
        raise ParameterError(f"bigon id must look like 12-13, got {ident!r}")
    hits = [g for g in bigons if (g.source, g.target) == (src, dst)]
    if not hits:
        raise ParameterError(f"no bigon from x_{src} to x_{dst}")
    return hits[0]


def cmd_render(args) -> int:
    try:
        d = _diagram(_source(args))
        real = realize(d)
        bigon = _find_bigon(enumerate_bigons(real), args.bigon) if args.bigon else None
    except HFKError as exc:
        sys.stderr.write(dumps(_failure(exc)))
        return _exit_code(exc)
    _write(render_svg(real, bigon), args.output)
    return EXIT_OK


# --- verify-paper -------------------------------------------------------------


def reference_checks(max_n: int = 3, tau_max_n: int = 2):
    """Yield (name, passed) for every reference comparison up to K_max_n."""
    from .floer import differential
    from .reference import (
        CFK_K0,
        HAT_S3_K0,
        family_alexander,
        family_maslov,
        family_poincare,
    )

    polys = []
    for n in range(max_n + 1):
        params = family_params(n)
        d = diagram_mod.decode(params)
        res = run_pipeline(d)
        rep = res.report
        p = 64 * n + 31
        yield f"K_{n} parameters", params.as_tuple() == (p, 24 * n + 12, 16 * n + 6, 32 * n + 18)
        yield f"K_{n} poincare polynomial", rep.poincare == family_poincare(n)
        yield f"K_{n} total rank {p}", sum(rep.hfk.values()) == p
        yield f"K_{n} hat-knot differential vanishes", not rep.differentials["hat-knot"].entries
        yield f"K_{n} alexander gradings", [g.alexander for g in rep.gradings] == family_alexander(n)
        yield f"K_{n} maslov gradings", [g.maslov for g in rep.gradings] == family_maslov(n)
        yield f"K_{n} alexander polynomial 1", rep.alexander == {0: 1}
        yield f"K_{n} seifert genus 2", rep.seifert_genus == 2
        yield f"K_{n} topologically slice", rep.topologically_slice_certified
        if n <= tau_max_n:
            yield f"K_{n} tau 1", rep.tau == 1
            yield f"K_{n} smoothly slice obstructed", rep.smoothly_slice_obstructed
            yield f"K_{n} g4 lower bound 1", rep.g4_lower_bound == 1
        if n == 0:
            full = differential(res.bigons, "full", p).rows()
            want = {k: sorted(row) for k, (_, row) in CFK_K0.items()}
            yield "K_0 full differential table", all(
                sorted(full.get(k, [])) == want[k] for k in range(1, p + 1)
            )
            hat = rep.differentials["hat-s3"]
            yield "K_0 hat-s3 differential table", all(
                hat.row(k) == sorted(HAT_S3_K0[k]) for k in range(1, p + 1)
            )
        polys.append(rep.poincare)
    if len(polys) > 1:
        yield f"K_0..K_{max_n} poincare polynomials pairwise distinct", all(
            polys[i] != polys[j] for i in range(len(polys)) for j in range(i)
        )


def cmd_verify_paper(args) -> int:
    rows = []
    try:
        for name, ok in reference_checks(args.max_n):
            rows.append((name, bool(ok)))
            print(f"{'PASS' if ok else 'FAIL'}  {name}", flush=True)
    except HFKError as exc:
        print(f"FAIL  pipeline error: {exc}")
        return _exit_code(exc)
    failed = [n for n, ok in rows if not ok]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return EXIT_OK if not failed else EXIT_INPUT


# --- scan ---------------------------------------------------------------------


def scan_params(p_max: int):
    """Valid parameter tuples with p <= p_max, in lexicographic order."""
    for p in range(1, p_max + 1):
        for q in range((p + 1) // 2):
            for r in range(p):
                for s in range(max(0, 2 * q - r), 2 * q - r + p - 2 * q):
                    yield RasmussenParams(p, q, r, s)


def _scan_one(params: RasmussenParams):
    try:
        d = diagram_mod.decode(params)
    except DiagramError:
        return None
    row = {"params": list(params.as_tuple())}
    try:
        rep = run_pipeline(d).report
    except HFKError as exc:
        row.update(_failure(exc))
        row["flagged"] = False
        return row
    row.update(
        {
            "tau": rep.tau,
            "alexander": [[a, c] for a, c in sorted(rep.alexander.items())],
            "conway_trivial": rep.conway_trivial,
            "seifert_genus": rep.seifert_genus,
            "rank": sum(rep.hfk.values()),
            "flagged": rep.conway_trivial and rep.tau != 0,
        }
    )
    return row


def cmd_scan(args) -> int:
    if args.p_max > args.ceiling:
        sys.stderr.write(dumps({"error": "invalid-input",
                                "message": f"p-max {args.p_max} exceeds ceiling {args.ceiling}"}))
        return EXIT_INPUT
    if args.p_max < 1:
        sys.stderr.write(dumps({"error": "invalid-input", "message": "p-max must be positive"}))
        return EXIT_INPUT
    todo = list(scan_params(args.p_max))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_scan_one, todo, chunksize=16))
    else:
        rows = [_scan_one(t) for t in todo]
    lines = [json.dumps(r, sort_keys=True) + "\n" for r in rows if r is not None]
    _write("".join(lines), args.output)
    return EXIT_OK


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfk11", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="full invariant report as JSON")
    _add_source(p)
    p.add_argument("--window", type=int, default=None, help="lift window (default: automatic)")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--timing", metavar="PATH", help="write wall-clock timing to this sidecar")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("render", help="SVG picture of the diagram")
    _add_source(p)
    p.add_argument("--bigon", metavar="FROM-TO", help="shade this bigon, e.g. 12-13")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify-paper", help="compare against the built-in reference tables")
    p.add_argument("--max-n", type=int, default=3)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("scan", help="one JSON line per valid parameter tuple")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--ceiling", type=int, default=SCAN_CEILING)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
