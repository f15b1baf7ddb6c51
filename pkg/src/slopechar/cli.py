"""Command-line front end.

Subcommands: info, digitize, coincidences, equations, verdict, regions,
rpatterns.  All take a slope-spec file; outputs are deterministic given the
spec and seed.  Exit codes: 1 parse error, 2 resource limit, 3 singular
offset.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charcheck, coincidence, patterns, specfile, tiling
from .charcheck import ResourceLimit
from .numfield import FieldElem
from .slope import grassmann, is_generic, plucker_residuals
from .specfile import SpecError
from .tiling import SingularOffset

EXIT_PARSE = 1
EXIT_RESOURCE = 2
EXIT_SINGULAR = 3

APPROX_DIGITS = 6


def _rat_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _elem_json(e):
    if isinstance(e, FieldElem):
        return {"coeffs": [_rat_str(c) for c in e.coeffs],
                "approx": e.approx(APPROX_DIGITS)}
    return {"coeffs": [_rat_str(e)], "approx": f"{float(Fraction(e)):.{APPROX_DIGITS}f}"}


def _load(path):
    spec = specfile.load_spec(path)
    return spec, specfile.to_slope(spec)


def _emit(doc, path=None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_info(args):
    spec, s = _load(args.spec)
    g = grassmann(s)
    generic, witness = is_generic(s)
    doc = {
        "n": s.n,
        "d": s.d,
        "minpoly": [_rat_str(c) for c in s.field.minpoly],
        "alpha": s.field.alpha.approx(APPROX_DIGITS),
        "grassmann": {
            "G" + "".join(str(i) for i in t): _elem_json(g[t]) for t in g.tuples()},
        "plucker_residuals_zero": all(r.is_zero() for r in plucker_residuals(g)),
        "generic": generic,
        "witness": list(witness) if witness else None,
        "slope_hash": tiling.slope_hash(s),
    }
    _emit(doc, args.json)
    return 0


def cmd_digitize(args):
    spec, s = _load(args.spec)
    seed = args.seed if args.seed is not None else spec.seed
    offset = specfile.spec_offset(spec, s)
    patch = tiling.digitize(s, offset=offset, radius=Fraction(args.radius), seed=seed)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(tiling.patch_json(patch) + "\n")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(tiling.render_svg(patch))
    freqs = tiling.tile_frequencies(patch)
    print(f"{len(patch)} faces at radius {args.radius}; "
          f"{len(freqs)} tile types")
    return 0


def cmd_coincidences(args):
    spec, s = _load(args.spec)
    out = []
    for t in coincidence.enumerate_types(s.n, s.d):
        lat = coincidence.coincidence_lattice(s, t)
        realized = []
        for v in lat:
            entry = {"vector": list(v)}
            try:
                c = coincidence.realize(s, t, v)
            except coincidence.InconsistentSystem:
                entry["inconsistent"] = True
            else:
                if isinstance(c, coincidence.Degenerate):
                    entry["degenerate"] = True
                else:
                    c2, r = coincidence.minimize_r(s, c)
                    entry["r"] = r
                    entry["window_point"] = [_elem_json(x) for x in c2.window_point]
            realized.append(entry)
        out.append({
            "subsets": [list(sub) for sub in t.subsets],
            "lattice": [list(v) for v in lat],
            "realized": realized,
        })
    _emit({"n": s.n, "d": s.d, "types": out}, args.json)
    return 0


def cmd_equations(args):
    spec, s = _load(args.spec)
    eqs = coincidence.all_equations(s)
    _, names = coincidence.grassmann_variables(s.n, s.d)
    doc = {
        "variables": names,
        "equations": [{
            "subsets": [list(sub) for sub in e.type.subsets],
            "vector": list(e.vector),
            "polynomial": charcheck.poly_json(e.poly, names),
        } for e in eqs],
    }
    _emit(doc, args.json)
    return 0


def cmd_verdict(args):
    spec, s = _load(args.spec)
    v = charcheck.verdict(s, normalize_at=spec.normalization)
    doc = charcheck.verdict_json(v)
    _emit(doc, args.json)
    if args.json:
        print(v.status)
    return 0


def _pattern_from_json(doc):
    edges = [(tuple(e["vertex"]), e["direction"]) for e in doc["edges"]]
    vertices = [tuple(v) for v in doc.get("vertices", [])]
    return patterns.LiftedPattern(edges, vertices)


def cmd_regions(args):
    spec, s = _load(args.spec)
    with open(args.pattern) as fh:
        pat = _pattern_from_json(json.load(fh))
    reg = patterns.pattern_region(s, pat)
    text = patterns.region_json(reg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


def cmd_rpatterns(args):
    spec, s = _load(args.spec)
    atlas = patterns.enumerate_r_patterns(s, args.r, samples=args.samples,
                                          seed=spec.seed)
    doc = {
        "r": args.r,
        "complete": atlas.complete,
        "window_area": _elem_json(atlas.window_area),
        "patterns": [{
            "edges": [{"vertex": list(a), "direction": i}
                      for a, i in sorted(e.pattern.edges)],
            "vertex_count": len(e.pattern.vertices()),
            "area": _elem_json(e.area) if e.area is not None else None,
        } for e in atlas.entries],
    }
    _emit(doc, args.json)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="slopechar",
        description="Exact cut-and-project tilings and coincidence "
                    "characterization of slopes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        p = sub.add_parser(name)
        p.add_argument("spec", help="slope-spec file")
        p.set_defaults(fn=fn)
        return p

    p = add("info", cmd_info)
    p.add_argument("--json", help="write the report here instead of stdout")

    p = add("digitize", cmd_digitize)
    p.add_argument("--radius", default="10", help="patch radius (rational)")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--json", help="JSON output path")
    p.add_argument("--seed", type=int, default=None)

    p = add("coincidences", cmd_coincidences)
    p.add_argument("--json", help="write the report here instead of stdout")

    p = add("equations", cmd_equations)
    p.add_argument("--json", help="write the report here instead of stdout")

    p = add("verdict", cmd_verdict)
    p.add_argument("--json", help="write the report here instead of stdout")

    p = add("regions", cmd_regions)
    p.add_argument("--pattern", required=True, help="pattern JSON file")
    p.add_argument("--out", help="region JSON output path")

    p = add("rpatterns", cmd_rpatterns)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--json", help="write the report here instead of stdout")

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SingularOffset as exc:
        print(f"singular offset: {exc}; retry with a different seed or a "
              "perturbed offset", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
