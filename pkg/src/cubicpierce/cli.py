"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a property fails, 2 for
schema or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from . import oracles
from .abelian import CIRCLE, all_subgroups, restricted_sumset, sumset
from .analyzer import (
    analyze_bipartite,
    analyze_unipartite,
    angle_groupsets,
    counting_lower_bound,
    minimum_piercing_set,
    reducible_case_gate,
)
from .conic_line import DEFAULT_THETA, ConicKind
from .constructions import (
    AngleConfig,
    admissible_offsets,
    bipartite_construction,
    complete_quadrilateral,
    fp_coset_instance,
    lattice_hexagon,
    regular_polygon_config,
    rotated_union,
    three_line_bipartite,
    two_point,
)
from .cubic import WeierstrassCurve
from .document import ConfigDocument, encode_scalar, from_angle_config, from_ec, from_point_config
from .errors import DegenerateInputError, UnsupportedError, UsageError
from .fields import PrimeField
from .plane import PointConfig
from .svg import render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONSTRUCTIONS = (
    "regular-mgon",
    "rotated-union",
    "bipartite",
    "quadrilateral",
    "three-line",
    "fp-coset",
    "two-point",
    "lattice-hexagon",
)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj, out=None):
    (out or sys.stdout).write(_dump(obj) + "\n")


def _point_str(p) -> list[str]:
    return [encode_scalar(c) for c in p.coords]


# --------------------------------------------------------------------------
# construct


def build_document(name: str, m: int | None = None, k: int | None = None, p: int = 7, a: int = 0,
                   b: int = 1, subgroup_order: int = 3) -> ConfigDocument:
    if name == "regular-mgon":
        return from_angle_config(regular_polygon_config(_need(m, "--m")))
    if name == "rotated-union":
        return from_angle_config(rotated_union(_need(m, "--m")))
    if name == "bipartite":
        return from_angle_config(bipartite_construction(_need(k, "--k")))
    if name == "quadrilateral":
        return from_point_config(complete_quadrilateral())
    if name == "three-line":
        return from_point_config(three_line_bipartite())
    if name == "two-point":
        return from_point_config(two_point())
    if name == "lattice-hexagon":
        return from_point_config(lattice_hexagon())
    if name == "fp-coset":
        E = WeierstrassCurve(a, b, PrimeField(p))
        for H in all_subgroups(E):
            if H.order != subgroup_order:
                continue
            offs = admissible_offsets(E, H)
            if offs:
                inst = fp_coset_instance(E, H, offs[0])
                return from_ec(E, {"P": inst.P, "R": inst.R})
        raise UsageError(f"{E.name} has no subgroup of order {subgroup_order} with a general-position coset")
    raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def _need(v, flag):
    if v is None:
        raise UsageError(f"this construction needs {flag}")
    return v


def cmd_construct(args) -> int:
    doc = build_document(args.name, args.m, args.k, args.p, args.a, args.b, args.subgroup_order)
    if args.out:
        doc.save(args.out)
        sizes = {k: len(v) for k, v in doc.sets.items()}
        print(f"wrote {args.out}: " + ", ".join(f"|{k}| = {n}" for k, n in sizes.items()), file=sys.stderr)
    else:
        sys.stdout.write(doc.to_json())
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def verify_document(doc: ConfigDocument) -> dict:
    """General-position and piercing checks for any representation."""
    parsed = doc.parse()
    rep = doc.representation
    if rep == "ec":
        E, roles = parsed
        parsed = PointConfig(E.field, {k: [E.to_proj(x) for x in v] for k, v in roles.items()})
        rep = "planar"
    if rep == "planar":
        verdict = parsed.verify()
        report = {
            "general_position": parsed.in_general_position(),
            "pierced": verdict.holds,
            "lines_checked": verdict.lines_checked,
            "witness": None if verdict.witness is None else [_point_str(p) for p in verdict.witness],
        }
    elif rep == "angle":
        missing = parsed.unpierced()
        report = {
            "general_position": True,  # distinct points of a circle
            "pierced": not missing,
            "classes": len(parsed.census()),
            "witness": _angle_witness(parsed, missing[0]) if missing else None,
        }
    else:
        g, roles = parsed
        report = _verify_group(g, roles)
    report["passed"] = report["general_position"] and report["pierced"]
    return report


def _angle_witness(cfg: AngleConfig, cls):
    if cfg.bipartite:
        pairs = ((a, b) for a in cfg.roles["B"] for b in cfg.roles["G"])
    else:
        pairs = combinations(cfg.roles["P"], 2)
    for a, b in pairs:
        if a + b == cls:
            return {"pair": [CIRCLE.encode(a), CIRCLE.encode(b)], "class": CIRCLE.encode(cls)}
    return None


def _verify_group(g, roles) -> dict:
    R = roles.get("R")
    if R is None:
        raise UsageError("document has no R")
    bip = "B" in roles
    pts = (roles["B"].elements | roles["G"].elements) if bip else roles["P"].elements
    # three distinct points are collinear iff they sum to zero
    gp = not any(g.add(g.add(x, y), z) == g.zero for x, y, z in combinations(pts, 3))
    if bip:
        S = sumset(roles["B"], roles["G"])
    else:
        S = restricted_sumset(roles["P"]) if len(roles["P"]) >= 2 else None
    missing = [] if S is None else sorted(S.elements - R.neg().elements, key=g.sort_key)
    return {
        "general_position": gp,
        "pierced": not missing,
        "witness": None if not missing else {"unpierced_sum": g.encode(missing[0])},
    }


def cmd_verify(args) -> int:
    doc = ConfigDocument.load(args.file)
    report = verify_document(doc)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# --------------------------------------------------------------------------
# analyze


def analyze_document(doc: ConfigDocument, conic: str | None = None) -> dict:
    parsed = doc.parse()
    rep = doc.representation
    if rep == "planar":
        if conic is None:
            raise UsageError("analysis requires group representation (angle, ec or group), or --conic")
        return reducible_case_gate(parsed, ConicKind(conic)).to_dict()
    if rep == "angle":
        roles = angle_groupsets(parsed)
    else:
        _, roles = parsed
    if "R" not in roles:
        raise UsageError("document has no R")
    if "B" in roles:
        rep_obj = analyze_bipartite(roles["B"], roles["G"], roles["R"])
    else:
        rep_obj = analyze_unipartite(roles["P"], roles["R"])
    return rep_obj.to_dict()


def cmd_analyze(args) -> int:
    doc = ConfigDocument.load(args.file)
    try:
        report = analyze_document(doc, args.conic)
    except AssertionError as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(report)
    ok = report["accepted"] if "accepted" in report else report["pierced"]
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# selftest


def cmd_selftest(args) -> int:
    pred = oracles.negated_collinear if args.mutant else oracles.collinear
    results = oracles.run_selftest(
        lev_bound=args.lev_bound,
        lemma_bound=args.lemma_bound,
        gt_samples=args.gt_samples,
        lev_samples=not args.no_samples,
        collinear_pred=pred,
    )
    ok = True
    for res in results:
        print(res.line())
        for msg in res.failures:
            print(f"  reproducer: {msg}")
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# minpierce


def cmd_minpierce(args) -> int:
    doc = ConfigDocument.load(args.file)
    if doc.representation != "planar":
        raise UsageError("minpierce needs a planar document")
    cfg = doc.parse()
    if cfg.bipartite:
        raise UsageError("minpierce works on a single set P")
    P = cfg.roles.get("P", [])
    found = minimum_piercing_set(P, args.limit)
    _emit(
        {
            "n": len(P),
            "counting_bound": counting_lower_bound(len(P)),
            "min_piercing": f"> {args.limit}" if found is None else len(found),
            "witness": None if found is None else [_point_str(p) for p in found],
        }
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# plot


def cmd_plot(args) -> int:
    doc = ConfigDocument.load(args.file)
    if doc.representation not in ("planar", "angle"):
        raise UsageError("plot needs a planar or angle document")
    svg = render(doc.parse(), theta=args.theta)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cubicpierce",
        description="Exact tools for point sets whose connecting lines are pierced by few points.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a named configuration as JSON")
    c.add_argument("name", choices=CONSTRUCTIONS)
    c.add_argument("--m", type=int, help="polygon size")
    c.add_argument("--k", type=int, help="odd polygon size for the bipartite construction")
    c.add_argument("--p", type=int, default=7, help="prime for fp-coset (default 7)")
    c.add_argument("--a", type=int, default=0, help="curve coefficient a (default 0)")
    c.add_argument("--b", type=int, default=1, help="curve coefficient b (default 1)")
    c.add_argument("--subgroup-order", type=int, default=3, help="order of H for fp-coset (default 3)")
    c.add_argument("--out", help="output file (default: stdout)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check general position and piercing")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="run the sumset pipeline and report the recovered structure")
    a.add_argument("file")
    a.add_argument("--conic", choices=[k.value for k in ConicKind],
                   help="treat a planar document as hosted by this conic plus the line at infinity")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("selftest", help="run the brute-force oracles")
    s.add_argument("--lev-bound", type=int, default=oracles.DEFAULT_LEV_BOUND)
    s.add_argument("--lemma-bound", type=int, default=oracles.DEFAULT_LEMMA_BOUND)
    s.add_argument("--gt-samples", type=int, default=oracles.DEFAULT_GT_SAMPLES)
    s.add_argument("--no-samples", action="store_true", help="skip the sampled large-k sweep")
    s.add_argument("--mutant", action="store_true", help="inject a broken collinearity test (must fail)")
    s.set_defaults(func=cmd_selftest)

    mp = sub.add_parser("minpierce", help="exact minimum piercing set of a small planar P")
    mp.add_argument("file")
    mp.add_argument("--limit", type=int, default=None)
    mp.set_defaults(func=cmd_minpierce)

    pl = sub.add_parser("plot", help="draw a planar or angle configuration as SVG")
    pl.add_argument("file")
    pl.add_argument("--out", required=True)
    pl.add_argument("--theta", type=float, default=DEFAULT_THETA,
                    help="display value of the generic rotation, in turns")
    pl.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DegenerateInputError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
