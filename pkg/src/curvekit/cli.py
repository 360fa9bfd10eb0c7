"""Command line entry point: ``curvekit <command> ...``.

Curves on the command line are catalog labels (``alpha_1``, ``beta_{0,2}``)
or JSON weight vectors on the base triangulation (``"[0,1,1,0,...]"``).
Exit codes: 0 pass, 1 fail, 2 partial (budget ran out), 3 bad input
(unknown suite, unsupported surface, unparsable curve or word).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .constructions import family
from .curves import CurveError, NormalCurve, intersection_number
from .triangulation import SurfaceSpec

BAD_INPUT = 3


def _catalog(surface: str):
    spec = SurfaceSpec.parse(surface)
    return family(spec.genus, spec.punctures)


def _curve(cat, ref: str) -> NormalCurve:
    labels = cat.labels()
    if ref in labels:
        return labels[ref]
    try:
        weights = json.loads(ref)
    except json.JSONDecodeError:
        raise CurveError(f"unknown curve {ref!r}: not a label of this catalog and not a weight vector") from None
    return NormalCurve(cat.tri, weights)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _show(c: NormalCurve, cat=None) -> str:
    """Label and coordinates; unlabeled curves are named from the catalog when they occur there."""
    label = c.label
    if label is None and cat is not None:
        label = next((k for k, v in sorted(cat.labels().items()) if v.weights == c.weights), None)
    return f"{label or '-'} {list(c.weights)}"


def cmd_construct(args) -> int:
    cat = _catalog(args.surface)
    if args.json:
        from .verify.export import export

        export(cat, "json", args.json)
    keys = args.family or [k for k in cat.entries if k in ("Y", "X", "X0", "C", "D", "B", "O", "A")]
    for k in keys:
        if k not in cat:
            raise CurveError(f"no family {k!r}; available: {', '.join(cat.entries)}")
        value = cat[k]
        curves = list(value.values()) if isinstance(value, dict) else [value] if isinstance(value, NormalCurve) else list(value)
        print(f"{k}: {len(curves)} curves")
        if args.verbose:
            for c in curves:
                print("  " + _show(c))
    return 0


def cmd_intersect(args) -> int:
    cat = _catalog(args.surface)
    print(intersection_number(_curve(cat, args.a), _curve(cat, args.b)))
    return 0


def cmd_act(args) -> int:
    from .mapping import parse_word

    cat = _catalog(args.surface)
    f = parse_word(args.word, cat.labels())
    for ref in args.curves:
        print(_show(f(_curve(cat, ref)), cat))
    return 0


def cmd_determine(args) -> int:
    from .expansion import determine

    cat = _catalog(args.surface)
    res = determine([_curve(cat, r) for r in args.curves])
    print(res.verdict)
    if res.curve is not None:
        print(_show(res.curve, cat))
    return 0


def cmd_expand(args) -> int:
    from .expansion import CurveSetLedger, expand_once

    cat = _catalog(args.surface)
    ledger = CurveSetLedger.from_curves(cat[args.base])
    print(f"level 0: {len(ledger)}")
    for k in range(1, args.levels + 1):
        ledger, stats = expand_once(ledger, workers=args.workers, budget_secs=args.budget_secs)
        print(f"level {k}: {len(ledger)} ({stats.subsets} subsets, {stats.seconds:.1f}s{', partial' if stats.partial else ''})")
    if args.json:
        from .verify.export import export

        export(ledger, "json", args.json)
    return 2 if ledger.partial else 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    report = run_suite(args.suite, args.surface, budget_secs=args.budget_secs, workers=args.workers, radius=args.radius)
    for line in report.summary_lines():
        print(line)
    if args.json:
        _emit(report.dumps(timings=not args.no_timings) + "\n", args.json)
    return report.exit_code()


def _read_pants(cat, path: str) -> list[NormalCurve]:
    with open(path) as fh:
        data = json.load(fh)
    items = data["curves"] if isinstance(data, dict) else data
    out = []
    for item in items:
        if isinstance(item, str):
            out.append(_curve(cat, item))
        elif isinstance(item, dict):
            out.append(NormalCurve(cat.tri, item["weights"], item.get("label")))
        else:
            out.append(NormalCurve(cat.tri, item))
    return out


def cmd_analyze(args) -> int:
    from . import analytics
    from .verify.export import export

    cat = _catalog(args.surface)
    P = _read_pants(cat, args.input)
    if not analytics.is_pants(P):
        print("not a pants decomposition", file=sys.stderr)
        return 1
    G = analytics.adjacency_graph(P)
    if args.emit == "dot":
        _emit(export(G, "dot", name="adjacency"), args.out)
    else:
        summary = {
            "curves": len(P),
            "edges": G.number_of_edges(),
            "cycle": analytics.is_cycle_graph(G),
            "cut_vertices": sorted(analytics.cut_vertices(G)),
            "separating": [analytics.is_separating(c) for c in P],
        }
        _emit(json.dumps(summary, indent=1, sort_keys=True) + "\n", args.out)
    return 0


def cmd_export(args) -> int:
    from .expansion import CurveSetLedger
    from .verify.export import export

    cat = _catalog(args.surface)
    if args.what == "catalog":
        obj = cat
    elif args.what == "subgraph":
        obj = list(cat[args.family])
    else:
        obj = CurveSetLedger.from_curves(cat[args.family])
    _emit(export(obj, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvekit", description="Curves, twists and rigid expansions on punctured surfaces of genus at most two.")
    sub = p.add_subparsers(dest="command", required=True)

    def surface(sp):
        sp.add_argument("--surface", required=True, help="genus,punctures, e.g. 0,5")

    sp = sub.add_parser("construct", help="build the named curve families of a surface")
    surface(sp)
    sp.add_argument("--family", action="append", help="family to list (repeatable)")
    sp.add_argument("--verbose", "-v", action="store_true")
    sp.add_argument("--json", help="write the whole catalog as JSON")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("intersect", help="geometric intersection number of two curves")
    surface(sp)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("act", help="apply a word in twists and half-twists")
    surface(sp)
    sp.add_argument("--word", required=True, help='e.g. "T(alpha_1)^-1 * H(beta_2)"')
    sp.add_argument("curves", nargs="+")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("determine", help="the curves disjoint from every given curve")
    surface(sp)
    sp.add_argument("curves", nargs="+")
    sp.set_defaults(func=cmd_determine)

    sp = sub.add_parser("expand", help="rigid expansion levels of a family")
    surface(sp)
    sp.add_argument("--base", default="Y")
    sp.add_argument("--levels", type=int, default=1)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--budget-secs", type=float)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("verify", help="run a claim suite")
    sp.add_argument("suite")
    surface(sp)
    sp.add_argument("--budget-secs", type=float)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--radius", type=int, help="override the weight radius of sweeps")
    sp.add_argument("--json", help="write the report here")
    sp.add_argument("--no-timings", action="store_true", help="omit timings so reports compare byte for byte")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("analyze", help="adjacency analysis of a pants decomposition")
    sp.add_argument("what", choices=["pants"])
    surface(sp)
    sp.add_argument("--in", dest="input", required=True, help="JSON list of labels or weight vectors")
    sp.add_argument("--emit", choices=["dot", "json"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("export", help="export a catalog, a base ledger or an induced subgraph")
    surface(sp)
    sp.add_argument("--what", choices=["catalog", "ledger", "subgraph"], default="catalog")
    sp.add_argument("--family", default="Y")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    from .constructions import ConstructionError
    from .curves import CurveError
    from .mapping import MappingError
    from .triangulation import SurfaceError
    from .verify import SuiteError, TranscriptionError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConstructionError, CurveError, MappingError, SurfaceError, SuiteError, TranscriptionError) as exc:
        print(f"curvekit: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
