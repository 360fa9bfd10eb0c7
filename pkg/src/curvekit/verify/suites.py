"""Run a transcribed claim suite against one surface.

Records run in file order and share one :class:`LevelEngine`, so a record may
use any curve certified by an earlier one.  Nothing enters the ledger
without a ``determine`` check against curves already in it, which makes every
reported level an honest upper bound relative to the suite's base set.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable

from ..curves import NormalCurve
from ..expansion import UNIQUE, determine
from ..mapping import generating_set
from ..triangulation import SurfaceSpec
from .report import FAIL, PARTIAL, PASS, ClaimReport, ClaimResult
from .transcription import (
    Record,
    SuiteFile,
    TranscriptionError,
    as_curves,
    catalog_for,
    evaluate,
    instances,
    load_suite,
    namespace,
)
from .witness import LevelEngine, search_witness


class SuiteError(ValueError):
    """Unsupported suite/surface combination."""


@dataclass
class Context:
    suite: SuiteFile
    cat: Any
    ns: dict[str, Any]
    engine: LevelEngine
    deadline: float | None
    radius: int | None = None
    labels: dict[tuple[int, ...], str] = field(default_factory=dict)

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def name(self, c: NormalCurve) -> str:
        return c.label or self.labels.get(c.weights) or str(list(c.weights))


def _instance_id(rec: Record, env: dict[str, Any]) -> str:
    if not env:
        return rec.id
    return rec.id + "[" + ",".join(f"{k}={v}" for k, v in env.items()) + "]"


def _expected(rec: Record, what: str) -> str:
    bound = rec.get("bound")
    return what if bound is None else f"{what}, level <= {bound}"


def _bind(rec: Record, env: dict[str, Any], ns: dict[str, Any]) -> Record:
    """The record with an expression-valued ``bound`` evaluated for this instance."""
    bound = rec.get("bound")
    if not isinstance(bound, str):
        return rec
    return Record(rec.id, rec.anchor, rec.kind, {**rec.data, "bound": evaluate(bound, ns, env)})


def _within(level: int | None, bound: int | None) -> bool:
    return level is not None and (bound is None or level <= bound)


def _run_lets(rec: Record, env: dict[str, Any], ctx: Context, computed: dict) -> str | None:
    """Certify ``let`` auxiliaries into ``env``; returns a failure message or ``None``."""
    for item in rec.get("let", []):
        name, expr = item[0], item[1]
        bound = item[2] if len(item) > 2 else None
        W = as_curves(evaluate(expr, ctx.ns, env))
        res = determine(W)
        if res.verdict != UNIQUE:
            return f"auxiliary {name}: determination gave {res.verdict}"
        aux = res.curve
        for c in W:
            ctx.engine.resolve(c)
        lvl = ctx.engine.admit(aux, W, name)
        ctx.engine.add_to_book(aux, W)
        computed[f"{name}.level"] = lvl
        if not _within(lvl, bound):
            return f"auxiliary {name}: level {lvl} exceeds {bound}"
        env[name] = aux
    return None


def _identity(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    computed: dict[str, Any] = {}
    problem = _run_lets(rec, env, ctx, computed)
    if problem:
        computed["error"] = problem
        return FAIL, computed
    target = evaluate(rec.get("target"), ctx.ns, env)
    value = evaluate(rec.get("value"), ctx.ns, env)
    computed["equal"] = target == value
    bound = rec.get("bound")
    if bound is not None:
        computed["level"] = ctx.engine.resolve(value).level
        ok = computed["equal"] and _within(computed["level"], bound)
    else:
        ok = computed["equal"]
    return (PASS if ok else FAIL), computed


def _determines(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    computed: dict[str, Any] = {}
    problem = _run_lets(rec, env, ctx, computed)
    if problem:
        computed["error"] = problem
        return FAIL, computed
    target = evaluate(rec.get("target"), ctx.ns, env)
    W = as_curves(evaluate(rec.get("witness"), ctx.ns, env))
    res = determine(W)
    computed["verdict"] = res.verdict
    computed["witness_size"] = len(W)
    if res.verdict != UNIQUE or res.curve != target:
        computed["matches_target"] = False
        return FAIL, computed
    computed["matches_target"] = True
    ctx.engine.add_to_book(target, W)
    methods = Counter(ctx.engine.resolve(c).method for c in W)
    computed["witness_methods"] = dict(sorted(methods.items()))
    lvl = ctx.engine.admit(target, W)
    computed["level"] = lvl
    bound = rec.get("bound")
    if bound is None:
        return PASS, computed
    if lvl is None:
        computed["error"] = "witness curves not certified"
    return (PASS if _within(lvl, bound) else FAIL), computed


def _search(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    computed: dict[str, Any] = {}
    problem = _run_lets(rec, env, ctx, computed)
    if problem:
        computed["error"] = problem
        return FAIL, computed
    target = evaluate(rec.get("target"), ctx.ns, env)
    fixed = as_curves(evaluate(rec["fixed"], ctx.ns, env)) if rec.get("fixed") else []
    if fixed:
        chain = _search_auxiliary(target, fixed, ctx, rec.get("aux_bound"))
    else:
        chain = search_witness(target, ctx.engine.ledger, rec.get("max_size"))
    if chain is None:
        computed["found"] = False
        return FAIL, computed
    computed["found"] = True
    if chain.steps:
        for step in chain.steps:
            ctx.engine.admit(step.target, step.witness)
        step = chain.steps[-1]
        computed["witness"] = sorted(ctx.name(c) for c in step.witness)
        ctx.engine.add_to_book(target, step.witness)
    lvl = ctx.engine.level(target)
    computed["level"] = lvl
    if rec.get("displayed"):
        shown = as_curves(evaluate(rec["displayed"], ctx.ns, env))
        res = determine(shown)
        computed["displayed_determines_target"] = res.verdict == UNIQUE and res.curve == target
        # a different witness is still a valid finding; the comparison is recorded, not enforced
        if chain.steps:
            computed["matches_displayed"] = {c.weights for c in chain.steps[-1].witness} == {c.weights for c in shown}
        if not computed["displayed_determines_target"]:
            return FAIL, computed
    return (PASS if _within(lvl, rec.get("bound")) else FAIL), computed


def _search_auxiliary(target: NormalCurve, fixed: list[NormalCurve], ctx: Context, aux_bound: int | None):
    """One ledger curve ``d`` (level at most ``aux_bound``) with ``target = <fixed + [d]>``.

    Candidates are tried in order of level, then coordinates; the chain
    records ``d`` and the final determination.
    """
    from ..expansion import WitnessChain, WitnessStep

    for c in fixed:
        ctx.engine.resolve(c)
    entries = sorted(ctx.engine.ledger.entries.values(), key=lambda e: (e.level, e.curve.weights))
    fixed_w = {c.weights for c in fixed}
    for e in entries:
        if aux_bound is not None and e.level > aux_bound:
            break
        d = e.curve
        if d.weights in fixed_w or d == target:
            continue
        res = determine(fixed + [d])
        if res.verdict == UNIQUE and res.curve == target:
            return WitnessChain((WitnessStep(target, tuple(fixed + [d])),))
    return None


def _coverage(rec: Record, env: dict[str, Any], ctx: Context) -> list[tuple[str, dict[str, Any], str, dict]]:
    """One result per generator: every image of ``images_of`` must sit within ``bound``."""
    gens = generating_set(ctx.cat)
    kind = rec.get("generators")
    if kind:
        gens = {k: f for k, f in gens.items() if k.startswith(kind + "(")}
    curves = as_curves(evaluate(rec["images_of"], ctx.ns, env))
    bound = rec["bound"]
    rounds = rec.get("rounds", 3)
    state: dict[tuple[str, tuple[int, ...]], Any] = {}
    for r in range(rounds):
        if ctx.expired():
            break
        todo = [
            (k, c) for k in gens for c in curves
            if r == 0 or ((k, c.weights) in state and not _within(state[(k, c.weights)].level, bound))
        ]
        if not todo:
            break
        for k, c in todo:
            if ctx.expired():
                break
            state[(k, c.weights)] = ctx.engine.image(gens[k], c, bound)
    out = []
    for k in gens:
        levels, methods, bad = [], Counter(), []
        for c in curves:
            res = state.get((k, c.weights))
            if res is None:
                bad.append(ctx.name(c))
                continue
            levels.append(res.level)
            methods[res.method] += 1
            if not _within(res.level, bound):
                bad.append(ctx.name(c))
        finished = all((k, c.weights) in state for c in curves)
        known = [lv for lv in levels if lv is not None]
        computed = {
            "max_level": max(known) if known else None,
            "images": len(curves),
            "methods": dict(sorted(methods.items())),
            "outside_bound": sorted(bad),
        }
        verdict = PASS if not bad else (FAIL if finished else PARTIAL)
        out.append((f"{rec.id}[{k}]", {"generator": k}, verdict, computed))
    return out


def _membership(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    bound = rec["bound"]
    if rec.get("base"):
        engine = LevelEngine.from_base(as_curves(evaluate(rec["base"], ctx.ns, env)))
    else:
        engine = ctx.engine
    direct = {c.weights for c in as_curves(evaluate(rec["direct"], ctx.ns, env))} if rec.get("direct") else set()
    targets = [c for c in as_curves(evaluate(rec["curves"], ctx.ns, env)) if c.weights not in direct]
    got = engine.close(targets, rounds=max(1, bound))
    levels = Counter()
    bad = []
    for t in targets:
        lvl = got[t.weights].level
        levels[str(lvl)] += 1
        if not _within(lvl, bound):
            bad.append(ctx.name(t))
    computed = {
        "checked": len(targets) + len(direct),
        "direct": len(direct),
        "levels": dict(sorted(levels.items())),
        "outside_bound": sorted(bad),
    }
    return (PASS if not bad else FAIL), computed


def _predicate(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    value = evaluate(rec["expr"], ctx.ns, env)
    want = rec.get("expect", True)
    return (PASS if value == want else FAIL), {"value": value}


def _sweep(rec: Record, env: dict[str, Any], ctx: Context) -> tuple[str, dict]:
    from .. import analytics

    key = f"{ctx.cat.spec.genus},{ctx.cat.spec.punctures}"
    radii = rec.get("max_weight", {})
    radius = ctx.radius if ctx.radius is not None else radii.get(key, radii.get("default", analytics.DEFAULT_RADIUS))
    extra = as_curves(evaluate(rec["extra"], ctx.ns, env)) if rec.get("extra") else []
    fn = {"cycle": analytics.sweep_cycle_characterization, "triangles": analytics.sweep_separating_triangles}[rec["which"]]
    res = fn(ctx.cat.tri, radius, rec.get("limit"), extra)
    computed = res.summary()
    verdict = PASS if res.ok else FAIL
    if res.ok and rec.get("min_relevant") and res.relevant < rec["min_relevant"]:
        computed["error"] = "sweep found too few relevant instances to say anything"
        verdict = FAIL
    return verdict, computed


HANDLERS: dict[str, Callable] = {
    "identity": _identity,
    "determines": _determines,
    "search": _search,
    "membership": _membership,
    "predicate": _predicate,
    "sweep": _sweep,
}


def supported(sf: SuiteFile, spec: SurfaceSpec) -> bool:
    if sf.genus is not None and spec.genus != sf.genus:
        return False
    if spec.punctures < sf.min_punctures:
        return False
    return sf.max_punctures is None or spec.punctures <= sf.max_punctures


def _analytics_names(ns: dict[str, Any]) -> None:
    from .. import analytics

    for name in (
        "adjacency_graph",
        "bound_pair_of_pants",
        "cut_vertices",
        "farey_class",
        "is_cycle_graph",
        "is_multicurve",
        "is_pants",
        "is_separating",
        "kappa",
        "peripheral_pair",
    ):
        ns[name] = getattr(analytics, name)
    from ..overlay import regular_neighbourhood_boundary

    ns["boundary"] = regular_neighbourhood_boundary
    ns.update(SPHERICAL=analytics.SPHERICAL, TOROIDAL=analytics.TOROIDAL, NO=analytics.NO)


def run_suite(
    suite: str,
    surface: str | SurfaceSpec,
    budget_secs: float | None = None,
    workers: int = 1,
    radius: int | None = None,
) -> ClaimReport:
    """Check every record of ``suite`` on ``surface`` and return the report.

    ``workers`` is accepted for interface symmetry with the expansion
    commands; records run one after another because later records build on
    curves certified by earlier ones.
    """
    spec = surface if isinstance(surface, SurfaceSpec) else SurfaceSpec.parse(surface)
    sf = load_suite(suite)
    if not supported(sf, spec):
        raise SuiteError(f"suite {suite} does not apply to S_{{{spec.genus},{spec.punctures}}}")
    start = time.monotonic()
    cat = catalog_for(spec.genus, spec.punctures)
    ns = namespace(cat)
    _analytics_names(ns)
    base = as_curves(evaluate(sf.settings.get("base", "Y"), ns))
    ctx = Context(
        suite=sf,
        cat=cat,
        ns=ns,
        engine=LevelEngine.from_base(base),
        deadline=None if budget_secs is None else start + budget_secs,
        radius=radius,
        labels={c.weights: c.label for c in cat.curves() if c.label},
    )
    report = ClaimReport(sf.suite, f"{spec.genus},{spec.punctures}", sf.version)
    for rec in sf.records:
        if rec.get("genus") is not None and rec["genus"] != spec.genus:
            continue
        if rec.get("min_punctures") and spec.punctures < rec["min_punctures"]:
            continue
        if rec.get("max_punctures") and spec.punctures > rec["max_punctures"]:
            continue
        if ctx.expired():
            report.unfinished.append(rec.id)
            continue
        t0 = time.monotonic()
        if rec.kind == "coverage":
            for cid, inputs, verdict, computed in _coverage(rec, {}, ctx):
                report.claims.append(
                    ClaimResult(cid, rec.anchor, inputs, _expected(rec, "all images certified"), computed, verdict, 0.0)
                )
            report.claims[-1].seconds = round(time.monotonic() - t0, 3)
            continue
        handler = HANDLERS.get(rec.kind)
        if handler is None:
            raise TranscriptionError(f"record {rec.id}: unknown kind {rec.kind!r}")
        for env in instances(rec, ns):
            if ctx.expired():
                report.unfinished.append(_instance_id(rec, env))
                continue
            t1 = time.monotonic()
            inputs = {k: v for k, v in env.items()}
            bound_rec = rec
            try:
                bound_rec = _bind(rec, env, ns)
                verdict, computed = handler(bound_rec, dict(env), ctx)
            except TranscriptionError as exc:
                verdict, computed = FAIL, {"error": str(exc)}
            report.claims.append(
                ClaimResult(
                    _instance_id(rec, env),
                    rec.anchor,
                    inputs,
                    _expected(bound_rec, rec.get("expect_text", rec.kind)),
                    computed,
                    verdict,
                    round(time.monotonic() - t1, 3),
                )
            )
    report.stats = {
        "seconds": round(time.monotonic() - start, 3),
        "ledger_size": len(ctx.engine.ledger),
        "determinations": ctx.engine.determinations,
    }
    return report
