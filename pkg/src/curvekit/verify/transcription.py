"""Claim records and the expression language they are written in.

A suite file is JSON with a ``records`` list.  Each record names curves with
small Python expressions evaluated against a per-genus namespace, with no
builtins beyond a handful of pure helpers.  Indices are reduced modulo the
number of punctures by the accessor functions themselves.

Record kinds:

``identity``     ``target`` equals ``value``
``determines``   ``target`` is the unique curve disjoint from ``witness``
``search``       some subset of the certified ledger determines ``target``
``coverage``     generator images of ``images_of`` stay within ``bound``
``membership``   starting from ``base`` alone, every curve of ``curves`` is reached within ``bound``

Optional fields: ``for`` (ordered ``[name, iterable-expression]`` pairs),
``when`` (a boolean expression), ``let`` (``[name, witness-expression,
bound?]`` auxiliaries, each certified before use), ``bound`` (a level) and
``generators`` (``"T"``, ``"H"`` or omitted for all).  A string ``bound`` is an
expression evaluated per instance.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterator

from ..constructions.common import ConstructionError, FamilyCatalog
from ..curves import NormalCurve
from ..expansion import UNIQUE, determine
from ..mapping import dehn_twist, half_twist

SUITES = (
    "g0-complexity2",
    "g0-claims",
    "g0-containment",
    "g1-claims",
    "g1-containment",
    "g2-claims",
    "g2-containment",
    "analytics",
)


class TranscriptionError(ValueError):
    pass


@dataclass
class Record:
    id: str
    anchor: str
    kind: str
    data: dict[str, Any] = field(default_factory=dict)

    def get(self, key: str, default=None):
        return self.data.get(key, default)

    def __getitem__(self, key: str):
        return self.data[key]


@dataclass
class SuiteFile:
    suite: str
    version: int
    genus: int
    min_punctures: int
    max_punctures: int | None
    records: list[Record]
    settings: dict[str, Any] = field(default_factory=dict)


def load_suite(suite: str) -> SuiteFile:
    if suite not in SUITES:
        raise TranscriptionError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    text = resources.files("curvekit.verify").joinpath("data", f"{suite}.json").read_text()
    raw = json.loads(text)
    records = []
    seen = set()
    for r in raw.get("records", []):
        if r["id"] in seen:
            raise TranscriptionError(f"duplicate record id {r['id']}")
        seen.add(r["id"])
        records.append(Record(r["id"], r.get("anchor", r["id"]), r["kind"], r))
    return SuiteFile(
        suite=raw["suite"],
        version=raw["version"],
        genus=raw["genus"],
        min_punctures=raw["min_punctures"],
        max_punctures=raw.get("max_punctures"),
        records=records,
        settings=raw.get("settings", {}),
    )


# namespaces -------------------------------------------------------------------------------


def _det(A) -> NormalCurve:
    A = list(A)
    res = determine(A)
    if res.verdict != UNIQUE:
        raise TranscriptionError(f"determination gave {res.verdict}")
    return res.curve


def _minus(A, B) -> list[NormalCurve]:
    drop = {c.weights for c in B}
    return [c for c in A if c.weights not in drop]


def _common(cat: FamilyCatalog) -> dict[str, Any]:
    return {
        "n": cat.spec.punctures,
        "range": range,
        "len": len,
        "list": list,
        "set": set,
        "all": all,
        "any": any,
        "sorted": sorted,
        "H": half_twist,
        "T": dehn_twist,
        "det": _det,
        "minus": _minus,
        "Y": list(cat["Y"]),
    }


def _genus0(cat) -> dict[str, Any]:
    from ..constructions.genus0 import with_x

    with_x(cat)
    ns = _common(cat)
    ns.update(
        a=cat.alpha,
        b=cat.beta,
        c=cat.gamma,
        arun=cat.alphas,
        O=list(cat["O"]),
        D1=list(cat["D1"]),
        D2=list(cat["D2"]),
        X=list(cat["X"]),
    )
    return ns


def _genus1(cat) -> dict[str, Any]:
    from ..constructions.genus1 import with_x

    with_x(cat)
    ns = _common(cat)
    ns.update(
        a0=cat.a0,
        a1=cat.a1,
        b=cat.beta,
        e=cat.eps,
        g=cat.gam,
        g2=cat.gam2,
        arun=lambda i, j: cat.run(cat.a0, i, j),
        brun=lambda i, j: cat.run(cat.beta, i, j),
        C=list(cat["C"]),
        D=list(cat["D"]),
        A=list(cat["A"]),
        X=list(cat["X"]),
    )
    return ns


def _genus2(cat) -> dict[str, Any]:
    from ..constructions.genus2 import HEXAGON_INTERVALS, d_lower, d_upper

    def bc(sign: int, key, j: int = 0) -> NormalCurve:
        key = tuple(key)
        for iv in HEXAGON_INTERVALS:
            if key == iv or key == iv[::-1]:
                return cat.bounding(iv, sign, j)
        raise TranscriptionError(f"{key} is not a chain of the hexagon")

    ns = _common(cat)
    n = cat.n
    ns.update(
        al=cat.alpha,
        ch=lambda i, k=0: cat.fan(k) if i % 6 == 0 else cat.alpha(i % 6),
        f=cat.fan,
        bc=bc,
        delta=cat.delta,
        zeta=cat.zeta,
        C=list(cat["C"]),
        C0=list(cat["C0"]),
        Cf=list(cat["Cf"]),
        B=list(cat["B"]),
        D=list(cat["D"]),
        E=list(cat["E"]),
        Z=list(cat["Z"]),
        deltas=[cat.delta(i) for i in range(1, n)],
        gP=cat["gamma^+"],
        gM=cat["gamma^-"],
        X0=list(cat["X0"]),
        Xx=list(cat["X_extra"]),
    )
    if n >= 2:
        ns.update(
            e2=cat["eps2"],
            e4=cat["eps4"],
            Dlow=lambda i: d_lower(cat, i),
            Dup=lambda i: d_upper(cat, i),
            bip=lambda i: cat["beta_i+"][i],
            bim=lambda i: cat["beta_i-"][i],
            gp=lambda i: cat["gamma_+"][i],
            gm=lambda i: cat["gamma_-"][i],
            Delta1=lambda i: cat["Delta_1i"][i],
            DeltaN=lambda i: cat["Delta_in"][i],
        )
    if n >= 3:
        ns["Delta"] = cat["Delta"]
    return ns


def catalog_for(genus: int, n: int) -> FamilyCatalog:
    from ..constructions import genus0_family, genus1_family, genus2_family

    try:
        return {0: genus0_family, 1: genus1_family, 2: genus2_family}[genus](n)
    except KeyError:
        raise TranscriptionError(f"no constructions in genus {genus}") from None


def namespace(cat: FamilyCatalog) -> dict[str, Any]:
    g = cat.spec.genus
    ns = {0: _genus0, 1: _genus1, 2: _genus2}[g](cat)
    ns["__builtins__"] = {}
    return ns


def evaluate(expr: str, ns: dict[str, Any], local: dict[str, Any] | None = None):
    try:
        # one scope so that comprehensions see the loop variables
        return eval(expr, {**ns, **(local or {})})  # noqa: S307 - trusted package data, no builtins
    except (ConstructionError, TranscriptionError):
        raise
    except Exception as exc:
        raise TranscriptionError(f"cannot evaluate {expr!r}: {exc}") from exc


def instances(record: Record, ns: dict[str, Any]) -> Iterator[dict[str, Any]]:
    """Loop bindings of a record, in order, filtered by ``when``."""
    loops = record.get("for", [])

    def rec(k: int, env: dict[str, Any]):
        if k == len(loops):
            cond = record.get("when")
            if cond is None or evaluate(cond, ns, env):
                yield dict(env)
            return
        name, expr = loops[k]
        for v in evaluate(expr, ns, env):
            env[name] = v
            yield from rec(k + 1, env)
        env.pop(name, None)

    yield from rec(0, {})


def as_curves(value) -> list[NormalCurve]:
    if isinstance(value, NormalCurve):
        return [value]
    out = list(itertools.chain.from_iterable(as_curves(v) for v in value))
    return out
