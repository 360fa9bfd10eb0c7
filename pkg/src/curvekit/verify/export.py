"""JSON and DOT export of catalogs, ledgers, reports and graphs.

DOT output covers two kinds of graph: the subgraph of the curve graph
induced by a list of curves (edges join disjoint curves) and pants adjacency
graphs.  JSON round-trips through :func:`load_json`.
"""

from __future__ import annotations

import itertools
import json
from typing import Any, Sequence

import networkx as nx

from ..analytics import graph_to_dot
from ..constructions.common import FamilyCatalog
from ..curves import NormalCurve, intersection_number
from ..expansion import CurveSetLedger
from ..triangulation import Triangulation
from .report import ClaimReport

FORMATS = ("json", "dot")


class ExportError(ValueError):
    pass


def induced_subgraph(curves: Sequence[NormalCurve]) -> nx.Graph:
    """Curve-graph subgraph on ``curves``: nodes by index, edges between disjoint distinct curves."""
    G = nx.Graph()
    for k, c in enumerate(curves):
        G.add_node(k, label=c.label or f"c{k}", weights=list(c.weights))
    for a, b in itertools.combinations(range(len(curves)), 2):
        if curves[a] != curves[b] and intersection_number(curves[a], curves[b]) == 0:
            G.add_edge(a, b)
    return G


def to_json(obj: Any) -> dict:
    if isinstance(obj, ClaimReport):
        return {"kind": "report", **obj.to_json()}
    if isinstance(obj, CurveSetLedger):
        return {"kind": "ledger", "triangulation": obj.tri.to_json(), **obj.to_json()}
    if isinstance(obj, FamilyCatalog):
        return {"kind": "catalog", **obj.to_json()}
    if isinstance(obj, NormalCurve):
        return {"kind": "curve", "triangulation": obj.tri.to_json(), **obj.to_json()}
    if isinstance(obj, Triangulation):
        return {"kind": "triangulation", **obj.to_json()}
    if isinstance(obj, nx.Graph):
        return {
            "kind": "graph",
            "nodes": [{"id": v, **data} for v, data in sorted(obj.nodes(data=True))],
            "edges": sorted([sorted(e) for e in obj.edges()]),
        }
    raise ExportError(f"cannot export {type(obj).__name__} as JSON")


def to_dot(obj: Any, name: str = "G") -> str:
    if isinstance(obj, nx.Graph):
        return graph_to_dot(obj, name)
    if isinstance(obj, FamilyCatalog):
        return graph_to_dot(induced_subgraph(list(obj["Y"])), name)
    if isinstance(obj, (list, tuple)) and all(isinstance(c, NormalCurve) for c in obj):
        return graph_to_dot(induced_subgraph(list(obj)), name)
    raise ExportError(f"cannot export {type(obj).__name__} as DOT")


def export(obj: Any, fmt: str, path: str | None = None, name: str = "G") -> str:
    """Render ``obj`` in ``fmt`` and write it to ``path`` if given; returns the text."""
    if fmt == "json":
        text = json.dumps(to_json(obj), indent=1, sort_keys=True) + "\n"
    elif fmt == "dot":
        text = to_dot(obj, name)
    else:
        raise ExportError(f"unknown format {fmt!r}; known: {', '.join(FORMATS)}")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_json(text: str) -> Any:
    """Inverse of the JSON export for triangulations, curves, catalogs, ledgers and graphs."""
    data = json.loads(text)
    kind = data.get("kind")
    if kind == "triangulation":
        return Triangulation.from_json(data)
    if kind == "curve":
        return NormalCurve.from_json(Triangulation.from_json(data["triangulation"]), data)
    if kind == "catalog":
        tri = Triangulation.from_json(data["triangulation"])
        cat = FamilyCatalog(tri)
        for key, curves in data["families"].items():
            cat[key] = [NormalCurve.from_json(tri, c) for c in curves]
        return cat
    if kind == "ledger":
        tri = Triangulation.from_json(data["triangulation"])
        ledger = CurveSetLedger(tri, {}, data.get("partial", False))
        for e in data["curves"]:
            witness = [NormalCurve(tri, w, check=False) for w in e["witness"]]
            ledger.add(NormalCurve(tri, e["weights"], e.get("label"), check=False), e["level"], witness, e.get("label"))
        return ledger
    if kind == "graph":
        G = nx.Graph()
        for node in data["nodes"]:
            G.add_node(node["id"], **{k: v for k, v in node.items() if k != "id"})
        G.add_edges_from(tuple(e) for e in data["edges"])
        return G
    if kind == "report":
        return data
    raise ExportError(f"unrecognised JSON export kind {kind!r}")
