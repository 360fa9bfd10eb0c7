"""Pants decompositions, adjacency graphs and Farey neighbours.

Adjacency of two curves of a pants decomposition ``P`` means that some
complement piece of ``P`` is a pair of pants (or a once-punctured annulus,
or a twice-punctured disc) with both curves among its boundary curves and no
two of its boundary curves isotopic.  Graph algorithms come from networkx.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .curves import NormalCurve, intersection_number, is_essential_curve, validate
from .overlay import complement_decomposition, curve_type, overlay_of
from .triangulation import Triangulation, side


class AnalyticsError(ValueError):
    pass


def kappa(tri: Triangulation) -> int:
    return 3 * tri.genus - 3 + tri.num_punctures


def is_multicurve(curves: Iterable[NormalCurve]) -> bool:
    """Pairwise distinct and disjoint; the empty set counts."""
    cs = list(curves)
    if len(set(cs)) != len(cs):
        return False
    return all(intersection_number(a, b) == 0 for a, b in itertools.combinations(cs, 2))


def _pants_pieces(curves: Sequence[NormalCurve]):
    return complement_decomposition(overlay_of(curves))


def is_pants(curves: Iterable[NormalCurve]) -> bool:
    cs = list(curves)
    if not cs or not is_multicurve(cs) or len(cs) != kappa(cs[0].tri):
        return False
    return all(p.genus == 0 and p.boundary_count + p.puncture_count == 3 for p in _pants_pieces(cs))


@dataclass(frozen=True)
class PantsDecomposition:
    curves: tuple[NormalCurve, ...]

    def __post_init__(self) -> None:
        if not is_pants(self.curves):
            raise AnalyticsError("not a pants decomposition")

    @property
    def tri(self) -> Triangulation:
        return self.curves[0].tri

    def pieces(self):
        return _pants_pieces(self.curves)


def adjacency_graph(P: Iterable[NormalCurve] | PantsDecomposition) -> nx.Graph:
    """Vertices are the curves of ``P`` (by index); edges join adjacent curves."""
    curves = list(P.curves if isinstance(P, PantsDecomposition) else P)
    if not is_pants(curves):
        raise AnalyticsError("adjacency graph needs a pants decomposition")
    index = {c.weights: k for k, c in enumerate(curves)}
    G = nx.Graph()
    for k, c in enumerate(curves):
        G.add_node(k, label=c.label or f"c{k}")
    for piece in _pants_pieces(curves):
        ids = [index.get(b.weights) if b is not None else None for b in piece.boundary_pushoffs]
        if None in ids or len(set(ids)) != len(ids):
            continue
        G.add_edges_from(itertools.combinations(ids, 2))
    return G


def cut_vertices(G: nx.Graph) -> set:
    return set(nx.articulation_points(G))


def is_cycle_graph(G: nx.Graph) -> bool:
    return (
        G.number_of_nodes() >= 3
        and nx.is_connected(G)
        and all(d == 2 for _, d in G.degree())
    )


# Farey neighbours -------------------------------------------------------------------------------

NO, SPHERICAL, TOROIDAL = "No", "Spherical", "Toroidal"

DEFAULT_RADIUS = 24


def neighbourhood_type(a: NormalCurve, b: NormalCurve) -> tuple[int, int]:
    """``(genus, boundary count)`` of the open regular neighbourhood of ``a`` and ``b``."""
    i = intersection_number(a, b)
    if i == 0:
        raise AnalyticsError("disjoint curves have a disconnected neighbourhood")
    bnd = sum(p.boundary_count for p in _pants_pieces([a, b]))
    g2 = 2 + i - bnd
    return g2 // 2, bnd


def farey_class(a: NormalCurve, b: NormalCurve) -> str:
    if a == b or intersection_number(a, b) == 0:
        return NO
    g, bnd = neighbourhood_type(a, b)
    if (g, bnd) == (0, 4):
        return SPHERICAL
    if (g, bnd) == (1, 1):
        return TOROIDAL
    return NO


# peripheral pairs and pairs of pants --------------------------------------------------------------


def peripheral_pair(a: NormalCurve, b: NormalCurve) -> bool:
    """``a`` and ``b`` cobound a once-punctured annulus."""
    if a == b or intersection_number(a, b):
        return False
    return any(p.signature == (0, 2, 1) for p in _pants_pieces([a, b]))


def bound_pair_of_pants(a: NormalCurve, b: NormalCurve, c: NormalCurve) -> bool:
    cs = [a, b, c]
    if not is_multicurve(cs):
        return False
    want = {x.weights for x in cs}
    for p in _pants_pieces(cs):
        if p.signature != (0, 3, 0):
            continue
        got = [x.weights for x in p.essential_pushoffs()]
        if len(got) == 3 and set(got) == want:
            return True
    return False


def is_separating(c: NormalCurve) -> bool:
    return curve_type(c).kind != "nonseparating"


# bounded-weight enumeration ----------------------------------------------------------------------


def _edge_order(tri: Triangulation) -> tuple[list[int], dict[int, list[int]]]:
    """Edges in an order that closes triangles early, and triangles closed at each step."""
    order: list[int] = []
    seen: set[int] = set()
    closes: dict[int, list[int]] = {}
    for t in range(tri.num_triangles):
        for s in range(3):
            e = tri.edge_of[side(t, s)]
            if e not in seen:
                seen.add(e)
                order.append(e)
    pos = {e: k for k, e in enumerate(order)}
    for t in range(tri.num_triangles):
        last = max(pos[tri.edge_of[side(t, s)]] for s in range(3))
        closes.setdefault(last, []).append(t)
    return order, closes


def normal_vectors(tri: Triangulation, max_weight: int) -> Iterator[tuple[int, ...]]:
    """All nonzero normal multicurve vectors of total weight at most ``max_weight``."""
    order, closes = _edge_order(tri)
    w = [0] * tri.num_edges
    eo = tri.edge_of

    def ok(t: int) -> bool:
        x = [w[eo[side(t, s)]] for s in range(3)]
        if sum(x) % 2:
            return False
        return all(x[(v - 1) % 3] + x[v] >= x[(v + 1) % 3] for v in range(3))

    def rec(k: int, budget: int):
        if k == len(order):
            if any(w):
                yield tuple(w)
            return
        e = order[k]
        for val in range(budget + 1):
            w[e] = val
            if all(ok(t) for t in closes.get(k, ())):
                yield from rec(k + 1, budget - val)
        w[e] = 0

    yield from rec(0, max_weight)


def curves_up_to_weight(tri: Triangulation, max_weight: int) -> list[NormalCurve]:
    out = []
    for w in normal_vectors(tri, max_weight):
        if validate(tri, w) is None and is_essential_curve(tri, w):
            out.append(NormalCurve(tri, w, check=False))
    return sorted(out)


def pants_decompositions(curves: Sequence[NormalCurve], only_nonseparating: bool = False) -> Iterator[tuple[NormalCurve, ...]]:
    """Pants decompositions drawn from ``curves``, as maximal cliques of the disjointness graph."""
    pool = [c for c in curves if not (only_nonseparating and is_separating(c))]
    if not pool:
        return
    k = kappa(pool[0].tri)
    G = nx.Graph()
    G.add_nodes_from(range(len(pool)))
    for a, b in itertools.combinations(range(len(pool)), 2):
        if intersection_number(pool[a], pool[b]) == 0:
            G.add_edge(a, b)
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) < k:
            continue
        if len(clique) > k:
            break
        P = tuple(pool[i] for i in clique)
        if is_pants(P):
            yield P


@dataclass
class SweepResult:
    surface: str
    max_weight: int
    pool: int
    checked: int
    failures: list
    relevant: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "surface": self.surface,
            "max_weight": self.max_weight,
            "pool": self.pool,
            "checked": self.checked,
            "failures": len(self.failures),
            "relevant": self.relevant,
        }


def _pool(tri: Triangulation, max_weight: int, extra: Iterable[NormalCurve]) -> list[NormalCurve]:
    return sorted(set(curves_up_to_weight(tri, max_weight)) | set(extra))


def sweep_cycle_characterization(
    tri: Triangulation, max_weight: int, limit: int | None = None, extra: Iterable[NormalCurve] = ()
) -> SweepResult:
    """All-nonseparating pants decompositions: cycle adjacency graph exactly in genus one."""
    pool = _pool(tri, max_weight, extra)
    checked, relevant, failures = 0, 0, []
    for P in pants_decompositions(pool, only_nonseparating=True):
        cyc = is_cycle_graph(adjacency_graph(P))
        relevant += cyc
        if cyc != (tri.genus == 1):
            failures.append([list(c.weights) for c in P])
        checked += 1
        if limit is not None and checked >= limit:
            break
    return SweepResult(str(tri.spec), max_weight, len(pool), checked, failures, relevant)


def sweep_separating_triangles(
    tri: Triangulation, max_weight: int, limit: int | None = None, extra: Iterable[NormalCurve] = ()
) -> SweepResult:
    """Pairwise adjacent triples with two separating members have a separating third."""
    pool = _pool(tri, max_weight, extra)
    checked, relevant, failures = 0, 0, []
    for P in pants_decompositions(pool):
        G = adjacency_graph(P)
        sep = [is_separating(c) for c in P]
        for tri3 in (c for c in nx.enumerate_all_cliques(G) if len(c) == 3):
            checked += 1
            if sum(sep[v] for v in tri3) >= 2:
                relevant += 1
                if not all(sep[v] for v in tri3):
                    failures.append([list(P[v].weights) for v in tri3])
        if limit is not None and checked >= limit:
            break
    return SweepResult(str(tri.spec), max_weight, len(pool), checked, failures, relevant)


def graph_to_dot(G: nx.Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, data in sorted(G.nodes(data=True)):
        lines.append(f'  {v} [label="{data.get("label", v)}"];')
    for a, b in sorted(tuple(sorted(e)) for e in G.edges()):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
