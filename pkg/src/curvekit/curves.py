"""Simple closed curves in normal coordinates.

A curve is stored as its vector of edge weights on a fixed triangulation.  The
combinatorial workhorse is the *dual walk*: the cyclic list of sides a curve
leaves its triangles through.  Walks are reduced by cancelling immediate
backtracks; the cyclically reduced walk of a closed curve is unique up to
rotation and reversal in its free homotopy class, which gives a clean test for
simplicity and essentiality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .triangulation import Triangulation, loc, side, tri_of


class CurveError(ValueError):
    """Raised when coordinates or walks do not describe an essential simple curve."""


@dataclass(frozen=True)
class Violation:
    triangle: int
    reason: str

    def __str__(self) -> str:
        return f"triangle {self.triangle}: {self.reason}"


def validate(tri: Triangulation, weights: Sequence[int]) -> Violation | None:
    """Check parity and corner positivity; ``None`` means the vector is valid."""
    if len(weights) != tri.num_edges:
        raise CurveError(f"expected {tri.num_edges} weights, got {len(weights)}")
    for t in range(tri.num_triangles):
        x = [weights[tri.edge_of[side(t, s)]] for s in range(3)]
        if min(x) < 0:
            return Violation(t, f"negative weight in {x}")
        if sum(x) % 2:
            return Violation(t, f"odd side sum {x}")
        for v in range(3):
            if x[(v - 1) % 3] + x[v] < x[(v + 1) % 3]:
                return Violation(t, f"negative corner count at vertex {v} for {x}")
    return None


# walks ------------------------------------------------------------------------------


def reverse_walk(tri: Triangulation, walk: Sequence[int]) -> tuple[int, ...]:
    g = tri.gluing
    return tuple(g[x] for x in reversed(walk))


def is_closed_walk(tri: Triangulation, walk: Sequence[int]) -> bool:
    g = tri.gluing
    L = len(walk)
    return all(tri_of(walk[(k + 1) % L]) == tri_of(g[walk[k]]) for k in range(L))


def reduce_walk(tri: Triangulation, walk: Sequence[int]) -> tuple[int, ...]:
    """Cancel backtracks, then cyclically reduce."""
    g = tri.gluing
    stack: list[int] = []
    for x in walk:
        if stack and g[stack[-1]] == x:
            stack.pop()
        else:
            stack.append(x)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and g[stack[hi - 1]] == stack[lo]:
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi])


def walk_weights(tri: Triangulation, walk: Iterable[int]) -> tuple[int, ...]:
    w = [0] * tri.num_edges
    for x in walk:
        w[tri.edge_of[x]] += 1
    return tuple(w)


def _occurs(pattern: Sequence[int], text: Sequence[int]) -> bool:
    """Knuth-Morris-Pratt substring test on integer sequences."""
    if not pattern:
        return True
    fail = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k and pattern[i] != pattern[k]:
            k = fail[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        fail[i] = k
    k = 0
    for c in text:
        while k and c != pattern[k]:
            k = fail[k - 1]
        if c == pattern[k]:
            k += 1
            if k == len(pattern):
                return True
    return False


def same_cycle(tri: Triangulation, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether two walks agree up to rotation and reversal."""
    if len(a) != len(b):
        return False
    doubled = tuple(b) + tuple(b)
    return _occurs(tuple(a), doubled) or _occurs(reverse_walk(tri, a), doubled)


# tracing --------------------------------------------------------------------------------


def _next_in_triangle(x: Sequence[int], c: Sequence[int], s: int, p: int) -> tuple[int, int]:
    """Side and position reached inside a triangle from position ``p`` on side ``s``."""
    if p < c[s]:
        s2 = (s - 1) % 3
        return s2, x[s2] - 1 - p
    s2 = (s + 1) % 3
    return s2, x[s] - 1 - p


def trace(tri: Triangulation, weights: Sequence[int]) -> list[tuple[int, ...]]:
    """Components of the normal multicurve, each as a walk of exit sides."""
    bad = validate(tri, weights)
    if bad is not None:
        raise CurveError(str(bad))
    return list(_trace_cached(tri, tuple(weights)))


@lru_cache(maxsize=65536)
def _trace_cached(tri: Triangulation, weights: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    g = tri.gluing
    eo = tri.edge_of
    seen = {}
    comps = []
    for e in range(tri.num_edges):
        m = weights[e]
        if not m:
            continue
        x0 = tri.edge_side[e]
        used = seen.setdefault(e, bytearray(m))
        for p0 in range(m):
            if used[p0]:
                continue
            # enter the triangle of side x0 at position p0
            walk = []
            x, p = x0, p0
            while True:
                ex = eo[x]
                pe = p if x < g[x] else weights[ex] - 1 - p
                seen.setdefault(ex, bytearray(weights[ex]))[pe] = 1
                t, s = divmod(x, 3)
                xs = [weights[eo[3 * t + k]] for k in range(3)]
                cs = [(xs[(v - 1) % 3] + xs[v] - xs[(v + 1) % 3]) // 2 for v in range(3)]
                s2, p2 = _next_in_triangle(xs, cs, s, p)
                out = 3 * t + s2
                walk.append(out)
                ey = eo[out]
                pe = p2 if out < g[out] else weights[ey] - 1 - p2
                seen.setdefault(ey, bytearray(weights[ey]))[pe] = 1
                y = g[out]
                p = xs[s2] - 1 - p2
                x = y
                if x == x0 and p == p0:
                    break
            comps.append(tuple(walk))
    return tuple(comps)


# curves --------------------------------------------------------------------------------------


class NormalCurve:
    """An essential simple closed curve, keyed by its normal coordinates."""

    __slots__ = ("tri", "weights", "label", "_hash")

    def __init__(self, tri: Triangulation, weights: Sequence[int], label: str | None = None, check: bool = True):
        self.tri = tri
        self.weights = tuple(int(w) for w in weights)
        self.label = label
        self._hash = hash(self.weights)
        if check and not is_essential_curve(tri, self.weights):
            raise CurveError(f"weights {self.weights} are not an essential simple closed curve")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalCurve):
            return NotImplemented
        return self.weights == other.weights and (self.tri is other.tri or self.tri == other.tri)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "NormalCurve") -> bool:
        return (sum(self.weights), self.weights) < (sum(other.weights), other.weights)

    def __repr__(self) -> str:
        name = f"{self.label}: " if self.label else ""
        return f"NormalCurve({name}{list(self.weights)})"

    @property
    def walk(self) -> tuple[int, ...]:
        return _trace_cached(self.tri, self.weights)[0]

    @property
    def length(self) -> int:
        return sum(self.weights)

    def named(self, label: str | None) -> "NormalCurve":
        return NormalCurve(self.tri, self.weights, label, check=False)

    def to_json(self) -> dict:
        d = {"surface": [self.tri.genus, self.tri.num_punctures], "weights": list(self.weights)}
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, tri: Triangulation, data: dict) -> "NormalCurve":
        if list(data["surface"]) != [tri.genus, tri.num_punctures]:
            raise CurveError("curve record belongs to a different surface")
        return cls(tri, data["weights"], data.get("label"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def is_peripheral_weights(tri: Triangulation, weights: Sequence[int]) -> bool:
    w = tuple(weights)
    return any(w == tri.puncture_link_weights(p) for p in range(tri.num_punctures))


def is_essential_curve(tri: Triangulation, weights: Sequence[int]) -> bool:
    """Exactly one component, nonzero, and not the link of a puncture."""
    if not any(weights) or validate(tri, weights) is not None:
        return False
    if len(_trace_cached(tri, tuple(weights))) != 1:
        return False
    return not is_peripheral_weights(tri, weights)


def curve_from_walk(tri: Triangulation, walk: Sequence[int], label: str | None = None) -> NormalCurve:
    """Curve freely homotopic to a closed dual walk; the walk must be simple."""
    if not is_closed_walk(tri, walk):
        raise CurveError("walk is not a closed path in the dual graph")
    red = reduce_walk(tri, walk)
    if not red:
        raise CurveError("walk is null-homotopic")
    w = walk_weights(tri, red)
    if validate(tri, w) is not None:
        raise CurveError("reduced walk is not simple")
    comps = _trace_cached(tri, w)
    if len(comps) != 1 or not same_cycle(tri, comps[0], red):
        raise CurveError("reduced walk is not simple")
    if is_peripheral_weights(tri, w):
        raise CurveError("walk is peripheral")
    return NormalCurve(tri, w, label, check=False)


def puncture_link(tri: Triangulation, p: int) -> tuple[int, ...]:
    return tri.puncture_link_weights(p)


# intersection ------------------------------------------------------------------------------------


def strand_ranks(tri: Triangulation, walks: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rank of crossing ``k`` of walk ``i`` along the canonical side of its edge.

    The order is the geodesic one, so all walks are pairwise in minimal
    position.
    """
    from .geodesic import edge_orders

    ranks = [[0] * len(w) for w in walks]
    for strands in edge_orders(tri, walks).values():
        for r, (ci, k) in enumerate(strands):
            ranks[ci][k] = r
    return ranks


def local_position(tri: Triangulation, counts: Sequence[int], x: int, rank: int) -> int:
    """Position, from the start vertex of side ``x``, of the strand with ``rank``."""
    return rank if tri.is_canonical(x) else counts[tri.edge_of[x]] - 1 - rank


def triangle_chords(tri: Triangulation, walks, ranks, counts):
    """Chords per triangle as ``(walk, passage, entry coord, exit coord)``.

    Boundary coordinates run counter-clockwise: corner 0, the points of side 0,
    corner 1, the points of side 1, corner 2, the points of side 2.
    """
    g = tri.gluing
    chords: dict[int, list] = {}
    for ci, w in enumerate(walks):
        L = len(w)
        for k in range(L):
            x_in = g[w[k - 1]]
            x_out = w[k]
            t = tri_of(x_out)
            off = _offsets(tri, counts, t)
            a = off[loc(x_in)] + 1 + local_position(tri, counts, x_in, ranks[ci][k - 1])
            b = off[loc(x_out)] + 1 + local_position(tri, counts, x_out, ranks[ci][k])
            chords.setdefault(t, []).append((ci, k, a, b))
    return chords


def _offsets(tri: Triangulation, counts: Sequence[int], t: int) -> tuple[int, int, int]:
    m = [counts[tri.edge_of[side(t, s)]] for s in range(3)]
    return (0, m[0] + 1, m[0] + m[1] + 2)


def interleave(a1: int, a2: int, b1: int, b2: int) -> bool:
    lo, hi = (a1, a2) if a1 < a2 else (a2, a1)
    return (lo < b1 < hi) != (lo < b2 < hi)


def intersection_number(a: NormalCurve, b: NormalCurve) -> int:
    """Geometric intersection number, with ``i(a, a) = 0``."""
    if a.tri is not b.tri and a.tri != b.tri:
        raise CurveError("curves live on different triangulations")
    if a.weights == b.weights:
        return 0
    return _intersection_cached(a.tri, a.weights, b.weights)


@lru_cache(maxsize=262144)
def _intersection_cached(tri: Triangulation, wa: tuple[int, ...], wb: tuple[int, ...]) -> int:
    if wb < wa:
        return _intersection_cached(tri, wb, wa)
    walks = [_trace_cached(tri, wa)[0], _trace_cached(tri, wb)[0]]
    counts = [x + y for x, y in zip(wa, wb)]
    ranks = strand_ranks(tri, walks)
    total = 0
    for chords in triangle_chords(tri, walks, ranks, counts).values():
        ca = [c for c in chords if c[0] == 0]
        cb = [c for c in chords if c[0] == 1]
        for _, _, a1, a2 in ca:
            for _, _, b1, b2 in cb:
                if interleave(a1, a2, b1, b2):
                    total += 1
    return total


def is_disjoint(a: NormalCurve, b: NormalCurve) -> bool:
    """Adjacency in the curve graph: distinct and disjoint."""
    return a.weights != b.weights and intersection_number(a, b) == 0


def topological_type(a: NormalCurve):
    """Classification of ``a`` from its complement; see :class:`overlay.CurveType`."""
    from .overlay import curve_type

    return curve_type(a)


def outer_curve_of_arc(
    tri: Triangulation, start_corner: int, darts: Sequence[int], end_corner: int, label: str | None = None
) -> NormalCurve:
    """Boundary of a regular neighbourhood of an arc between two punctures.

    The arc leaves the puncture at ``start_corner`` (a corner id ``3t+v``),
    crosses ``darts`` and ends at ``end_corner``.  The neighbourhood boundary
    runs along the arc, once around the end puncture, back along the arc and
    once around the start puncture.
    """
    if tri.corner_punctures[start_corner] == tri.corner_punctures[end_corner]:
        raise CurveError("arc endpoints must be distinct punctures")
    back = reverse_walk(tri, darts)
    ccw_end, ccw_start = tri.link_walk(end_corner), tri.link_walk(start_corner)
    last = None
    for around_end, around_start in (
        (ccw_end, ccw_start),
        (reverse_walk(tri, ccw_end), reverse_walk(tri, ccw_start)),
    ):
        walk = tuple(darts) + tuple(around_end) + back + tuple(around_start)
        try:
            c = curve_from_walk(tri, walk, label)
        except CurveError as exc:
            last = exc
            continue
        return c
    raise CurveError(f"arc neighbourhood is not a simple curve: {last}")
