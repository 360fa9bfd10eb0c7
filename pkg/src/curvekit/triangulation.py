"""Ideal triangulations of punctured surfaces.

Sides are numbered ``3*t + s`` for triangle ``t`` and local side ``s``.  The
vertices of every triangle are listed counter-clockwise and side ``s`` runs
from local vertex ``s`` to local vertex ``s+1``.  Corner ``3*t + v`` is the
corner of triangle ``t`` at local vertex ``v``; it sits between sides ``v-1``
and ``v``.  Gluings reverse orientation, so the start of a side is matched with
the end of its partner.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class SurfaceError(ValueError):
    """Raised for surfaces or triangulations outside the supported range."""


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: int

    def __post_init__(self) -> None:
        g, n = self.genus, self.punctures
        if g not in (0, 1, 2):
            raise SurfaceError(f"genus {g} unsupported; only genus 0, 1, 2")
        if g == 2 and n == 0:
            raise SurfaceError(
                "S_{2,0} has no ideal triangulation; its curve graph is "
                "isomorphic to that of S_{0,6}, use --surface 0,6"
            )
        if n < 1:
            raise SurfaceError("at least one puncture is required")
        if 3 * g - 3 + n < 2:
            raise SurfaceError(f"complexity 3g-3+n = {3 * g - 3 + n} < 2")

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        try:
            g, n = (int(x) for x in text.replace(" ", "").split(","))
        except ValueError:
            raise SurfaceError(f"surface must be written genus,punctures (e.g. 0,5), not {text!r}") from None
        return cls(g, n)

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.punctures}}}"


def side(t: int, s: int) -> int:
    return 3 * t + (s % 3)


def tri_of(x: int) -> int:
    return x // 3


def loc(x: int) -> int:
    return x % 3


class Triangulation:
    """Immutable combinatorial ideal triangulation.

    ``gluing[x]`` is the partner of side ``x``.  ``corner_punctures`` gives the
    puncture label of every corner; when omitted, vertex classes are numbered
    in order of first appearance.
    """

    def __init__(
        self,
        gluing: Sequence[int],
        corner_punctures: Sequence[int] | None = None,
        edge_names: Sequence[str | None] | None = None,
    ) -> None:
        gluing = tuple(int(x) for x in gluing)
        m = len(gluing)
        if m == 0 or m % 3:
            raise SurfaceError("side count must be a positive multiple of 3")
        for x, y in enumerate(gluing):
            if not 0 <= y < m or y == x or gluing[y] != x:
                raise SurfaceError(f"gluing is not a fixed-point-free involution at side {x}")
        self.gluing = gluing
        classes = self._corner_classes()
        if corner_punctures is None:
            corner_punctures = classes
        else:
            corner_punctures = tuple(int(p) for p in corner_punctures)
            if len(corner_punctures) != m:
                raise SurfaceError("one puncture label per corner required")
            rel: dict[int, int] = {}
            for c, k in zip(classes, corner_punctures):
                if rel.setdefault(c, k) != k:
                    raise SurfaceError("puncture labels do not respect corner cycles")
            if len(set(rel.values())) != len(rel):
                raise SurfaceError("distinct corner cycles share a puncture label")
            if sorted(rel.values()) != list(range(len(rel))):
                raise SurfaceError("puncture labels must be 0..n-1")
        self.corner_punctures = tuple(corner_punctures)
        if edge_names is None:
            edge_names = (None,) * (m // 2)
        if len(edge_names) != m // 2:
            raise SurfaceError("one name per edge required")
        self.edge_names = tuple(edge_names)
        chi = self.num_triangles - self.num_edges
        g2 = 2 - chi - self.num_punctures
        if g2 < 0 or g2 % 2:
            raise SurfaceError("inconsistent Euler characteristic")
        if not self._connected():
            raise SurfaceError("triangulation is disconnected")

    # basic counts -----------------------------------------------------------
    @property
    def num_sides(self) -> int:
        return len(self.gluing)

    @property
    def num_triangles(self) -> int:
        return len(self.gluing) // 3

    @property
    def num_edges(self) -> int:
        return len(self.gluing) // 2

    @cached_property
    def num_punctures(self) -> int:
        return max(self.corner_punctures) + 1

    @cached_property
    def genus(self) -> int:
        return (2 - (self.num_triangles - self.num_edges) - self.num_punctures) // 2

    @property
    def euler(self) -> int:
        return self.num_triangles - self.num_edges

    @property
    def spec(self) -> SurfaceSpec:
        return SurfaceSpec(self.genus, self.num_punctures)

    @cached_property
    def key(self) -> tuple:
        return (self.gluing, self.corner_punctures)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Triangulation) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Triangulation(genus={self.genus}, punctures={self.num_punctures}, triangles={self.num_triangles})"

    # edges --------------------------------------------------------------------
    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        """Edge id of every side; edges are numbered by their smaller side."""
        reps = sorted(x for x in range(self.num_sides) if x < self.gluing[x])
        index = {x: i for i, x in enumerate(reps)}
        return tuple(index[min(x, self.gluing[x])] for x in range(self.num_sides))

    @cached_property
    def edge_side(self) -> tuple[int, ...]:
        """Canonical (smaller) side of every edge."""
        return tuple(sorted(x for x in range(self.num_sides) if x < self.gluing[x]))

    def edge_index(self, name: str) -> int:
        return self.edge_names.index(name)

    def is_canonical(self, x: int) -> bool:
        return x < self.gluing[x]

    # corners and punctures ------------------------------------------------------
    def _corner_classes(self) -> tuple[int, ...]:
        m = len(self.gluing)
        parent = list(range(m))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x in range(m):
            t, s = divmod(x, 3)
            y = self.gluing[x]
            u, r = divmod(y, 3)
            # start of side x meets end of side y and vice versa
            for a, b in ((side(t, s), side(u, r + 1)), (side(t, s + 1), side(u, r))):
                fa, fb = find(a), find(b)
                if fa != fb:
                    parent[fa] = fb
        labels: dict[int, int] = {}
        out = []
        for c in range(m):
            out.append(labels.setdefault(find(c), len(labels)))
        return tuple(out)

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for s in range(3):
                u = tri_of(self.gluing[side(t, s)])
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.num_triangles

    @cached_property
    def corner_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Corners grouped by puncture, in counter-clockwise link order."""
        out = []
        for p in range(self.num_punctures):
            start = self.corner_punctures.index(p)
            out.append(tuple(c for c, _ in self.link_steps(start)))
        return tuple(out)

    def link_steps(self, corner: int) -> list[tuple[int, int]]:
        """Walk once counter-clockwise around the vertex at ``corner``.

        Returns (corner, side crossed when leaving it) pairs, starting at the
        given corner.
        """
        out = []
        c = corner
        while True:
            t, v = divmod(c, 3)
            x = side(t, v - 1)
            out.append((c, x))
            y = self.gluing[x]
            c = side(tri_of(y), loc(y))
            if c == corner:
                return out

    def link_walk(self, corner: int) -> list[int]:
        """Dual walk (sides crossed) of the counter-clockwise link of a corner."""
        return [x for _, x in self.link_steps(corner)]

    def puncture_link_weights(self, p: int) -> tuple[int, ...]:
        w = [0] * self.num_edges
        for c in self.corner_cycles[p]:
            t, v = divmod(c, 3)
            w[self.edge_of[side(t, v - 1)]] += 1
        return tuple(w)

    def corner_counts(self, weights: Sequence[int], t: int) -> tuple[int, int, int]:
        """Normal arc counts around the three corners of triangle ``t``.

        Values are floored halves, so they are only meaningful when the
        triangle's weight sum is even and the triangle inequalities hold;
        otherwise some count comes out negative or rounded.
        """
        x = [weights[self.edge_of[side(t, s)]] for s in range(3)]
        return tuple((x[(v - 1) % 3] + x[v] - x[(v + 1) % 3]) // 2 for v in range(3))

    # serialization ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.num_punctures,
            "triangles": [[side(t, s) for s in range(3)] for t in range(self.num_triangles)],
            "gluing": [[x, self.gluing[x]] for x in range(self.num_sides) if x < self.gluing[x]],
            "puncture_labels": list(self.corner_punctures),
            "edge_names": list(self.edge_names),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        m = 3 * len(data["triangles"])
        gl = [-1] * m
        for a, b in data["gluing"]:
            gl[a], gl[b] = b, a
        tri = cls(gl, data.get("puncture_labels"), data.get("edge_names"))
        if tri.genus != data["genus"] or tri.num_punctures != data["punctures"]:
            raise SurfaceError("recomputed (g, n) differs from the declared surface")
        return tri


def invariants_report(tri: Triangulation) -> dict:
    g, n = tri.genus, tri.num_punctures
    return {
        "genus": g,
        "punctures": n,
        "euler": tri.euler,
        "complexity": 3 * g - 3 + n,
        "triangles": tri.num_triangles,
        "edges": tri.num_edges,
        "corner_cycles": len(tri.corner_cycles),
    }


# flips -----------------------------------------------------------------------------


@dataclass(frozen=True)
class FlipTransfer:
    """Coordinate transfer across a flip of ``edge``.

    ``opposite`` holds the two pairs of opposite quadrilateral sides; the new
    weight of the flipped edge is ``max(a+c, b+d) - e``.
    """

    edge: int
    opposite: tuple[tuple[int, int], tuple[int, int]]

    def __call__(self, weights: Sequence[int]) -> tuple[int, ...]:
        w = list(weights)
        (a, c), (b, d) = self.opposite
        w[self.edge] = max(w[a] + w[c], w[b] + w[d]) - w[self.edge]
        return tuple(w)


def is_flippable(tri: Triangulation, edge: int) -> bool:
    x = tri.edge_side[edge]
    return tri_of(x) != tri_of(tri.gluing[x])


def flip(tri: Triangulation, edge: int) -> tuple[Triangulation, FlipTransfer]:
    """Flip ``edge``; edge ids of the result are kept stable."""
    if not 0 <= edge < tri.num_edges:
        raise SurfaceError(f"no edge {edge}")
    x = tri.edge_side[edge]
    y = tri.gluing[x]
    t, s = divmod(x, 3)
    u, r = divmod(y, 3)
    if t == u:
        raise SurfaceError(f"edge {edge} is self-folded and cannot be flipped")
    gl = tri.gluing
    cp = tri.corner_punctures
    # quadrilateral Q R P U (counter-clockwise); old diagonal P Q, new R U
    QR, RP = side(t, s + 1), side(t, s + 2)
    PU, UQ = side(u, r + 1), side(u, r + 2)
    P, Q, R = cp[side(t, s)], cp[side(t, s + 1)], cp[side(t, s + 2)]
    U = cp[side(u, r + 2)]
    # new t = (R, P, U): sides RP, PU, UR ; new u = (U, Q, R): sides UQ, QR, RU
    moved = {RP: side(t, 0), PU: side(t, 1), UQ: side(u, 0), QR: side(u, 1)}
    new = list(gl)
    for old, nw in moved.items():
        partner = gl[old]
        new[nw] = moved.get(partner, partner)
        if partner not in moved:
            new[partner] = nw
    new[side(t, 2)] = side(u, 2)
    new[side(u, 2)] = side(t, 2)
    corners = list(cp)
    corners[side(t, 0)], corners[side(t, 1)], corners[side(t, 2)] = R, P, U
    corners[side(u, 0)], corners[side(u, 1)], corners[side(u, 2)] = U, Q, R
    # keep edge ids: map every edge's new canonical side back to its old id
    names = list(tri.edge_names)
    out = Triangulation(new, corners)
    old_edge_of_side = {}
    for o in range(tri.num_sides):
        nw = moved.get(o, o)
        if o in (x, y):
            continue
        old_edge_of_side[nw] = tri.edge_of[o]
    old_edge_of_side[side(t, 2)] = edge
    old_edge_of_side[side(u, 2)] = edge
    relabel = [0] * tri.num_edges
    for nw, e_old in old_edge_of_side.items():
        relabel[out.edge_of[nw]] = e_old
    # ``relabel`` maps new edge index -> stable edge id; rebuild with stable ids
    out = _with_edge_ids(out, relabel, names)
    e = tri.edge_of
    transfer = FlipTransfer(edge, ((e[QR], e[PU]), (e[RP], e[UQ])))
    return out, transfer


def _with_edge_ids(tri: Triangulation, ids: Sequence[int], names: Sequence[str | None]) -> "RelabeledTriangulation":
    return RelabeledTriangulation(tri.gluing, tri.corner_punctures, ids, names)


class RelabeledTriangulation(Triangulation):
    """Triangulation whose edge ids follow an explicit permutation."""

    def __init__(self, gluing, corner_punctures, ids, names):
        self._ids = tuple(ids)
        super().__init__(gluing, corner_punctures, names)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        base = Triangulation.edge_of.func(self)
        return tuple(self._ids[b] for b in base)

    @cached_property
    def edge_side(self) -> tuple[int, ...]:
        out = [0] * self.num_edges
        for x in range(self.num_sides):
            if x < self.gluing[x]:
                out[self.edge_of[x]] = x
        return tuple(out)

    @cached_property
    def key(self) -> tuple:
        return (self.gluing, self.corner_punctures, self._ids)

    def to_json(self) -> dict:
        d = super().to_json()
        d["edge_ids"] = list(self.edge_of)
        return d


def flip_sequence(tri: Triangulation, edges: Iterable[int]):
    transfers = []
    for e in edges:
        tri, tr = flip(tri, e)
        transfers.append(tr)
    return tri, transfers


# base triangulations -------------------------------------------------------------


def _genus0(n: int) -> Triangulation:
    """Double n-gon, both halves fan-triangulated from polygon vertex 0.

    Upper half triangles ``T_j = (0, j, j+1)`` for ``1 <= j <= n-2`` have
    index ``j-1``; lower half triangles ``T'_j = (0, j+1, j)`` have index
    ``n-3+j``.  Seam edge ``a_j`` joins polygon vertices ``j`` and ``j+1``
    (``a_{n-1}`` joins ``n-1`` and ``0``).  Puncture ``p`` is polygon vertex
    ``p``.
    """
    m = n - 2
    up = lambda j: j - 1  # noqa: E731
    lo = lambda j: m + j - 1  # noqa: E731
    gl = [-1] * (6 * m)
    names: dict[int, str] = {}

    def glue(a: int, b: int, name: str) -> None:
        gl[a], gl[b] = b, a
        names[min(a, b)] = name

    for j in range(1, n - 1):
        glue(side(up(j), 1), side(lo(j), 1), f"a_{j}")
    glue(side(up(1), 0), side(lo(1), 2), "a_0")
    glue(side(up(m), 2), side(lo(m), 0), f"a_{n - 1}")
    for j in range(1, m):
        glue(side(up(j), 2), side(up(j + 1), 0), f"b_{{0,{j + 1}}}")
        glue(side(lo(j), 0), side(lo(j + 1), 2), f"c_{{0,{j + 1}}}")
    corners = [0] * (6 * m)
    for j in range(1, n - 1):
        corners[3 * up(j): 3 * up(j) + 3] = [0, j, j + 1]
        corners[3 * lo(j): 3 * lo(j) + 3] = [0, j + 1, j]
    return _named(gl, corners, names)


def _genus1(n: int) -> Triangulation:
    """Torus ``[0,n] x [0,1]`` with punctures ``P_i = (i, 0)``.

    Square ``i`` is cut by the diagonal ``d_i`` from ``(i,0)`` to ``(i+1,1)``
    into a lower triangle (index ``2i``) with sides ``h_i, v_{i+1}, d_i`` and an
    upper triangle (index ``2i+1``) with sides ``d_i, h_i, v_i``.  ``h_i`` is
    the horizontal edge from ``P_i`` to ``P_{i+1}`` and ``v_i`` the vertical
    loop at ``P_i``.
    """
    gl = [-1] * (6 * n)
    names: dict[int, str] = {}

    def glue(a: int, b: int, name: str) -> None:
        gl[a], gl[b] = b, a
        names[min(a, b)] = name

    corners = []
    for i in range(n):
        lower, upper = 2 * i, 2 * i + 1
        glue(side(lower, 0), side(upper, 1), f"h_{i}")
        glue(side(lower, 2), side(upper, 0), f"d_{i}")
        glue(side(lower, 1), side(2 * ((i + 1) % n) + 1, 2), f"v_{(i + 1) % n}")
        corners += [i, (i + 1) % n, (i + 1) % n, i, (i + 1) % n, i]
    return _named(gl, corners, names)


def polygon_triangulation(word: Sequence[str], corner_labels: Sequence[int] | None = None) -> Triangulation:
    """Fan triangulation (from vertex 0) of a polygon with paired sides.

    ``word`` lists the polygon sides counter-clockwise; a side ``x`` is glued to
    the side ``x'`` (the same letter followed by a prime) with reversed
    orientation.  Diagonals are named ``p_j`` after their far vertex.
    """
    N = len(word)
    m = N - 2
    gl = [-1] * (3 * m)
    names: dict[int, str] = {}

    def glue(a: int, b: int, name: str) -> None:
        gl[a], gl[b] = b, a
        names[min(a, b)] = name

    # polygon side k (vertex k -> k+1) lies in triangle max(0, min(k-1, m-1))
    slot = {}
    for k in range(N):
        if k == 0:
            slot[k] = side(0, 0)
        elif k == N - 1:
            slot[k] = side(m - 1, 2)
        else:
            slot[k] = side(k - 1, 1)
    for j in range(1, m):
        glue(side(j - 1, 2), side(j, 0), f"p_{j + 1}")
    where = {w: k for k, w in enumerate(word)}
    if len(where) != N:
        raise SurfaceError("polygon side labels must be distinct")
    for k, w in enumerate(word):
        if w.endswith("'"):
            continue
        partner = where.get(w + "'")
        if partner is None:
            raise SurfaceError(f"side {w} has no partner")
        glue(slot[k], slot[partner], w)
    tri = Triangulation(gl)
    if corner_labels is not None:
        tri = Triangulation(gl, corner_labels)
    return _named(list(tri.gluing), list(tri.corner_punctures), names)


def _named(gl: Sequence[int], corners: Sequence[int], by_side: dict[int, str]) -> Triangulation:
    probe = Triangulation(gl, corners)
    names = [by_side.get(x) for x in probe.edge_side]
    return Triangulation(gl, corners, names)


def build_base_triangulation(spec: SurfaceSpec) -> Triangulation:
    """Deterministic base triangulation for ``spec``."""
    if spec.genus == 0:
        tri = _genus0(spec.punctures)
    elif spec.genus == 1:
        tri = _genus1(spec.punctures)
    else:
        from .constructions.genus2 import base_triangulation

        tri = base_triangulation(spec.punctures)
    assert tri.spec == spec, (tri.spec, spec)
    return tri
