"""Realizing curve systems and cutting the surface along them.

Every curve is drawn as straight chords inside the triangles, with its points
on each edge placed according to a strand order (geodesic by default, which
puts all pairs in minimal position).  Inside a triangle the boundary points are
put on a convex arc, so two chords cross exactly when their endpoints
interleave.  The resulting fine cell complex is traced face by face, and faces
are glued across the triangulation edges into the pieces of the complement.

Curves can be marked inactive ("transparent") when asking for a complement:
their chords then no longer separate faces.  This lets one realization of a
pool of curves answer complement questions for every subset of the pool.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .curves import (
    CurveError,
    NormalCurve,
    _trace_cached,
    curve_from_walk,
    interleave,
    is_peripheral_weights,
    reduce_walk,
    strand_ranks,
    walk_weights,
)
from .triangulation import Triangulation, loc, side, tri_of


class OverlayError(RuntimeError):
    """Internal consistency failure of an overlay (a bug, not bad input)."""


@dataclass(frozen=True)
class ComplementPiece:
    genus: int
    boundary_count: int
    puncture_count: int
    euler: int
    boundary_pushoffs: tuple[NormalCurve | None, ...]
    punctures: tuple[int, ...] = ()

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.genus, self.boundary_count, self.puncture_count)

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.boundary_count + self.puncture_count

    def essential_pushoffs(self) -> list[NormalCurve]:
        return [c for c in self.boundary_pushoffs if c is not None]


def naive_ranks(tri: Triangulation, walks: Sequence[Sequence[int]]) -> list[list[int]]:
    """Curve 0's strands first on every edge, then curve 1's, and so on.

    Within one curve the strands keep their normal-position order, so each
    curve stays embedded; different curves may form bigons.
    """
    offset = [0] * tri.num_edges
    ranks = []
    for w in walks:
        own = _normal_ranks(tri, tuple(w))
        ranks.append([offset[tri.edge_of[x]] + r for x, r in zip(w, own)])
        for x in w:
            offset[tri.edge_of[x]] += 1
    return ranks


def _normal_ranks(tri: Triangulation, walk: tuple[int, ...]) -> list[int]:
    """Canonical-side positions of a traced walk's crossings."""
    g = tri.gluing
    weights = walk_weights(tri, walk)
    comps = _trace_cached(tri, weights)
    if len(comps) != 1 or comps[0] != walk:
        raise OverlayError("walk must be the traced walk of a simple curve")
    # replay the trace to recover positions
    eo = tri.edge_of
    e0 = min(e for e in range(tri.num_edges) if weights[e])
    x, p = tri.edge_side[e0], 0
    out = []
    for _ in walk:
        t, s = divmod(x, 3)
        xs = [weights[eo[3 * t + k]] for k in range(3)]
        cs = [(xs[(v - 1) % 3] + xs[v] - xs[(v + 1) % 3]) // 2 for v in range(3)]
        if p < cs[s]:
            s2 = (s - 1) % 3
            p2 = xs[s2] - 1 - p
        else:
            s2 = (s + 1) % 3
            p2 = xs[s] - 1 - p
        y = 3 * t + s2
        out.append(p2 if y < g[y] else xs[s2] - 1 - p2)
        x, p = g[y], xs[s2] - 1 - p2
    return out


# --------------------------------------------------------------------------------------------


@dataclass
class _Chord:
    curve: int
    passage: int
    triangle: int
    entry: int  # boundary index
    exit: int
    fwd: list = field(default_factory=list)  # half-edges along the curve direction
    bwd: list = field(default_factory=list)  # half-edges against it, in traversal order


class OverlayComplex:
    """Fine cell complex of a curve system drawn on a triangulation."""

    def __init__(self, tri: Triangulation, curves: Sequence[NormalCurve], ranks=None, seed: int = 0):
        if not curves:
            raise ValueError("at least one curve is required")
        self.tri = tri
        self.curves = list(curves)
        self.walks = [c.walk for c in self.curves]
        self.counts = [0] * tri.num_edges
        for c in self.curves:
            for e, w in enumerate(c.weights):
                self.counts[e] += w
        self.ranks = ranks if ranks is not None else strand_ranks(tri, self.walks)
        self._build(seed)

    # construction ------------------------------------------------------------------------
    def _strand_at(self):
        """Map (edge, rank) -> (curve, passage)."""
        at = {}
        for ci, w in enumerate(self.walks):
            for k, x in enumerate(w):
                at[(self.tri.edge_of[x], self.ranks[ci][k])] = (ci, k)
        return at

    def _local(self, x: int, rank: int) -> int:
        return rank if self.tri.is_canonical(x) else self.counts[self.tri.edge_of[x]] - 1 - rank

    def _build(self, seed: int) -> None:
        tri = self.tri
        g = tri.gluing
        T = tri.num_triangles
        self.strand_at = self._strand_at()
        # boundary layout per triangle
        self.offsets = []
        self.sizes = []
        for t in range(T):
            m = [self.counts[tri.edge_of[side(t, s)]] for s in range(3)]
            self.offsets.append((0, m[0] + 1, m[0] + m[1] + 2))
            self.sizes.append(m[0] + m[1] + m[2] + 3)
        chords_by_tri: dict[int, list[_Chord]] = defaultdict(list)
        self.chords: dict[tuple[int, int], _Chord] = {}
        for ci, w in enumerate(self.walks):
            L = len(w)
            for k in range(L):
                x_in, x_out = g[w[k - 1]], w[k]
                t = tri_of(x_out)
                off = self.offsets[t]
                a = off[loc(x_in)] + 1 + self._local(x_in, self.ranks[ci][(k - 1) % L])
                b = off[loc(x_out)] + 1 + self._local(x_out, self.ranks[ci][k])
                ch = _Chord(ci, k, t, a, b)
                chords_by_tri[t].append(ch)
                self.chords[(ci, k)] = ch
        rng = random.Random(seed)
        for attempt in range(50):
            try:
                self._assemble(chords_by_tri, rng if attempt else None)
                break
            except _Degenerate:
                for ch in self.chords.values():
                    ch.fwd.clear()
                    ch.bwd.clear()
        else:  # pragma: no cover
            raise OverlayError("could not place chords in general position")
        self._trace_faces()

    def _assemble(self, chords_by_tri, rng) -> None:
        tri = self.tri
        self.vbase = []
        self.nv = 0
        self.he_to: list[int] = []
        self.he_twin: list[int] = []
        self.he_chord: list = []  # (curve, passage, forward?) or None for side segments
        self.he_seg: dict[int, tuple[int, int, int]] = {}  # ccw boundary half-edge -> (t, s, j)
        self.seg_he: dict[tuple[int, int, int], int] = {}
        self.outer: set[int] = set()
        self.out: dict[int, list[int]] = {}
        self.crossings: list[tuple[int, int, int]] = []  # (triangle, chord a key, chord b key)
        self.crossing_vertex: dict[int, tuple] = {}
        self.corner_vertex: dict[int, int] = {}  # vertex -> corner id 3t+v
        self.point_vertex: dict[int, tuple[int, int]] = {}  # vertex -> (curve, passage) strand at exit side
        for t in range(tri.num_triangles):
            self._assemble_triangle(t, chords_by_tri.get(t, []), rng)

    def _new_edge(self, u: int, v: int, chord=None) -> int:
        h = len(self.he_to)
        self.he_to += [v, u]
        self.he_twin += [h + 1, h]
        if chord is None:
            self.he_chord += [None, None]
        else:
            ci, k = chord
            self.he_chord += [(ci, k, True), (ci, k, False)]
        return h

    def _assemble_triangle(self, t: int, chords: list[_Chord], rng) -> None:
        M = self.sizes[t]
        base = self.nv
        self.vbase.append(base)
        self.nv += M
        if rng is None:
            X = [Fraction(i) for i in range(M)]
        else:
            X = [Fraction(i) + Fraction(rng.randint(-400, 400), 1000) for i in range(M)]
        off = self.offsets[t]
        for v in range(3):
            self.corner_vertex[base + off[v]] = 3 * t + v
        # boundary ring half-edges: i -> i+1 (ccw, interior on the left) and back
        ring_next = {}
        ring_prev = {}
        for i in range(M):
            j = (i + 1) % M
            h = self._new_edge(base + i, base + j)
            ring_next[i] = h
            ring_prev[j] = h + 1
            self.outer.add(h + 1)
        for s in range(3):
            start = off[s]
            m = self.counts[self.tri.edge_of[side(t, s)]]
            for j in range(m + 1):
                h = ring_next[start + j]
                self.he_seg[h] = (t, s, j)
                self.seg_he[(t, s, j)] = h
        # crossings
        on_chord: dict[int, list] = defaultdict(list)
        nc = len(chords)
        for p in range(nc):
            P = chords[p]
            a, b = P.entry, P.exit
            for q in range(p + 1, nc):
                Q = chords[q]
                c, d = Q.entry, Q.exit
                if not interleave(a, b, c, d):
                    continue
                if P.curve == Q.curve:
                    raise OverlayError("a curve crosses itself")
                xa, xb, xc, xd = X[a], X[b], X[c], X[d]
                xs = (xa * xb - xc * xd) / ((xa + xb) - (xc + xd))
                vid = self.nv
                self.nv += 1
                self.crossings.append((t, (P.curve, P.passage), (Q.curve, Q.passage)))
                self.crossing_vertex[vid] = ((P.curve, P.passage), (Q.curve, Q.passage))
                on_chord[p].append((xs, vid))
                on_chord[q].append((xs, vid))
        rays: dict[int, list] = defaultdict(list)  # crossing vertex -> [(endpoint index, half-edge)]
        for p, P in enumerate(chords):
            pts = on_chord[p]
            if len({x for x, _ in pts}) != len(pts):
                raise _Degenerate
            pts.sort(key=lambda it: it[0], reverse=X[P.entry] > X[P.exit])
            seq = [base + P.entry] + [v for _, v in pts] + [base + P.exit]
            hs = []
            for u, v in zip(seq, seq[1:]):
                hs.append(self._new_edge(u, v, (P.curve, P.passage)))
            P.fwd = hs
            P.bwd = [h + 1 for h in reversed(hs)]
            for idx, h in enumerate(hs):
                u, v = seq[idx], seq[idx + 1]
                if u >= base + M:
                    rays[u].append((P.exit, h))
                if v >= base + M:
                    rays[v].append((P.entry, h + 1))
            self.point_vertex[base + P.exit] = (P.curve, P.passage)
        # rotation systems
        chord_at = {}
        for P in chords:
            chord_at[P.entry] = P.fwd[0]
            chord_at[P.exit] = P.bwd[0]
        for i in range(M):
            outs = [ring_next[i]]
            if i in chord_at:
                outs.append(chord_at[i])
            outs.append(ring_prev[i])
            self.out[base + i] = outs
        for v, rs in rays.items():
            if len(rs) != 4:
                raise OverlayError("crossing must have degree four")
            rs.sort()
            self.out[v] = [h for _, h in rs]

    def _trace_faces(self) -> None:
        pos = {}
        for v, outs in self.out.items():
            for i, h in enumerate(outs):
                pos[h] = (v, i)
        n = len(self.he_to)
        self.he_next = [-1] * n
        for h in range(n):
            if h in self.outer:
                continue
            v = self.he_to[h]
            tw = self.he_twin[h]
            _, i = pos[tw]
            outs = self.out[v]
            self.he_next[h] = outs[i - 1]
        self.he_face = [-1] * n
        self.faces: list[list[int]] = []
        for h in range(n):
            if h in self.outer or self.he_face[h] >= 0:
                continue
            f = len(self.faces)
            cyc = []
            x = h
            while self.he_face[x] < 0:
                if x in self.outer:
                    raise OverlayError("interior face reached the outer boundary")
                self.he_face[x] = f
                cyc.append(x)
                x = self.he_next[x]
            if x != h:
                raise OverlayError("face tracing did not close up")
            self.faces.append(cyc)
        self.he_pos = pos
        # faces at corners
        self.corner_face = {}
        for v, c in self.corner_vertex.items():
            self.corner_face[c] = self.he_face[self.out[v][0]]

    def euler_characteristic(self) -> int:
        """V - E + F of the fine cell complex (punctures excluded)."""
        V = sum(self.counts) + len(self.crossings)
        segments = sum(m + 1 for m in self.counts)
        chord_edges = sum(1 for ch in self.he_chord if ch is not None and ch[2])
        return V - (segments + chord_edges) + len(self.faces)

    # queries -----------------------------------------------------------------------------
    def crossing_count(self, i: int | None = None, j: int | None = None) -> int:
        if i is None:
            return len(self.crossings)
        return sum(1 for _, a, b in self.crossings if {a[0], b[0]} == {i, j} and (i != j))

    def pairwise_crossings(self) -> dict[tuple[int, int], int]:
        out: Counter = Counter()
        for _, a, b in self.crossings:
            out[tuple(sorted((a[0], b[0])))] += 1
        return dict(out)

    def complement(self, active: Iterable[int] | None = None) -> list[ComplementPiece]:
        return self._complement(frozenset(range(len(self.curves)) if active is None else active))[0]

    def _complement(self, active: frozenset[int]):
        tri = self.tri
        g = tri.gluing
        nf = len(self.faces)
        parent = list(range(nf))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> None:
            a, b = find(a), find(b)
            if a != b:
                parent[a] = b

        # glue across triangulation edges
        seg_pairs = []
        for x in range(tri.num_sides):
            y = g[x]
            if x > y:
                continue
            t, s = divmod(x, 3)
            u, r = divmod(y, 3)
            m = self.counts[tri.edge_of[x]]
            for j in range(m + 1):
                h1 = self.seg_he[(t, s, j)]
                h2 = self.seg_he[(u, r, m - j)]
                union(self.he_face[h1], self.he_face[h2])
                seg_pairs.append(h1)
        # glue across inactive chords
        inactive_edges = []
        for h, ch in enumerate(self.he_chord):
            if ch is None or not ch[2] or ch[0] in active:
                continue
            union(self.he_face[h], self.he_face[h + 1])
            inactive_edges.append(h)
        roots = sorted({find(f) for f in range(nf)})
        index = {r: i for i, r in enumerate(roots)}
        piece_of_face = [index[find(f)] for f in range(nf)]
        npieces = len(roots)
        V = [0] * npieces
        E = [0] * npieces
        F = [0] * npieces
        for f in range(nf):
            F[piece_of_face[f]] += 1
        for h in seg_pairs:
            E[piece_of_face[self.he_face[h]]] += 1
        for h in inactive_edges:
            E[piece_of_face[self.he_face[h]]] += 1
        # inactive strand points on edges (count each once, from the canonical side)
        for (ci, k), ch in self.chords.items():
            if ci in active:
                continue
            # the exit point of each passage is one strand point; both faces
            # beside an inactive chord lie in the same piece
            V[piece_of_face[self.he_face[ch.fwd[-1]]]] += 1
        for v, (a, b) in self.crossing_vertex.items():
            if a[0] in active or b[0] in active:
                continue
            V[piece_of_face[self.he_face[self.out[v][0]]]] += 1
        punct: list[set] = [set() for _ in range(npieces)]
        for c, f in self.corner_face.items():
            punct[piece_of_face[f]].add(tri.corner_punctures[c])
        cycles = self._boundary_cycles(active)
        bnd: list[list] = [[] for _ in range(npieces)]
        for start, darts in cycles:
            bnd[piece_of_face[self.he_face[start]]].append(darts)
        pieces = []
        for i in range(npieces):
            chi = V[i] - E[i] + F[i]
            b, p = len(bnd[i]), len(punct[i])
            g2 = 2 - chi - b - p
            if g2 < 0 or g2 % 2:
                raise OverlayError(f"piece {i} has inconsistent counts chi={chi} b={b} p={p}")
            pushoffs = tuple(_pushoff(tri, d) for d in bnd[i])
            pieces.append(ComplementPiece(g2 // 2, b, p, chi, pushoffs, tuple(sorted(punct[i]))))
        return pieces, piece_of_face

    def _boundary_cycles(self, active: frozenset[int]):
        """Boundary circles of the complement of the active curves.

        Each is returned as (first half-edge, darts crossed by its pushoff).
        """
        g = self.tri.gluing
        seen: set[int] = set()
        out = []
        L = [len(w) for w in self.walks]
        for h0, ch in enumerate(self.he_chord):
            if ch is None or ch[0] not in active or h0 in seen:
                continue
            darts = []
            h = h0
            while True:
                seen.add(h)
                ci, k, fwd = self.he_chord[h]
                v = self.he_to[h]
                if v in self.crossing_vertex:
                    _, i = self.he_pos[self.he_twin[h]]
                    outs = self.out[v]
                    nxt = None
                    for step in range(1, 5):
                        cand = outs[(i - step) % 4]
                        cc = self.he_chord[cand]
                        if cc is not None and cc[0] in active:
                            nxt = cand
                            break
                    h = nxt
                else:
                    if fwd:
                        darts.append(self.walks[ci][k])
                        h = self.chords[(ci, (k + 1) % L[ci])].fwd[0]
                    else:
                        darts.append(g[self.walks[ci][k - 1]])
                        h = self.chords[(ci, (k - 1) % L[ci])].bwd[0]
                if h == h0:
                    break
            out.append((h0, tuple(darts)))
        return out

    # exports -----------------------------------------------------------------------------
    def to_json(self) -> dict:
        pieces = self.complement()
        return {
            "surface": [self.tri.genus, self.tri.num_punctures],
            "curves": [c.to_json() for c in self.curves],
            "crossings": [{"triangle": t, "a": list(a), "b": list(b)} for t, a, b in self.crossings],
            "pairwise_crossings": {f"{i},{j}": n for (i, j), n in sorted(self.pairwise_crossings().items())},
            "faces": len(self.faces),
            "pieces": [
                {
                    "genus": p.genus,
                    "boundary": p.boundary_count,
                    "punctures": list(p.punctures),
                    "euler": p.euler,
                    "pushoffs": [None if c is None else list(c.weights) for c in p.boundary_pushoffs],
                }
                for p in pieces
            ],
        }

    def to_dot(self) -> str:
        pieces, piece_of_face = self._complement(frozenset(range(len(self.curves))))
        lines = ["graph overlay {"]
        for i, p in enumerate(pieces):
            lines.append(f'  p{i} [label="piece {i}\\ng={p.genus} b={p.boundary_count} p={p.puncture_count}"];')
        edges = Counter()
        for h, ch in enumerate(self.he_chord):
            if ch is None or not ch[2]:
                continue
            a = piece_of_face[self.he_face[h]]
            b = piece_of_face[self.he_face[h + 1]]
            edges[(min(a, b), max(a, b), ch[0])] += 1
        for (a, b, c), n in sorted(edges.items()):
            lines.append(f'  p{a} -- p{b} [label="curve {c} x{n}"];')
        lines.append("}")
        return "\n".join(lines)


class _Degenerate(Exception):
    pass


def _pushoff(tri: Triangulation, darts: Sequence[int]) -> NormalCurve | None:
    red = reduce_walk(tri, darts)
    if not red:
        return None
    w = walk_weights(tri, red)
    if is_peripheral_weights(tri, w):
        return None
    try:
        return curve_from_walk(tri, red)
    except CurveError as exc:  # pragma: no cover - boundary circles are embedded
        raise OverlayError(f"pushoff is not simple: {exc}") from exc


# public API -----------------------------------------------------------------------------


def build_overlay(tri: Triangulation, curves: Sequence[NormalCurve], order: str = "geodesic", seed: int = 0) -> OverlayComplex:
    """Realize ``curves`` transversally.

    ``order="geodesic"`` gives pairwise minimal position directly;
    ``order="naive"`` stacks the curves on every edge and usually leaves
    bigons for :func:`reduce_to_minimal_position`.
    """
    curves = list(curves)
    if len({c.weights for c in curves}) != len(curves):
        raise ValueError("curve list must be deduplicated")
    if order == "geodesic":
        return OverlayComplex(tri, curves, seed=seed)
    if order == "naive":
        walks = [c.walk for c in curves]
        return OverlayComplex(tri, curves, naive_ranks(tri, walks), seed=seed)
    raise ValueError(f"unknown strand order {order!r}")


def find_bigon(ov: OverlayComplex):
    """A bigon piece of the complement, as its list of faces, or ``None``."""
    pieces, piece_of_face = ov._complement(frozenset(range(len(ov.curves))))
    for i, p in enumerate(pieces):
        if p.signature != (0, 1, 0):
            continue
        faces = [f for f, q in enumerate(piece_of_face) if q == i]
        corners = []
        for f in faces:
            for h in ov.faces[f]:
                v = ov.he_to[h]
                if v in ov.crossing_vertex:
                    corners.append(ov.crossing_vertex[v])
        if len(corners) == 2 and all(a[0] != b[0] for a, b in corners):
            return faces
    return None


def reduce_to_minimal_position(ov: OverlayComplex, max_steps: int = 10_000) -> OverlayComplex:
    """Remove bigons one at a time by swapping adjacent strands across them."""
    tri = ov.tri
    for _ in range(max_steps):
        faces = find_bigon(ov)
        if faces is None:
            return ov
        ranks = [list(r) for r in ov.ranks]
        fs = set(faces)
        swaps = []
        for (t, s, j), h in ov.seg_he.items():
            if ov.he_face[h] not in fs:
                continue
            x = side(t, s)
            if not tri.is_canonical(x):
                continue
            m = ov.counts[tri.edge_of[x]]
            if j == 0 or j == m:
                raise OverlayError("bigon touches a puncture")
            swaps.append((tri.edge_of[x], j - 1, j))
        for e, r1, r2 in swaps:
            a = ov.strand_at[(e, r1)]
            b = ov.strand_at[(e, r2)]
            ranks[a[0]][a[1]] = r2
            ranks[b[0]][b[1]] = r1
        before = len(ov.crossings)
        ov = OverlayComplex(tri, ov.curves, ranks)
        if len(ov.crossings) != before - 2:
            raise OverlayError(f"bigon removal changed crossings {before} -> {len(ov.crossings)}")
    raise OverlayError("bigon removal did not terminate")


def oracle_intersection(a: NormalCurve, b: NormalCurve) -> int:
    """Intersection number by naive drawing plus exhaustive bigon removal."""
    if a.weights == b.weights:
        return 0
    ov = reduce_to_minimal_position(build_overlay(a.tri, [a, b], order="naive"))
    return len(ov.crossings)


# complements of curve sets ------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _overlay_for(tri: Triangulation, key: tuple[tuple[int, ...], ...]) -> OverlayComplex:
    return OverlayComplex(tri, [NormalCurve(tri, w, check=False) for w in key])


def overlay_of(curves: Iterable[NormalCurve]) -> OverlayComplex:
    curves = sorted(set(curves))
    if not curves:
        raise ValueError("empty curve system")
    return _overlay_for(curves[0].tri, tuple(c.weights for c in curves))


def complement_decomposition(ov: OverlayComplex, active: Iterable[int] | None = None) -> list[ComplementPiece]:
    """Pieces of the complement of the active curves, with Euler bookkeeping.

    Cutting along a union of circles meeting in ``c`` double points removes a
    graph of Euler characteristic ``-c``, so the pieces must sum to
    ``chi(S) + c``.
    """
    act = frozenset(range(len(ov.curves)) if active is None else active)
    pieces = ov.complement(act)
    c = sum(1 for _, a, b in ov.crossings if a[0] in act and b[0] in act)
    chi = sum(p.euler for p in pieces)
    if chi != ov.tri.euler + c:
        raise OverlayError(f"Euler characteristic not conserved: {chi} != {ov.tri.euler} + {c}")
    return pieces


def piece_containing(cutters: Iterable[NormalCurve], curve: NormalCurve) -> ComplementPiece:
    """The complement piece of ``cutters`` in which ``curve`` lies.

    ``curve`` must be disjoint from every cutter and distinct from all of them.
    """
    cutters = list(cutters)
    if curve in cutters:
        raise ValueError("curve coincides with a cutter")
    ov = overlay_of(cutters + [curve])
    ci = ov.curves.index(curve)
    if any(a[0] == ci or b[0] == ci for _, a, b in ov.crossings):
        raise ValueError("curve meets the cutters")
    active = frozenset(i for i in range(len(ov.curves)) if i != ci)
    pieces, piece_of_face = ov._complement(active)
    return pieces[piece_of_face[ov.he_face[ov.chords[(ci, 0)].fwd[0]]]]


def regular_neighbourhood_boundary(curves: Iterable[NormalCurve]) -> list[NormalCurve]:
    """Essential boundary curves of a closed regular neighbourhood of the union."""
    curves = list(curves)
    ov = overlay_of(curves)
    pieces = complement_decomposition(ov)
    out = set()
    for p in pieces:
        out.update(p.essential_pushoffs())
    return sorted(out)


# curve classification ---------------------------------------------------------------------


@dataclass(frozen=True)
class CurveType:
    kind: str  # "nonseparating" | "outer" | "separating"
    punctures: tuple[tuple[int, ...], ...] = ()
    genera: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "nonseparating":
            return self.kind
        sides = " | ".join(",".join(map(str, p)) or "-" for p in self.punctures)
        return f"{self.kind} [{sides}] genera {self.genera}"


@lru_cache(maxsize=65536)
def _curve_type(tri: Triangulation, weights: tuple[int, ...]) -> CurveType:
    ov = _overlay_for(tri, (weights,))
    pieces = complement_decomposition(ov)
    if len(pieces) == 1:
        return CurveType("nonseparating")
    ps = sorted(pieces, key=lambda p: (p.genus, p.punctures))
    punct = tuple(p.punctures for p in ps)
    genera = tuple(p.genus for p in ps)
    outer = any(p.genus == 0 and p.puncture_count == 2 for p in ps)
    return CurveType("outer" if outer else "separating", punct, genera)


def curve_type(a: NormalCurve) -> CurveType:
    return _curve_type(a.tri, a.weights)


def is_outer(a: NormalCurve) -> bool:
    return curve_type(a).kind == "outer"


def dumps(ov: OverlayComplex) -> str:
    return json.dumps(ov.to_json(), sort_keys=True)
