"""Exact strand ordering from the symmetric hyperbolic structure.

Giving every edge shear zero turns an ideal triangulation into a complete
hyperbolic surface whose universal cover is the Farey tessellation.  A closed
dual walk then has a holonomy in SL(2, Z).  Put an edge in its standard frame
``(0, oo)``, with the triangle of its canonical side on the negative half.  A
geodesic with endpoints ``x < 0 < y`` crosses the edge at height
``sqrt(-x*y)``.  For the fixed points of ``[[a, b], [c, d]]`` this height
squared is ``b/c``, which is rational.  Sorting strands by it realises all
curves as geodesics at once, so every pair sits in minimal position.

Two geodesics can meet exactly on an edge.  Those ties are broken by the
order just inside the canonical triangle, which moves the crossing into the
neighbouring triangle.  That order is decided by ``(a - d)/c``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .triangulation import Triangulation, loc, tri_of

Mat = tuple[int, int, int, int]

_LEFT: Mat = (1, -1, 0, 1)
_LEFT_INV: Mat = (1, 1, 0, 1)
_RIGHT: Mat = (1, 0, -1, 1)
_RIGHT_INV: Mat = (1, 0, 1, 1)


def _mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def turns(tri: Triangulation, walk: Sequence[int]) -> list[bool]:
    """``turns[k]`` is True when the walk turns left after crossing ``walk[k]``."""
    out = []
    L = len(walk)
    for k in range(L):
        enter = loc(tri.gluing[walk[k]])
        leave = walk[(k + 1) % L]
        if tri_of(leave) != tri_of(tri.gluing[walk[k]]):
            raise ValueError("walk is not a closed dual path")
        diff = (loc(leave) - enter) % 3
        if diff == 0:
            raise ValueError("walk backtracks; reduce it first")
        out.append(diff == 2)
    return out


def strand_keys(tri: Triangulation, walk: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Sort key of every crossing of ``walk`` in the frame of the crossed edge.

    The key is ``(height squared, -(a - d)/c)``; smaller keys lie nearer the
    start vertex of the edge's canonical side.
    """
    L = len(walk)
    lefts = turns(tri, walk)
    fwd = [_LEFT if lt else _RIGHT for lt in lefts]
    inv = [_LEFT_INV if lt else _RIGHT_INV for lt in lefts]
    P: Mat = (1, 0, 0, 1)
    for k in range(L):
        P = _mul(fwd[k], P)
    keys = []
    for k in range(L):
        a, b, c, d = P
        if tri.is_canonical(walk[k]):
            num, den, s_den = b, c, c
        else:
            num, den, s_den = c, b, b
        if num == 0 or den == 0:
            raise ValueError("walk is not hyperbolic (peripheral or trivial curve)")
        h = Fraction(num, den)
        if h <= 0:
            raise ValueError("holonomy axis does not cross the edge")
        keys.append((h, -Fraction(a - d, s_den)))
        P = _mul(_mul(fwd[k], P), inv[k])
    return keys


def edge_orders(tri: Triangulation, walks: Sequence[Sequence[int]]) -> dict[int, list[tuple[int, int]]]:
    """Strands ``(walk index, crossing index)`` on every edge, in canonical order."""
    buckets: dict[int, list] = {}
    for ci, w in enumerate(walks):
        for k, key in enumerate(strand_keys(tri, w)):
            buckets.setdefault(tri.edge_of[w[k]], []).append((key, ci, k))
    out = {}
    for e, items in buckets.items():
        items.sort(key=lambda it: it[0])
        for u, v in zip(items, items[1:]):
            if u[0] == v[0]:
                raise ValueError("two strands share a geodesic; curve system has duplicates")
        out[e] = [(ci, k) for _, ci, k in items]
    return out
