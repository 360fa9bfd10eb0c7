"""Genus zero families on the double n-gon.

The base triangulation glues two fan-triangulated n-gons ``H1`` (upper) and
``H2`` (lower) along their sides.  Side ``a_j`` joins punctures ``j`` and
``j+1``; the outer chain is made of the outer curves of these sides.  The
diagonal ``{i, j}`` of ``H1`` (resp. ``H2``) gives the outer curve
``beta_{i,j}`` (resp. ``gamma_{i,j}``).
"""

from __future__ import annotations

from functools import lru_cache

from ..curves import NormalCurve, outer_curve_of_arc
from ..triangulation import SurfaceSpec, build_base_triangulation, side
from .common import ConstructionError, FamilyCatalog, check_pattern, unique_curves


def _up(j: int) -> int:
    return j - 1


def _lo(j: int, n: int) -> int:
    return n - 2 + j - 1


def _pair(i: int, j: int, n: int) -> tuple[int, int]:
    i, j = i % n, j % n
    return (i, j) if i < j else (j, i)


def is_diagonal(i: int, j: int, n: int) -> bool:
    d = (j - i) % n
    return d not in (0, 1, n - 1)


def outer_chain_curve(tri, n: int, i: int) -> NormalCurve:
    m = n - 2
    if i == 0:
        a, b = side(_up(1), 0), side(_up(1), 1)
    elif i == n - 1:
        a, b = side(_up(m), 2), side(_up(m), 0)
    else:
        a, b = side(_up(i), 1), side(_up(i), 2)
    return outer_curve_of_arc(tri, a, (), b, f"alpha_{i}")


def upper_diagonal_curve(tri, n: int, i: int, j: int) -> NormalCurve:
    """Outer curve of the diagonal ``{i, j}`` of the upper polygon."""
    i, j = _pair(i, j, n)
    label = f"beta_{{{i},{j}}}"
    if i == 0:
        return outer_curve_of_arc(tri, side(_up(j), 0), (), side(_up(j), 1), label)
    darts = tuple(side(_up(k - 1), 2) for k in range(i + 1, j))
    return outer_curve_of_arc(tri, side(_up(i), 1), darts, side(_up(j - 1), 2), label)


def lower_diagonal_curve(tri, n: int, i: int, j: int) -> NormalCurve:
    """Outer curve of the diagonal ``{i, j}`` of the lower polygon."""
    i, j = _pair(i, j, n)
    label = f"gamma_{{{i},{j}}}"
    if i == 0:
        return outer_curve_of_arc(tri, side(_lo(j, n), 0), (), side(_lo(j, n), 2), label)
    darts = tuple(side(_lo(k - 1, n), 0) for k in range(i + 1, j))
    return outer_curve_of_arc(tri, side(_lo(i, n), 2), darts, side(_lo(j - 1, n), 1), label)


class Genus0Catalog(FamilyCatalog):
    """Adds modular index helpers on top of the plain catalog."""

    @property
    def n(self) -> int:
        return self.spec.punctures

    def alpha(self, i: int) -> NormalCurve:
        return self["O"][i % self.n]

    def beta(self, i: int, j: int) -> NormalCurve:
        return self["beta"][_pair(i, j, self.n)]

    def gamma(self, i: int, j: int) -> NormalCurve:
        return self["gamma"][_pair(i, j, self.n)]

    def alphas(self, start: int, stop: int) -> list[NormalCurve]:
        """``alpha_start, ..., alpha_stop`` with indices taken cyclically (empty if stop = start - 1)."""
        n = self.n
        count = (stop - start) % n + 1
        if count == n:
            count = 0
        return [self.alpha(start + k) for k in range(count)]


@lru_cache(maxsize=None)
def genus0_family(n: int) -> Genus0Catalog:
    if n < 5:
        raise ConstructionError("genus zero constructions need at least five punctures")
    tri = build_base_triangulation(SurfaceSpec(0, n))
    cat = Genus0Catalog(tri)
    O = [outer_chain_curve(tri, n, i) for i in range(n)]
    check_pattern(O, lambda a, b: 2 if (b - a) % n in (1, n - 1) else 0, "closed outer chain")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if is_diagonal(i, j, n)]
    cat["O"] = O
    cat["beta"] = {p: upper_diagonal_curve(tri, n, *p) for p in pairs}
    cat["gamma"] = {p: lower_diagonal_curve(tri, n, *p) for p in pairs}
    cat["D1"] = list(cat["beta"].values())
    cat["D2"] = list(cat["gamma"].values())
    Y = O + cat["D1"] + cat["D2"]
    if len({c.weights for c in Y}) != n * (n - 2):
        raise ConstructionError("basis curves are not pairwise distinct")
    cat["Y"] = Y
    return cat


def with_x(cat: Genus0Catalog) -> Genus0Catalog:
    """``X = O^1`` together with the generator images of the outer chain."""
    from ..expansion import expand_once

    if "X" in cat:
        return cat
    ledger, _ = expand_once(cat["O"])
    cat["O1"] = [e.curve.named(e.label) for e in sorted(ledger.entries.values(), key=lambda e: (e.level, e.curve.weights))]
    cat["GO"] = generator_images_of_chain(cat)
    cat["X"] = unique_curves(cat["O1"] + cat["GO"])
    return cat


def generator_images_of_chain(cat: Genus0Catalog) -> list[NormalCurve]:
    """The set obtained by applying every half-twist generator to the outer chain."""
    from ..mapping import generating_set

    out: dict[tuple[int, ...], NormalCurve] = {}
    for key, f in generating_set(cat).items():
        for c in cat["O"]:
            img = f(c)
            out.setdefault(img.weights, img.named(img.label or f"{key}[{c.label}]"))
    return list(out.values())


def separating_witness(n: int, part: frozenset[int] | set[int]):
    """A separating curve with puncture set ``part`` on one side, and two chains determining it.

    One chain joins the punctures of ``part`` by upper diagonals (or outer-chain
    curves for neighbours), the other joins the rest through the lower polygon.
    """
    from ..expansion import determine

    cat = genus0_family(n)
    P = sorted(p % n for p in part)
    Q = sorted(set(range(n)) - set(P))
    if len(P) < 2 or len(Q) < 2:
        raise ConstructionError("each side of a separating curve needs two punctures")

    def link(i: int, j: int, upper: bool) -> NormalCurve:
        if (j - i) % n == 1:
            return cat.alpha(i)
        if (i - j) % n == 1:
            return cat.alpha(j)
        return cat.beta(i, j) if upper else cat.gamma(i, j)

    A = [link(P[k], P[k + 1], True) for k in range(len(P) - 1)]
    B = [link(Q[k], Q[k + 1], False) for k in range(len(Q) - 1)]
    # a two-puncture side is bounded by its single link, an outer curve
    for chain in (A, B):
        if len(chain) == 1:
            return chain[0], (A, B)
    res = determine(A + B)
    if res.verdict != "unique":
        raise ConstructionError(f"separating witness failed: {res.verdict}")
    return res.curve, (A, B)
