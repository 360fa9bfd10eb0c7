"""Genus one families on the punctured torus ``[0, n] x [0, 1]``.

``alpha_1`` is the horizontal loop and ``alpha_0^i`` the vertical loop through
square ``i``.  Puncture ``i`` sits between ``alpha_0^{i-1}`` and
``alpha_0^i``.  Everything else is obtained by determination or half-twists.
"""

from __future__ import annotations

from functools import lru_cache

from ..curves import NormalCurve
from ..mapping import half_twist
from ..triangulation import SurfaceSpec, Triangulation, build_base_triangulation
from .common import ConstructionError, FamilyCatalog, check_pattern, unique_curves


def _by_edge_names(tri: Triangulation, weights: dict[str, int], label: str) -> NormalCurve:
    w = [0] * tri.num_edges
    for name, value in weights.items():
        w[tri.edge_index(name)] = value
    return NormalCurve(tri, w, label)


def _det(A, label: str) -> NormalCurve:
    from ..expansion import determine

    res = determine(A)
    if res.verdict != "unique":
        raise ConstructionError(f"{label}: determination gave {res.verdict}")
    return res.curve.named(label)


class Genus1Catalog(FamilyCatalog):
    @property
    def n(self) -> int:
        return self.spec.punctures

    def a0(self, i: int) -> NormalCurve:
        return self["C"][i % self.n]

    @property
    def a1(self) -> NormalCurve:
        return self["C"][-1]

    def beta(self, i: int) -> NormalCurve:
        return self["D"][i % self.n]

    def eps(self, i: int, s: int) -> NormalCurve:
        return self["A+" if s > 0 else "A-"][i % self.n]

    def gam(self, i: int, s: int) -> NormalCurve:
        return self["gamma+" if s > 0 else "gamma-"][i % self.n]

    def gam2(self, i: int, s: int) -> NormalCurve:
        return self["gamma2+" if s > 0 else "gamma2-"][i % self.n]

    def run(self, getter, start: int, stop: int) -> list[NormalCurve]:
        """``getter(start), ..., getter(stop)`` cyclically; empty when ``stop = start - 1``."""
        count = (stop - start) % self.n + 1
        if count == self.n:
            count = 0
        return [getter(start + k) for k in range(count)]


@lru_cache(maxsize=None)
def genus1_family(n: int) -> Genus1Catalog:
    if n < 3:
        raise ConstructionError("genus one constructions need at least three punctures")
    tri = build_base_triangulation(SurfaceSpec(1, n))
    cat = Genus1Catalog(tri)
    a0 = [_by_edge_names(tri, {f"h_{i}": 1, f"d_{i}": 1}, f"alpha_0^{i}") for i in range(n)]
    a1 = _by_edge_names(tri, {**{f"v_{i}": 1 for i in range(n)}, **{f"d_{i}": 1 for i in range(n)}}, "alpha_1")
    C = a0 + [a1]
    check_pattern(C, lambda a, b: 1 if b == n else 0, "fan")
    cat["C"] = C
    cat["D"] = [_det(C[:i] + C[i + 1:], f"beta_{i}") for i in range(n)]
    check_pattern(cat["D"], lambda a, b: 2 if (b - a) % n in (1, n - 1) else 0, "closed outer chain")
    cat["A+"] = [half_twist(cat.beta(i))(cat.beta(i - 1)).named(f"eps_{i}^+") for i in range(n)]
    cat["A-"] = [half_twist(cat.beta(i), -1)(cat.beta(i - 1)).named(f"eps_{i}^-") for i in range(n)]
    cat["A"] = cat["A+"] + cat["A-"]
    cat["Y"] = C + cat["D"] + cat["A"]
    if len({c.weights for c in cat["Y"]}) != 3 * n + 1 + n:
        raise ConstructionError("basis curves are not pairwise distinct")
    for s, key in ((1, "gamma+"), (-1, "gamma-")):
        cat[key] = [
            _det(cat.run(cat.beta, i + 1, i - 2) + [cat.eps(i, s), a1], f"gamma_{i}^{'+' if s > 0 else '-'}")
            for i in range(n)
        ]
    if n == 3:
        cat["gamma2+"] = [cat.gam(i + 2, -1).named(f"gamma_{{{i},{(i + 1) % n}}}^+") for i in range(n)]
        cat["gamma2-"] = [cat.gam(i + 2, 1).named(f"gamma_{{{i},{(i + 1) % n}}}^-") for i in range(n)]
    else:
        cat["gamma2+"] = [
            _det(
                [a1, cat.gam(i, 1), cat.gam(i + 1, 1), cat.gam(i + 2, -1)] + cat.run(cat.beta, i + 2, i - 2),
                f"gamma_{{{i},{(i + 1) % n}}}^+",
            )
            for i in range(n)
        ]
        cat["gamma2-"] = [
            _det(
                [a1, cat.gam(i, -1), cat.gam(i + 1, -1), cat.gam(i + 2, 1)] + cat.run(cat.beta, i + 2, i - 2),
                f"gamma_{{{i},{(i + 1) % n}}}^-",
            )
            for i in range(n)
        ]
    return cat


def with_x(cat: Genus1Catalog) -> Genus1Catalog:
    """``X = (C u D)^1`` together with the curves ``gamma_i^+-`` and ``gamma_{i,i+1}^+-``."""
    from ..expansion import expand_once

    if "X" in cat:
        return cat
    ledger, _ = expand_once(cat["C"] + cat["D"])
    cat["CD1"] = [e.curve.named(e.label) for e in sorted(ledger.entries.values(), key=lambda e: (e.level, e.curve.weights))]
    extra = cat["gamma+"] + cat["gamma-"] + cat["gamma2+"] + cat["gamma2-"]
    cat["X"] = unique_curves(cat["CD1"] + extra)
    return cat
