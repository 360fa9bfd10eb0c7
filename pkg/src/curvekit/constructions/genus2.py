"""Genus two families on a punctured octagon model.

The surface is the octagon ``a b a' b' c d c' d'`` with ``n - 1`` spikes
``x_k x_k'`` inserted after ``a``.  Every spike tip is a puncture of its own
and the octagon vertices form puncture 0.  The polygon is fan-triangulated
from its first vertex.

Curves of the base chain are given by cutting sequences: the polygon sides a
curve leaves through, in order.  ``alpha_0^0`` crosses ``b`` once; each next
``alpha_0^i`` is the previous one pushed across one more puncture, chosen as
the first detour around a corner that keeps the required pattern.

Sides of a bounding pair are decided by the complement of
``{alpha_0^j, alpha_2, alpha_4}`` (plus side: the piece holding exactly the
punctures between ``alpha_0^0`` and ``alpha_0^j``) or of
``{alpha_1, alpha_3, alpha_5}`` (plus side: the punctured piece).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..curves import (
    CurveError,
    NormalCurve,
    curve_from_walk,
    intersection_number,
    reduce_walk,
    reverse_walk,
)
from ..overlay import complement_decomposition, is_outer, overlay_of, piece_containing, regular_neighbourhood_boundary
from ..triangulation import Triangulation, polygon_triangulation, side, tri_of
from .common import ConstructionError, FamilyCatalog, check_pattern, unique_curves

OCTAGON = ("b", "a'", "b'", "c", "d", "c'", "d'")
CHAIN_SEQUENCES = (("a", "c'", "b'"), ("d",), ("c",), ("b", "d"), ("a", "b'"))
FIRST_FAN_SEQUENCE = ("b",)


def surface_word(n: int) -> list[str]:
    spikes = []
    for k in range(1, n):
        spikes += [f"x{k}", f"x{k}'"]
    return ["a"] + spikes + list(OCTAGON)


def base_triangulation(n: int) -> Triangulation:
    if n < 1:
        raise ConstructionError("genus two needs at least one puncture")
    return polygon_triangulation(surface_word(n))


def _slot(k: int, N: int) -> int:
    if k == 0:
        return side(0, 0)
    if k == N - 1:
        return side(N - 3, 2)
    return side(k - 1, 1)


def _fan_triangle(k: int, N: int) -> int:
    return max(0, min(k - 1, N - 3))


def cutting_walk(word: Sequence[str], sequence: Sequence[str]) -> list[int]:
    """Dual walk of the curve leaving the polygon through ``sequence``."""
    N = len(word)
    where = {w: k for k, w in enumerate(word)}
    partner = {k: where[w[:-1]] if w.endswith("'") else where[w + "'"] for k, w in enumerate(word)}
    seq = [where[s] for s in sequence]
    walk: list[int] = []
    for k in range(len(seq)):
        s_in, s_out = partner[seq[k - 1]], seq[k]
        if s_in == s_out:
            raise CurveError("cutting sequence backtracks")
        t_in, t_out = _fan_triangle(s_in, N), _fan_triangle(s_out, N)
        if t_in < t_out:
            walk += [side(t, 2) for t in range(t_in, t_out)]
        else:
            walk += [side(t, 0) for t in range(t_in, t_out, -1)]
        walk.append(_slot(s_out, N))
    return walk


def curve_from_sequence(tri: Triangulation, word, sequence, label: str | None = None) -> NormalCurve:
    return curve_from_walk(tri, cutting_walk(word, sequence), label)


def _detours(tri: Triangulation, c: NormalCurve):
    """Curves obtained by splicing one corner loop into the walk of ``c``."""
    w = list(c.walk)
    for k in range(len(w)):
        t = tri_of(w[k])
        for v in range(3):
            lk = tri.link_walk(3 * t + v)
            for loop in (lk, list(reverse_walk(tri, lk))):
                red = reduce_walk(tri, w[:k] + loop + w[k:])
                if not red:
                    continue
                try:
                    yield curve_from_walk(tri, red)
                except CurveError:
                    pass


def _pieces(curves):
    return complement_decomposition(overlay_of(curves))


def _next_fan_curve(tri, chain, fan) -> NormalCurve:
    a1, a2, a3, a4, a5 = chain
    used = set()
    for f, g in zip(fan, fan[1:]):
        used.update(p for q in _pieces([f, g]) if q.signature == (0, 2, 1) for p in q.punctures)
    I = intersection_number
    for c in _detours(tri, fan[-1]):
        if c in fan or c in chain:
            continue
        if I(c, a2) or I(c, a3) or I(c, a4) or I(c, a1) != 1 or I(c, a5) != 1:
            continue
        if any(I(c, f) for f in fan):
            continue
        ann = [q for q in _pieces([fan[-1], c]) if q.signature == (0, 2, 1)]
        if not ann or ann[0].punctures[0] in used:
            continue
        if len(fan) >= 2:
            # the new annulus must sit beyond the previous one
            if not any(q.signature == (0, 2, 2) for q in _pieces([fan[-2], c])):
                continue
        elif not any(q.genus == 0 and q.puncture_count == 1 for q in _pieces([c, a2, a4])):
            continue
        return c
    raise ConstructionError(f"no admissible alpha_0^{len(fan)}")


def _short(label: str) -> str:
    return label.replace("alpha_", "a")


def _det(A, label: str) -> NormalCurve:
    from ..expansion import determine

    res = determine(list(A))
    if res.verdict != "unique":
        raise ConstructionError(f"{label}: determination gave {res.verdict}")
    return res.curve.named(label)


class Genus2Catalog(FamilyCatalog):
    @property
    def n(self) -> int:
        return self.spec.punctures

    def alpha(self, k: int) -> NormalCurve:
        """``alpha_k`` of the base chain, ``1 <= k <= 5``."""
        return self["C0"][k - 1]

    def fan(self, i: int) -> NormalCurve:
        return self["Cf"][i]

    def chain_cycle(self, j: int) -> list[NormalCurve]:
        """The six-cycle ``alpha_0^j, alpha_1, ..., alpha_5``."""
        return [self.fan(j)] + list(self["C0"])

    def bounding(self, key: tuple[int, ...], sign: int, j: int = 0) -> NormalCurve:
        """``beta_C^{sign}`` for the hexagon interval ``key`` (``0`` means ``alpha_0^j``)."""
        name = chain_name(key, j)
        return self["beta+" if sign > 0 else "beta-"][name]

    def delta(self, i: int) -> NormalCurve:
        return self["delta"][i]

    def zeta(self, i: int) -> NormalCurve:
        return self["zeta"][i]

    def side_cutters(self, system: str | int) -> list[NormalCurve]:
        """Cutters of ``Sigma_o`` (``"o"``) or of ``S_i`` (an index ``i``)."""
        if system == "o":
            return [self.alpha(1), self.alpha(3), self.alpha(5)]
        return [self.fan(int(system)), self.alpha(2), self.alpha(4)]

    def plus_punctures(self, system: str | int) -> tuple[int, ...] | None:
        """Punctures of the plus side; ``None`` for ``Sigma_o`` (plus is the punctured side)."""
        if system == "o":
            return None
        i = int(system)
        if i == 0:
            return ()
        for q in _pieces([self.fan(0), self.fan(i)]):
            if q.genus == 0:
                return q.punctures
        raise ConstructionError(f"alpha_0^0 and alpha_0^{i} do not cobound a punctured annulus")

    def is_plus(self, system: str | int, piece) -> bool:
        want = self.plus_punctures(system)
        if want is None:
            return piece.puncture_count > 0
        return tuple(piece.punctures) == tuple(want)


HEXAGON_INTERVALS = ((0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 0), (5, 0, 1))


def chain_name(key: tuple[int, ...], j: int = 0) -> str:
    return "{" + ",".join(f"a0^{j}" if k == 0 else f"a{k}" for k in key) + "}"


def _chain_curves(cat: Genus2Catalog, key, j) -> list[NormalCurve]:
    return [cat.fan(j) if k == 0 else cat.alpha(k) for k in key]


def split_bounding_pair(cat: Genus2Catalog, key, j: int) -> tuple[NormalCurve, NormalCurve]:
    """``(beta_C^+, beta_C^-)`` for a length three chain."""
    chain = _chain_curves(cat, key, j)
    pair = regular_neighbourhood_boundary(chain)
    if len(pair) != 2:
        raise ConstructionError(f"chain {chain_name(key, j)} has {len(pair)} boundary curves")
    systems: list = [j] if 0 in key else [0]
    systems.append("o")
    for system in systems:
        cutters = cat.side_cutters(system)
        if any(intersection_number(b, x) for b in pair for x in cutters):
            continue
        free = [b for b in pair if b not in cutters]
        if not free:
            raise ConstructionError("both boundary curves are cutters")
        b = free[0]
        plus = cat.is_plus(system, piece_containing(cutters, b))
        other = pair[1] if b == pair[0] else pair[0]
        return (b, other) if plus else (other, b)
    raise ConstructionError(f"no side system separates the pair of {chain_name(key, j)}")


def _bounding_family(cat: Genus2Catalog) -> None:
    plus: dict[str, NormalCurve] = {}
    minus: dict[str, NormalCurve] = {}
    for key in HEXAGON_INTERVALS:
        for j in range(cat.n + 1) if 0 in key else (0,):
            name = chain_name(key, j)
            bp, bm = split_bounding_pair(cat, key, j)
            plus[name] = bp.named(f"beta_{name}^+")
            minus[name] = bm.named(f"beta_{name}^-")
    cat["beta+"] = plus
    cat["beta-"] = minus
    cat["B"] = unique_curves(list(plus.values()) + list(minus.values()))


def _check_sides(cat: Genus2Catalog) -> None:
    sigma = _pieces(cat.side_cutters("o"))
    if sorted(p.puncture_count == 0 for p in sigma) != [False, True]:
        raise ConstructionError("alpha_1, alpha_3, alpha_5 do not split off a compact pair of pants")
    s0 = _pieces(cat.side_cutters(0))
    if not any(p.signature == (0, 3, 0) for p in s0):
        raise ConstructionError("S_0^+ is not a compact pair of pants")
    for i in range(cat.n):
        if not any(q.signature == (0, 2, 1) for q in _pieces([cat.fan(i), cat.fan(i + 1)])):
            raise ConstructionError(f"alpha_0^{i}, alpha_0^{i + 1} do not bound a once-punctured annulus")


def _auxiliaries(cat: Genus2Catalog) -> None:
    n = cat.n
    C, C0, Cf = cat["C"], cat["C0"], cat["Cf"]
    cat["delta"] = {i: _det([c for c in C if c != cat.fan(i)], f"delta_{i}") for i in range(1, n)}
    for i, d in cat["delta"].items():
        if not is_outer(d):
            raise ConstructionError(f"delta_{i} is not an outer curve")
    deltas = list(cat["delta"].values())
    if n >= 3:
        cat["Delta"] = _det(C0 + deltas, "Delta")
        cat["D"] = deltas + [cat["Delta"]]
    else:
        cat["D"] = deltas
    if n >= 2:
        cat["eps2"] = _det(Cf[1:n] + [cat.alpha(k) for k in (1, 3, 4, 5)], "eps_2")
        cat["eps4"] = _det(Cf[1:n] + [cat.alpha(k) for k in (1, 2, 3, 5)], "eps_4")
        cat["E"] = cat["D"] + [cat["eps2"], cat["eps4"]]
    else:
        cat["E"] = list(cat["D"])
    odd = [cat.alpha(1), cat.alpha(3), cat.alpha(5)]

    def bc(j: int, s: int) -> NormalCurve:
        return cat.bounding((0, 1, 2), s, j)

    zeta = {0: _det(odd + [bc(j, 1) for j in range(1, n + 1)], "zeta^0")}
    for i in range(1, n + 1):
        A = odd + [cat.alpha(4)] + [bc(j, 1) for j in range(i)] + [bc(k, -1) for k in range(i, n + 1)]
        zeta[i] = _det(A, f"zeta^{i}")
    zeta[n + 1] = _det(odd + [bc(j, -1) for j in range(n)], f"zeta^{n + 1}")
    cat["zeta"] = zeta
    cat["Z"] = list(zeta.values())
    if n >= 2:
        _claim_auxiliaries(cat)


def d_lower(cat: Genus2Catalog, i: int) -> list[NormalCurve]:
    """The set of delta curves and the outer curve around punctures ``1..i``."""
    if i == 1:
        return []
    if i == 2:
        return [cat.delta(1)]
    return [cat.delta(j) for j in range(1, i)] + [cat["Delta_1i"][i]]


def d_upper(cat: Genus2Catalog, i: int) -> list[NormalCurve]:
    """The set of delta curves and the outer curve around punctures ``i..n``."""
    n = cat.n
    if i == n:
        return []
    if i == n - 1:
        return [cat.delta(n - 1)]
    return [cat.delta(j) for j in range(i, n)] + [cat["Delta_in"][i]]


def _claim_auxiliaries(cat: Genus2Catalog) -> None:
    n = cat.n
    C = cat["C"]
    low: dict[int, NormalCurve] = {2: cat.delta(1)}
    high: dict[int, NormalCurve] = {n - 1: cat.delta(n - 1)}
    if n >= 3:
        low[n] = high[1] = cat["Delta"]
    for i in range(3, n):
        drop = {cat.fan(k) for k in range(1, i)}
        low[i] = _det([c for c in C if c not in drop] + [cat.delta(j) for j in range(1, i)], f"Delta_{{1,{i}}}")
    for i in range(2, n - 1):
        drop = {cat.fan(k) for k in range(i, n)}
        high[i] = _det([c for c in C if c not in drop] + [cat.delta(j) for j in range(i, n)], f"Delta_{{{i},{n}}}")
    cat["Delta_1i"] = low
    cat["Delta_in"] = high
    plus, minus = {}, {}
    for i in range(1, n + 1):
        drop = {cat.fan(k) for k in range(i)} | {cat.alpha(2), cat.alpha(4)}
        plus[i] = _det([c for c in C if c not in drop] + d_lower(cat, i), f"beta_{i}^+")
        drop = {cat.fan(k) for k in range(i, n + 1)} | {cat.alpha(2), cat.alpha(4)}
        minus[i] = _det([c for c in C if c not in drop] + d_upper(cat, i), f"beta_{i}^-")
    cat["beta_i+"] = plus
    cat["beta_i-"] = minus
    a = cat.alpha
    gp, gm = {}, {}
    for i in range(1, n + 1):
        base = [a(1), a(2), a(4)]
        gp[i] = _det(
            [cat.fan(j) for j in range(i)] + base + [cat.zeta(k) for k in range(i + 1, n + 1)], f"gamma_+^{i}"
        )
        gm[i] = _det(
            [cat.fan(j) for j in range(i + 1, n + 1)] + base + [cat.zeta(k) for k in range(1, i + 1)],
            f"gamma_-^{i}",
        )
    cat["gamma_+"] = gp
    cat["gamma_-"] = gm


def _twist_auxiliaries(cat: Genus2Catalog) -> None:
    """``gamma^+`` and ``gamma^-`` used for the twists of ``alpha_4`` about ``alpha_5``."""
    n = cat.n
    fan = list(cat["Cf"]) if n >= 2 else [cat.fan(0), cat.fan(1)]
    cat["gamma^+"] = _det(fan + [cat.alpha(3), cat.bounding((5, 0, 1), 1, n)], "gamma^+")
    cat["gamma^-"] = _det(fan + [cat.alpha(3), cat.bounding((5, 0, 1), 1, 0)], "gamma^-")


def _x_family(cat: Genus2Catalog) -> None:
    """Generators of X: the chain curves and the listed neighbourhood boundaries."""
    n = cat.n
    sets: list[list[NormalCurve]] = []
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in (1, 5):
                sets.append([cat.fan(i), cat.fan(j), cat.alpha(k)])
            for k in (1, 4):
                sets.append([cat.fan(i), cat.fan(j), cat.alpha(k), cat.alpha(k + 1)])
    for j in range(n + 1):
        cyc = cat.chain_cycle(j)
        for start in range(6):
            for length in range(1, 7):
                ks = [(start + t) % 6 for t in range(length)]
                if length % 2 and (ks[0] % 2 or ks[-1] % 2):
                    continue
                if length == 6 and start:
                    continue
                if 0 not in ks and j:
                    continue
                sets.append([cyc[k] for k in ks])
    base: list[NormalCurve] = list(cat["C"])
    for A in sets:
        base += regular_neighbourhood_boundary(unique_curves(A))
    cat["X0"] = unique_curves(base)
    extra = regular_neighbourhood_boundary([cat.alpha(1), cat.alpha(2), cat.alpha(3)])
    cat["X_extra"] = unique_curves([cat.alpha(1), cat.alpha(3)] + extra)


@lru_cache(maxsize=None)
def genus2_family(n: int, with_x: bool = True) -> Genus2Catalog:
    tri = base_triangulation(n)
    word = surface_word(n)
    cat = Genus2Catalog(tri)
    C0 = [curve_from_sequence(tri, word, s, f"alpha_{k + 1}") for k, s in enumerate(CHAIN_SEQUENCES)]
    fan = [curve_from_sequence(tri, word, FIRST_FAN_SEQUENCE, "alpha_0^0")]
    for i in range(1, n + 1):
        fan.append(_next_fan_curve(tri, C0, fan).named(f"alpha_0^{i}"))
    check_pattern(C0, lambda a, b: 1 if b - a == 1 else 0, "chain")
    check_pattern(fan + [C0[0], C0[4]], lambda a, b: 1 if b > n and a <= n else 0, "fan")
    for f in fan:
        for k in (1, 2, 3):
            if intersection_number(f, C0[k]):
                raise ConstructionError(f"{f.label} meets alpha_{k + 1}")
    cat["C0"] = C0
    cat["Cf"] = fan
    cat["C"] = C0 + fan
    if len(set(cat["C"])) != n + 6:
        raise ConstructionError("chain curves are not pairwise distinct")
    _check_sides(cat)
    _bounding_family(cat)
    cat["Y"] = unique_curves(cat["C"] + cat["B"])
    _auxiliaries(cat)
    _twist_auxiliaries(cat)
    if with_x:
        _x_family(cat)
    return cat
