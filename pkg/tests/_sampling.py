"""Random curves for property tests: short generator words applied to catalog curves."""

from __future__ import annotations

import random

from curvekit.constructions import family
from curvekit.mapping import generating_set

KERNEL_SURFACES = [(0, 5), (0, 6), (0, 7), (1, 3), (1, 4), (2, 1)]


def catalog_and_generators(g: int, n: int):
    cat = family(g, n)
    gens = [f for _, f in sorted(generating_set(cat).items())]
    return cat, gens


def random_curve(cat, gens, rng: random.Random, max_depth: int = 2):
    c = rng.choice(list(cat["Y"]))
    for _ in range(rng.randint(0, max_depth)):
        c = rng.choice(gens)(c)
    return c


def random_flips(tri, rng: random.Random, count: int):
    """Up to ``count`` random flips; returns the final triangulation and the transfers."""
    from curvekit.triangulation import flip, is_flippable

    transfers = []
    for _ in range(count):
        e = rng.randrange(tri.num_edges)
        if not is_flippable(tri, e):
            continue
        tri, tr = flip(tri, e)
        transfers.append(tr)
    return tri, transfers
