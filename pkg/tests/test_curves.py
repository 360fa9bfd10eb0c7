import random

import pytest
from hypothesis import given, settings, strategies as st

from _sampling import KERNEL_SURFACES, catalog_and_generators, random_curve, random_flips
from curvekit.curves import CurveError, NormalCurve, intersection_number, is_disjoint, topological_type
from curvekit.overlay import oracle_intersection

ORACLE_WEIGHT = 40


def _pair(surface, seed, depth=2):
    cat, gens = catalog_and_generators(*surface)
    rng = random.Random(seed)
    return cat, rng, random_curve(cat, gens, rng, depth), random_curve(cat, gens, rng, depth)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_intersection_is_symmetric(surface, seed):
    _, _, a, b = _pair(surface, seed)
    assert intersection_number(a, b) == intersection_number(b, a)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_intersection_is_flip_invariant(surface, seed):
    cat, rng, a, b = _pair(surface, seed)
    tri, transfers = random_flips(cat.tri, rng, 4)
    wa, wb = a.weights, b.weights
    for tr in transfers:
        wa, wb = tr(wa), tr(wb)
    assert intersection_number(NormalCurve(tri, wa), NormalCurve(tri, wb)) == intersection_number(a, b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_intersection_agrees_with_bigon_removal_oracle(surface, seed):
    _, _, a, b = _pair(surface, seed, depth=1)
    if a.length + b.length > ORACLE_WEIGHT:
        return
    assert intersection_number(a, b) == oracle_intersection(a, b)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_classification_is_flip_invariant(surface, seed):
    cat, rng, a, _ = _pair(surface, seed)
    tri, transfers = random_flips(cat.tri, rng, 4)
    w = a.weights
    for tr in transfers:
        w = tr(w)
    t0, t1 = topological_type(a), topological_type(NormalCurve(tri, w))
    assert t0.kind == t1.kind
    assert sorted(t0.genera) == sorted(t1.genera)


def test_self_intersection_is_zero(cat05):
    for c in cat05["Y"]:
        assert intersection_number(c, c) == 0
        assert not is_disjoint(c, c)


def test_outer_chain_pattern(cat06):
    O = cat06["O"]
    for i in range(6):
        for j in range(6):
            want = 2 if (j - i) % 6 in (1, 5) else 0
            assert intersection_number(O[i], O[j]) == want


@pytest.mark.parametrize("n", [5, 6, 7])
def test_outer_chain_curves_are_outer(n):
    from curvekit.constructions import family

    assert all(topological_type(c).kind == "outer" for c in family(0, n)["O"])


def test_horizontal_loop_is_nonseparating(cat13):
    assert topological_type(cat13.a1).kind == "nonseparating"


def test_bounding_pair_curves_are_nonseparating(cat21):
    assert all(topological_type(c).kind == "nonseparating" for c in cat21["B"])


def test_rejects_non_normal_weights(cat05):
    w = list(cat05["Y"][0].weights)
    w[0] += 1
    with pytest.raises(CurveError):
        NormalCurve(cat05.tri, w)


def test_rejects_multicurves(cat05):
    doubled = [2 * x for x in cat05["Y"][0].weights]
    with pytest.raises(CurveError):
        NormalCurve(cat05.tri, doubled)


def test_rejects_puncture_links(cat05):
    tri = cat05.tri
    with pytest.raises(CurveError):
        NormalCurve(tri, tri.puncture_link_weights(0))


def test_json_round_trip(cat13):
    c = cat13.a1
    back = NormalCurve.from_json(cat13.tri, c.to_json())
    assert back == c and back.label == "alpha_1"


def test_json_from_another_surface_is_rejected(cat13, cat05):
    with pytest.raises(CurveError):
        NormalCurve.from_json(cat05.tri, cat13.a1.to_json())
