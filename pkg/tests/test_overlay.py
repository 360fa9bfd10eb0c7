import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from _sampling import KERNEL_SURFACES, catalog_and_generators, random_curve
from curvekit.curves import intersection_number
from curvekit.overlay import (
    build_overlay,
    complement_decomposition,
    find_bigon,
    reduce_to_minimal_position,
    regular_neighbourhood_boundary,
)


def _system(surface, seed, size):
    cat, gens = catalog_and_generators(*surface)
    rng = random.Random(seed)
    out = {}
    while len(out) < size:
        c = random_curve(cat, gens, rng, 1)
        out[c.weights] = c
    return cat, list(out.values())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6), st.integers(1, 4))
def test_geodesic_overlay_is_bigon_free_and_conserves_euler(surface, seed, size):
    _, curves = _system(surface, seed, size)
    ov = build_overlay(curves[0].tri, curves)
    assert find_bigon(ov) is None
    complement_decomposition(ov)  # raises if the Euler bookkeeping fails
    for a in range(size):
        for b in range(a + 1, size):
            assert ov.crossing_count(a, b) == intersection_number(curves[a], curves[b])


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_naive_drawing_reduces_to_minimal_position(surface, seed):
    _, curves = _system(surface, seed, 2)
    if sum(c.length for c in curves) > 40:
        return
    ov = reduce_to_minimal_position(build_overlay(curves[0].tri, curves, order="naive"))
    assert find_bigon(ov) is None
    assert len(ov.crossings) == intersection_number(*curves)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_complement_is_independent_of_curve_order(surface, seed):
    _, curves = _system(surface, seed, 3)
    tri = curves[0].tri
    p1 = complement_decomposition(build_overlay(tri, curves))
    p2 = complement_decomposition(build_overlay(tri, curves[::-1]))
    assert Counter(p.signature for p in p1) == Counter(p.signature for p in p2)
    push = lambda ps: sorted(c.weights for p in ps for c in p.essential_pushoffs())
    assert push(p1) == push(p2)


def test_identical_input_gives_identical_complex(cat05):
    Y = list(cat05["Y"])[:4]
    a = build_overlay(cat05.tri, Y).to_json()
    b = build_overlay(cat05.tri, Y).to_json()
    assert a == b


def test_duplicate_curves_are_refused(cat05):
    c = cat05["Y"][0]
    with pytest.raises(ValueError):
        build_overlay(cat05.tri, [c, c])


def test_odd_chain_boundary_is_the_bounding_pair(cat21):
    labels = cat21.labels()
    chain = [labels["alpha_1"], labels["alpha_2"], labels["alpha_3"]]
    want = {labels["beta_{a1,a2,a3}^+"], labels["beta_{a1,a2,a3}^-"]}
    assert set(regular_neighbourhood_boundary(chain)) == want


def test_single_curve_boundary_is_itself(cat13):
    assert regular_neighbourhood_boundary([cat13.a1]) == [cat13.a1]


def test_length_two_chain_bounds_a_one_holed_torus(cat21):
    from curvekit.curves import topological_type

    labels = cat21.labels()
    pair = sorted([labels["alpha_1"], labels["alpha_2"]])
    sigs = [p.signature for p in complement_decomposition(build_overlay(cat21.tri, pair))]
    assert sigs == [(1, 1, 1)]
    out = regular_neighbourhood_boundary(pair)
    assert len(out) == 1
    kind = topological_type(out[0])
    assert kind.kind == "separating" and sorted(kind.genera) == [1, 1]


def test_overlay_debug_exports(cat05):
    ov = build_overlay(cat05.tri, list(cat05["O"]))
    data = ov.to_json()
    assert {"crossings", "curves", "faces", "pieces"} <= set(data)
    assert len(data["crossings"]) == 10
    assert ov.to_dot().startswith("graph overlay {")
