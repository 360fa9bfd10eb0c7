import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from curvekit import SurfaceError, SurfaceSpec, build_base_triangulation, flip
from curvekit.triangulation import Triangulation, invariants_report, is_flippable

SURFACES = [(0, 5), (0, 6), (0, 7), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)]


@pytest.mark.parametrize("g,n", SURFACES)
def test_faces_minus_edges_is_euler_characteristic(g, n):
    tri = build_base_triangulation(SurfaceSpec(g, n))
    assert tri.num_triangles - tri.num_edges == 2 - 2 * g - n


@pytest.mark.parametrize("g,n", SURFACES)
def test_corner_cycles_partition_the_corners(g, n):
    tri = build_base_triangulation(SurfaceSpec(g, n))
    corners = [c for cyc in tri.corner_cycles for c in cyc]
    assert sorted(corners) == list(range(3 * tri.num_triangles))
    assert len(tri.corner_cycles) == n


@pytest.mark.parametrize("g,n", SURFACES)
def test_base_triangulation_is_deterministic(g, n):
    a = build_base_triangulation(SurfaceSpec(g, n)).dumps()
    b = build_base_triangulation(SurfaceSpec(g, n)).dumps()
    assert a == b


@pytest.mark.parametrize("g,n,kappa", [(0, 5, 2), (1, 3, 3), (2, 1, 4)])
def test_invariants_report(g, n, kappa):
    rep = invariants_report(build_base_triangulation(SurfaceSpec(g, n)))
    assert (rep["genus"], rep["punctures"], rep["complexity"]) == (g, n, kappa)
    assert rep["euler"] == 2 - 2 * g - n


@pytest.mark.parametrize("g,n", [(2, 0), (0, 3), (0, 4), (1, 1), (3, 1), (0, 0)])
def test_unsupported_surfaces_are_rejected(g, n):
    with pytest.raises(SurfaceError):
        SurfaceSpec(g, n)


def test_s20_rejection_points_at_s06():
    with pytest.raises(SurfaceError, match="0,6"):
        SurfaceSpec(2, 0)


@pytest.mark.parametrize("text", ["0;5", "x,y", "1"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(SurfaceError):
        SurfaceSpec.parse(text)


def test_parse_round_trip():
    assert SurfaceSpec.parse(" 1, 4") == SurfaceSpec(1, 4)
    assert str(SurfaceSpec(1, 4)) == "S_{1,4}"


@pytest.mark.parametrize("g,n", SURFACES)
def test_json_round_trip(g, n):
    tri = build_base_triangulation(SurfaceSpec(g, n))
    back = Triangulation.from_json(json.loads(tri.dumps()))
    assert back.dumps() == tri.dumps()
    assert back.spec == tri.spec


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SURFACES), st.integers(0, 10_000))
def test_flips_preserve_topology(surface, seed):
    rng = random.Random(seed)
    tri = build_base_triangulation(SurfaceSpec(*surface))
    for _ in range(6):
        e = rng.randrange(tri.num_edges)
        if is_flippable(tri, e):
            tri, _ = flip(tri, e)
    assert tri.spec == SurfaceSpec(*surface)
    assert tri.num_triangles - tri.num_edges == tri.euler


def test_flip_twice_restores_coordinates(cat05):
    tri = cat05.tri
    e = next(e for e in range(tri.num_edges) if is_flippable(tri, e))
    t1, tr1 = flip(tri, e)
    t2, tr2 = flip(t1, e)
    assert t2.spec == tri.spec
    for c in cat05["Y"]:
        assert tr2(tr1(c.weights)) == c.weights


def test_flip_of_unknown_edge_fails():
    tri = build_base_triangulation(SurfaceSpec(0, 5))
    with pytest.raises(SurfaceError):
        flip(tri, tri.num_edges)
