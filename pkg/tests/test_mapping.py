import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from _sampling import KERNEL_SURFACES, catalog_and_generators, random_curve
from curvekit.curves import intersection_number, topological_type
from curvekit.expansion import determine
from curvekit.mapping import (
    IDENTITY,
    MappingError,
    chirality,
    dehn_twist,
    generating_set,
    half_twist,
    parse_word,
    twist_power_oracle,
)
from curvekit.overlay import is_outer


def _shape(c):
    t = topological_type(c)
    return t.kind, sorted(t.genera), sorted(len(p) for p in t.punctures)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_generators_preserve_intersection_and_type(surface, seed):
    cat, gens = catalog_and_generators(*surface)
    rng = random.Random(seed)
    a, b = random_curve(cat, gens, rng, 1), random_curve(cat, gens, rng, 1)
    f = rng.choice(gens)
    assert intersection_number(f(a), f(b)) == intersection_number(a, b)
    assert _shape(f(a)) == _shape(a)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KERNEL_SURFACES), st.integers(0, 10**6))
def test_word_and_inverse_cancel(surface, seed):
    cat, gens = catalog_and_generators(*surface)
    rng = random.Random(seed)
    f = IDENTITY
    for _ in range(3):
        f = f * rng.choice(gens)
    c = random_curve(cat, gens, rng, 1)
    assert f.inverse()(f(c)) == c


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(0, 5), (0, 6), (1, 3), (1, 4), (2, 2)]), st.integers(0, 10**6))
def test_half_twist_squared_is_the_twist(surface, seed):
    cat, gens = catalog_and_generators(*surface)
    rng = random.Random(seed)
    outer = [c for c in cat.curves() if is_outer(c)]
    a = rng.choice(outer)
    c = random_curve(cat, gens, rng, 2)
    assert (half_twist(a) ** 2)(c) == dehn_twist(a)(c)
    assert (half_twist(a, -1) ** 2)(c) == dehn_twist(a, -1)(c)


@pytest.mark.parametrize("surface", [(0, 5), (0, 6), (1, 3), (1, 4)])
def test_half_twist_symmetry_on_catalog_pairs(surface):
    cat, _ = catalog_and_generators(*surface)
    outer = [c for c in sorted(set(cat.curves())) if is_outer(c)]
    checked = 0
    for a, b in itertools.combinations(outer, 2):
        if intersection_number(a, b) == 2:
            assert half_twist(a)(b) == half_twist(b, -1)(a)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("surface", [(1, 3), (1, 4), (2, 1)])
def test_twist_symmetry_on_catalog_pairs(surface):
    cat, _ = catalog_and_generators(*surface)
    cs = sorted(set(cat.curves()))
    checked = 0
    for a, b in itertools.combinations(cs, 2):
        if intersection_number(a, b) == 1:
            assert dehn_twist(a)(b) == dehn_twist(b, -1)(a)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("k", [2, -2, 3, -3])
def test_twist_power_intersection_formula(cat14, k):
    a, b = cat14.a0(0), cat14.a1
    i = intersection_number(a, b)
    assert i == 1
    assert twist_power_oracle(a, b, k) == abs(k) * i * i
    outer_a, outer_b = cat14.beta(0), cat14.beta(1)
    assert twist_power_oracle(outer_a, outer_b, k) == abs(k) * 4


def test_chirality_calibration(cat05):
    assert chirality() in (1, -1)
    for i in range(5):
        img = half_twist(cat05.alpha(i + 1))(cat05.alpha(i))
        assert img == cat05.gamma(i, i + 2)


def test_half_twist_needs_an_outer_curve(cat13):
    with pytest.raises(MappingError):
        half_twist(cat13.a1)


def test_disjoint_support_acts_trivially(cat05):
    a, b = cat05.alpha(0), cat05.alpha(2)
    assert intersection_number(a, b) == 0
    assert half_twist(a)(b) == b and dehn_twist(a, -1)(b) == b


def test_determination_is_equivariant(cat13):
    gens = generating_set(cat13)
    A = [x for x in cat13["C"] if x != cat13.a0(0)]
    base = determine(A).curve
    for f in gens.values():
        assert determine(f.apply_all(A)).curve == f(base)


def test_parse_word(cat13):
    labels = cat13.labels()
    f = parse_word("T(alpha_1)^-1 * H(beta_2)", labels)
    c = labels["alpha_0^1"]
    assert f(c) == dehn_twist(labels["alpha_1"], -1)(half_twist(labels["beta_2"])(c))
    assert parse_word("T(alpha_1)^0", labels) == IDENTITY


@pytest.mark.parametrize("text", ["X(alpha_1)", "T(nope)", "T(alpha_1)^x"])
def test_parse_word_errors(cat13, text):
    with pytest.raises(MappingError):
        parse_word(text, cat13.labels())


def test_generating_set_is_symmetric(cat21):
    gens = generating_set(cat21)
    assert len(gens) % 2 == 0
    for key, f in gens.items():
        if key.endswith("^-1"):
            assert gens[key[:-3]].inverse() == f
