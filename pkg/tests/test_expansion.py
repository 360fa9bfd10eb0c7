import random

import pytest
from hypothesis import given, settings, strategies as st

from curvekit.constructions import separating_witness
from curvekit.curves import NormalCurve
from curvekit.expansion import (
    EMPTY,
    MANY,
    UNIQUE,
    CurveSetLedger,
    ExpansionError,
    WitnessChain,
    WitnessStep,
    determine,
    expand_k,
    expand_once,
    neighbour_set,
    transport_witness,
    verify_witness_chain,
)
from curvekit.mapping import half_twist


@pytest.fixture(scope="module")
def y1_05(cat05):
    ledger, stats = expand_once(cat05["Y"])
    return ledger


def test_separating_curve_from_two_chains():
    c, (A, B) = separating_witness(6, {0, 1, 2})
    assert determine(A + B).curve == c
    other, _ = separating_witness(6, {3, 4, 5})
    assert other == c


def test_empty_family_is_refused():
    with pytest.raises(ExpansionError):
        determine([])


def test_verdicts(cat05):
    assert determine([cat05.alpha(0)]).verdict == MANY
    assert determine(cat05["O"]).verdict == EMPTY
    # two disjoint outer curves leave only pants and twice-punctured discs
    assert determine([cat05.alpha(0), cat05.alpha(2)]).verdict == EMPTY


def test_expand_zero_levels_is_identity(cat05):
    ledger = expand_k(cat05["Y"], 0)
    assert set(ledger.curves()) == set(cat05["Y"])
    assert all(e.level == 0 for e in ledger.entries.values())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_pruning_is_sound_on_random_subset_pairs(seed):
    from curvekit.constructions import family

    Y = list(family(0, 5)["Y"])
    rng = random.Random(seed)
    A = rng.sample(Y, rng.randint(1, 5))
    bigger = A + rng.sample([c for c in Y if c not in A], rng.randint(1, 4))
    small, big = determine(A), determine(bigger)
    if small.verdict == EMPTY:
        assert big.verdict == EMPTY
    elif small.verdict == UNIQUE:
        assert big.verdict == EMPTY or (big.verdict == UNIQUE and big.curve == small.curve)


def test_expansion_is_order_independent(cat05, y1_05):
    Y = list(cat05["Y"])
    random.Random(3).shuffle(Y)
    shuffled, _ = expand_once(Y)
    assert set(shuffled.entries) == set(y1_05.entries)


def test_expansion_is_equivariant(cat05):
    O = list(cat05["O"])
    f = half_twist(cat05.alpha(1))
    direct, _ = expand_once(f.apply_all(O))
    image = {f(c).weights for c in expand_once(O)[0].curves()}
    assert set(direct.entries) == image


def test_neighbour_set_determines_every_new_curve(cat05, y1_05):
    Y = list(cat05["Y"])
    new = [c for c in y1_05.curves() if c not in Y]
    assert new
    for c in new:
        assert determine(neighbour_set(c, Y)).curve == c


def test_every_ledger_entry_replays(y1_05):
    for e in y1_05.entries.values():
        if e.level == 0:
            assert not e.witness
        else:
            witness = [NormalCurve(e.curve.tri, w) for w in e.witness]
            res = determine(witness)
            assert res.verdict == UNIQUE and res.curve == e.curve


def test_regression_size_of_first_expansion(y1_05):
    # frozen after agreement with the unpruned enumeration in the acceptance run
    assert len(y1_05) == 25
    assert sum(1 for e in y1_05.entries.values() if e.level == 1) == 10


def test_budget_gives_a_partial_subset(cat05, y1_05):
    part, stats = expand_once(cat05["Y"], max_subsets=3)
    assert part.partial and stats.partial
    assert set(part.entries) <= set(y1_05.entries)


def test_worker_pool_matches_serial(cat05):
    serial, _ = expand_once(cat05["O"])
    pooled, _ = expand_once(cat05["O"], workers=2)
    assert set(serial.entries) == set(pooled.entries)


def test_witness_chain_verification(cat13):
    C = list(cat13["C"])
    ledger = CurveSetLedger.from_curves(C)
    b0 = cat13.beta(0)
    step = WitnessStep(b0, tuple(C[1:]), 1)
    assert verify_witness_chain(ledger, WitnessChain((step,))).level == 1
    missing = WitnessStep(b0, (cat13.beta(1),) + tuple(C[1:]), None)
    bad = verify_witness_chain(ledger, WitnessChain((missing,)))
    assert not bad.ok and "not established" in bad.failure
    wrong = WitnessStep(cat13.beta(1), tuple(C[1:]), None)
    assert not verify_witness_chain(ledger, WitnessChain((wrong,))).ok
    low = WitnessStep(b0, tuple(C[1:]), 0)
    assert not verify_witness_chain(ledger, WitnessChain((low,))).ok


def test_transported_chain_verifies_the_image(cat13):
    C = list(cat13["C"])
    chain = WitnessChain((WitnessStep(cat13.beta(0), tuple(C[1:]), 1),))
    f = half_twist(cat13.beta(1))
    moved = transport_witness(f, chain)
    verdict = verify_witness_chain(CurveSetLedger.from_curves(f.apply_all(C)), moved)
    assert verdict.ok and verdict.level == 1
    assert moved.target == f(cat13.beta(0))


def test_ledger_json_is_stable(y1_05):
    assert y1_05.dumps() == y1_05.copy().dumps()
