import pytest

from curvekit.expansion import determine
from curvekit.verify import SUITES, LevelEngine, SuiteError, TranscriptionError, load_suite, run_suite, search_witness
from curvekit.verify.report import ClaimReport, ClaimResult


@pytest.fixture(scope="module")
def report05():
    return run_suite("g0-complexity2", "0,5")


def test_complexity_two_suite_passes(report05):
    assert report05.ok and report05.exit_code() == 0
    assert report05.counts()["pass"] == len(report05.claims) > 0


def test_every_claim_carries_an_anchor(report05):
    assert all(c.anchor for c in report05.claims)


def test_reports_are_reproducible(report05):
    again = run_suite("g0-complexity2", "0,5")
    assert again.dumps(timings=False) == report05.dumps(timings=False)


@pytest.mark.parametrize("suite", SUITES)
def test_suite_files_load(suite):
    sf = load_suite(suite)
    assert sf.records
    ids = [r.id for r in sf.records]
    assert len(ids) == len(set(ids))


def test_unknown_suite():
    with pytest.raises(TranscriptionError, match="unknown suite"):
        run_suite("nope", "0,5")


def test_suite_on_the_wrong_surface():
    with pytest.raises(SuiteError):
        run_suite("g1-claims", "0,5")


def test_budget_gives_partial_with_unfinished_list():
    r = run_suite("g0-claims", "0,7", budget_secs=0.2)
    assert r.verdict == "partial"
    assert r.unfinished and r.exit_code() == 2


@pytest.mark.parametrize("budget", [0.05, 0.1, 0.2, 0.4])
def test_budget_cut_anywhere_never_crashes(budget):
    # warm caches move the cut point into the middle of a coverage round
    run_suite("g0-claims", "0,6")
    r = run_suite("g0-claims", "0,6", budget_secs=budget)
    assert r.verdict in ("pass", "partial")
    assert r.exit_code() == (2 if r.verdict == "partial" else 0)


def test_report_verdicts():
    ok = ClaimResult("a", "x", {}, "e", {}, "pass")
    bad = ClaimResult("b", "x", {}, "e", {}, "fail")
    assert ClaimReport("s", "0,5", 1, [ok]).exit_code() == 0
    assert ClaimReport("s", "0,5", 1, [ok, bad]).exit_code() == 1
    assert ClaimReport("s", "0,5", 1, [ok], unfinished=["c"]).exit_code() == 2
    lines = ClaimReport("s", "0,5", 1, [ok, bad]).summary_lines()
    assert lines[0].startswith("s on S_{0,5}: fail") and "b" in lines[1]


def test_search_witness_target_in_pool(cat05):
    chain = search_witness(cat05.alpha(0), cat05["Y"])
    assert chain is not None and chain.steps == ()


def test_search_witness_finds_a_determining_subset(cat13):
    chain = search_witness(cat13.beta(0), list(cat13["C"]))
    assert len(chain.steps) == 1
    step = chain.steps[0]
    assert determine(step.witness).curve == cat13.beta(0)
    assert step.level == 1


def test_search_witness_absence_is_none(cat05):
    far = cat05["D1"][0]
    assert search_witness(far, [cat05.alpha(0)]) is None


def test_engine_levels_are_monotone(cat13):
    eng = LevelEngine.from_base(cat13["C"])
    assert eng.level(cat13.a1) == 0
    res = eng.resolve(cat13.beta(1))
    assert res.found and res.level == 1
    assert eng.level(cat13.beta(1)) == 1


def test_displayed_auxiliary_is_recovered_exactly_on_three_punctures():
    r = run_suite("g1-claims", "1,3")
    rec = [c for c in r.claims if c.id.startswith("c4.auxiliary.recovered")]
    assert len(rec) == 3
    assert all(c.verdict == "pass" and c.computed["matches_displayed"] for c in rec)


def test_string_bounds_are_evaluated_per_instance():
    sf = load_suite("g2-claims")
    assert any(isinstance(r.get("bound"), str) for r in sf.records)
    r = run_suite("g2-claims", "2,1")
    assert r.ok
