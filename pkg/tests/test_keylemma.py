import pytest

from dkloc.catalog import (all_marked, collapse, cyclic_group, discrete, eg_to_bg, identities_marked, indiscrete,
                           ordinal, walking_arrow_collapse)
from dkloc.category import identity_functor, strict_fiber
from dkloc.corpus import functors
from dkloc.keylemma import (check_conclusion, check_hypothesis, classification_row_check,
                            groupoid_observation_check, resolution_localization_demo)


def test_arrow_to_point_passes_both():
    F = walking_arrow_collapse()
    rep = check_hypothesis(F, max_dim=2, upto=1, effort=50)
    assert rep.hypothesis.passed
    assert [e.dim for e in rep.entries] == [0]  # only the point is nondegenerate in [0]
    assert check_conclusion(F, width=4, height=2, upto=1).summary.passed


def test_degenerate_chains_can_be_included():
    rep = check_hypothesis(walking_arrow_collapse(), max_dim=2, include_degenerate=True)
    # fibers over the degenerate chains are [1]^[n], of sizes 2, 3, 4
    assert [e.objects for e in rep.entries] == [2, 3, 4]
    assert rep.hypothesis.passed


def test_indiscrete_to_point():
    F = collapse(indiscrete("ab"))
    assert check_hypothesis(F, 2, 1).hypothesis.passed
    assert check_conclusion(F, 4, 2, 1).summary.passed


def test_discrete_to_point_fails_with_witnesses():
    F = collapse(discrete("ab"))
    h = check_hypothesis(F, 2, 1).hypothesis
    assert h.failed and "pi0" in h.detail
    c = check_conclusion(F, 4, 2, 1).summary
    assert c.failed and "not full" in c.detail


def test_essential_fibers_agree_on_examples():
    for F, ok in ((walking_arrow_collapse(), True), (collapse(discrete("ab")), False)):
        assert check_hypothesis(F, 1, 1, fiber_mode="essential").hypothesis.passed is ok


def test_bad_fiber_mode():
    with pytest.raises(ValueError):
        check_hypothesis(walking_arrow_collapse(), fiber_mode="lax")


def test_identity_conclusion_is_pass():
    for C in (ordinal(2), cyclic_group(2), discrete("ab"), indiscrete("abc")):
        assert check_conclusion(identity_functor(C), 3, 2, 1).summary.passed


def test_sampling_records_coverage():
    F = identity_functor(ordinal(3))
    rep = check_hypothesis(F, max_dim=2, sample=3, seed=1)
    assert rep.coverage[1] == (3, 6)
    again = check_hypothesis(F, max_dim=2, sample=3, seed=1)
    assert [e.chain for e in rep.entries] == [e.chain for e in again.entries]


def test_threads_do_not_change_order():
    F = collapse(indiscrete("abc"))
    a = check_hypothesis(F, 2, 1, workers=1).to_json()
    b = check_hypothesis(F, 2, 1, workers=4).to_json()
    assert a == b


def test_groupoid_observation():
    assert groupoid_observation_check(walking_arrow_collapse(), 2).passed
    assert groupoid_observation_check(identity_functor(ordinal(2)), 2).passed
    v = groupoid_observation_check(eg_to_bg(), 2)
    assert v.failed and "Z/2" in v.detail


def test_eg_to_bg_strict_fibers_are_not_contractible():
    fib = strict_fiber(eg_to_bg(), ("*",))
    assert len(fib.objects) == 2 and len(fib.morphisms) == 2


def test_classification_rows():
    assert classification_row_check(walking_arrow_collapse(), 1, 1).summary.passed
    for C in (ordinal(2), discrete("ab")):
        assert classification_row_check(identity_functor(C), 1, 1).summary.passed
    r = classification_row_check(collapse(discrete("ab")), 1, 1)
    assert r.checks["row 0"].failed and "2 vs 1" in r.checks["row 0"].detail
    assert r.data["hypothesis"]["status"] == "fail"


@pytest.mark.parametrize("R,A", [(all_marked(ordinal(1)), ["0"]),
                                 (identities_marked(ordinal(2)), ["0", "1", "2"]),
                                 (all_marked(indiscrete("ab")), ["a"])])
def test_resolution_demo(R, A):
    rep = resolution_localization_demo(R, A)
    assert rep.checks["hypothesis"].passed and rep.checks["conclusion"].passed


def test_resolution_demo_reports_weakly_terminal_objects():
    rep = resolution_localization_demo(all_marked(ordinal(1)), ["0"])
    special = {s["object"]: s["weakly_terminal"] for s in rep.data["special"]}
    assert special["0"] is not None and special["1"] is not None


@pytest.mark.parametrize("name", sorted(functors()))
def test_hypothesis_pass_never_meets_conclusion_fail(name):
    F = functors()[name]
    h = check_hypothesis(F, 2, 1).hypothesis
    c = check_conclusion(F, 3, 2, 1).summary
    assert not (h.passed and c.failed)
    if h.passed:
        assert groupoid_observation_check(F, 2).passed


def test_report_json_carries_bounds():
    rep = check_hypothesis(walking_arrow_collapse(), 2, 1, 50)
    rep.conclusion = check_conclusion(walking_arrow_collapse(), 4, 2, 1)
    doc = rep.to_json()
    assert doc["bounds"]["max_dim"] == 2 and doc["conclusion"]["bounds"]["width"] == 4
    assert doc["summary"]["status"] == "pass"
