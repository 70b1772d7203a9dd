import pytest
from hypothesis import given

from dkloc.catalog import all_marked, identities_marked, ordinal, terminal
from dkloc.category import CategoryError, Functor
from dkloc.corpus import VIOLATION_WITNESS, opfibs, parallel_pair_f, product_pairs, violation_fixture
from dkloc.families import (MarkedOpfib, check_marked_opfib, identity_fibration, is_cocartesian,
                            is_relative_isomorphism, product_family, product_family_check, split_marking)
from strategies import relcats


@pytest.mark.parametrize("name", ["point_x_arrow", "arrow_x_arrow"])
def test_product_fixtures_pass(name):
    D, F = product_pairs()[name]
    rep = product_family_check(D, F, width=3, height=2, upto=1)
    assert rep.summary.passed, rep.summary.detail
    assert all(v.passed for v in rep.checks.values())


def test_parallel_fiber_is_inconclusive_not_pass():
    D, F = product_pairs()["arrow_ids_x_parallel"]
    rep = product_family_check(D, F, width=3, height=2, upto=1)
    assert rep.summary.inconclusive_
    assert not any(v.failed for v in rep.checks.values())


def test_violation_is_caught_at_transport():
    rep = check_marked_opfib(violation_fixture())
    assert rep.checks["(1) cocartesian lifts"].passed
    assert rep.checks["(2) marked lifts"].passed
    v = rep.checks["(3) transport preserves marking"]
    assert v.failed
    assert all(w in v.detail for w in VIOLATION_WITNESS)
    assert rep.checks["(4) transport localizes to equivalences"].inconclusive_
    assert rep.summary.failed


def test_identity_fibration_passes():
    rep = check_marked_opfib(identity_fibration(all_marked(ordinal(2))))
    assert rep.summary.passed


@given(relcats(max_objects=3, max_morphisms=6))
def test_identity_fibration_conditions_on_random_relcats(R):
    rep = check_marked_opfib(identity_fibration(R), width=2, height=2, upto=1)
    for k in ("relative functor", "(1) cocartesian lifts", "(2) marked lifts", "(3) transport preserves marking"):
        assert rep.checks[k].passed
    # fibers are points, so every transport is an isomorphism
    assert rep.checks["(4) transport localizes to equivalences"].passed


def test_missing_lift_fails_condition_one():
    E = identity_fibration(all_marked(ordinal(1)))
    E = MarkedOpfib(E.f, E.V, E.W, {k: v for k, v in E.lifts.items() if k != ("0", "0->1")})
    rep = check_marked_opfib(E)
    assert rep.checks["(1) cocartesian lifts"].failed
    assert rep.checks["(2) marked lifts"].inconclusive_


def test_non_cocartesian_lift_is_detected():
    # projection [1] x [1] -> [1] with the diagonal chosen as lift out of (0,0)
    E = product_family(identities_marked(ordinal(1)), identities_marked(ordinal(1)))
    l = ("0->1", "0->1")
    assert is_cocartesian(E, l) is not None
    assert is_cocartesian(E, ("0->1", "id_0")) is None


def test_transport_is_functorial():
    for name, E in opfibs().items():
        D = E.D
        for a, b in D.composable_pairs():
            Ta, Tb, Tab = E.transport(a), E.transport(b), E.transport(D.compose(a, b))
            for u in Tb.domain.morphisms:
                assert Ta(Tb(u)) == Tab(u), name
        for d in D.objects:
            T = E.transport(D.id(d))
            assert all(T(u) == u for u in T.domain.morphisms)


def test_split_marking_of_products():
    E = product_family(all_marked(ordinal(1)), all_marked(ordinal(1)))
    hor, ver, v = split_marking(E)
    assert v.passed
    assert ("0->1", "id_0") in hor and ("id_0", "0->1") in ver


def test_relative_isomorphism():
    R = all_marked(ordinal(1))
    I = Functor(R.base, R.base, {"0": "0", "1": "1"}, {m: m for m in R.base.morphisms})
    assert is_relative_isomorphism(I, R, R)
    assert not is_relative_isomorphism(I, R, identities_marked(ordinal(1)))


def test_marking_on_wrong_base_rejected():
    R = all_marked(ordinal(1))
    E = identity_fibration(R)
    with pytest.raises(CategoryError):
        MarkedOpfib(E.f, all_marked(ordinal(2)), R, E.lifts)


def test_height_cap_validated():
    with pytest.raises(ValueError):
        check_marked_opfib(identity_fibration(all_marked(terminal())), height=1)


def test_report_carries_scope_and_bounds():
    rep = check_marked_opfib(opfibs()["product_arrow_arrow"])
    doc = rep.to_json()
    assert "out of scope" in doc["data"]["scope"]
    assert doc["bounds"]["width"] == 3


def test_parallel_pair_fibers_are_not_overclaimed():
    rep = check_marked_opfib(opfibs()["product_arrow_parallel"])
    assert not rep.checks["(4) transport localizes to equivalences"].failed
    assert parallel_pair_f().weq
