import random

import pytest
from hypothesis import given

from dkloc.catalog import (all_marked, boundary_triangle_category, collapse, cyclic_group, discrete, eg_to_bg,
                           indiscrete, ordinal, parallel_pair, poset, terminal)
from dkloc.category import (CategoryError, FinCat, Functor, RelCat, arrow_category, chains, essential_chain_fiber,
                            identity_functor, is_degenerate_chain, max_subgroupoid, preimage_marking, product,
                            projection, resolution_category, strict_fiber, validate, validate_functor)
from dkloc.generators import random_relabeling
from oracles import brute_chains
from strategies import categories


@pytest.mark.parametrize("C", [terminal(), ordinal(3), cyclic_group(4), indiscrete("abc"), discrete("ab"),
                               parallel_pair(), boundary_triangle_category()], ids=lambda C: C.name)
def test_catalog_categories_are_valid(C):
    assert validate(C).passed


def test_missing_composite_is_rejected():
    with pytest.raises(CategoryError, match="missing"):
        FinCat(["x"], ["id", "e"], {"id": "x", "e": "x"}, {"id": "x", "e": "x"}, {"x": "id"},
               {("id", "id"): "id", ("id", "e"): "e", ("e", "id"): "e"})


def test_associativity_failure_has_witness():
    # (f . e) . f = f . f = id but f . (e . f) = f . id = f
    table = {("id", "id"): "id", ("id", "e"): "e", ("e", "id"): "e", ("e", "e"): "e",
             ("id", "f"): "f", ("f", "id"): "f", ("f", "f"): "id", ("e", "f"): "id", ("f", "e"): "f"}
    C = FinCat(["x"], ["id", "e", "f"], dict.fromkeys(["id", "e", "f"], "x"), dict.fromkeys(["id", "e", "f"], "x"),
               {"x": "id"}, table)
    v = validate(C)
    assert v.failed and "associativity" in v.detail


def test_unit_failure():
    table = {("id", "id"): "id", ("id", "e"): "id", ("e", "id"): "e", ("e", "e"): "e"}
    C = FinCat(["x"], ["id", "e"], {"id": "x", "e": "x"}, {"id": "x", "e": "x"}, {"x": "id"}, table)
    assert "unit" in validate(C).detail


def test_inverse_in_groups():
    G = cyclic_group(3)
    assert G.inverse("g") == "g^2" and G.inverse("id_*") == "id_*"
    assert ordinal(1).inverse("0->1") is None


@given(categories())
def test_chains_match_brute_force(C):
    for n in range(3):
        assert sorted(chains(C, n), key=repr) == sorted(brute_chains(C, n), key=repr)


@given(categories())
def test_relabeling_preserves_validity_and_counts(C):
    D = random_relabeling(random.Random(0), C)
    assert validate(D).passed
    assert [len(list(chains(D, n))) for n in range(3)] == [len(list(chains(C, n))) for n in range(3)]


@given(categories(max_objects=3, max_morphisms=7))
def test_generated_marking_is_closed(C):
    arrows = list(C.non_identity())[::2]
    R = RelCat.generated(C, arrows)
    assert set(arrows) <= R.weq
    for g, f in C.composable_pairs():
        if g in R.weq and f in R.weq:
            assert C.compose(g, f) in R.weq


def test_unclosed_marking_rejected():
    C = ordinal(2)
    with pytest.raises(CategoryError, match="closed"):
        RelCat(C, list(C.identities) + ["0->1", "1->2"])


def test_identities_must_be_marked():
    with pytest.raises(CategoryError, match="identities"):
        RelCat(ordinal(1), ["0->1"])


def test_arrow_category_of_ordinal():
    # [1]^[1] has 3 objects (0->0, 0->1, 1->1) and is the poset 00 < 01 < 11
    A = arrow_category(ordinal(1), 1)
    assert len(A.objects) == 3 and len(A.morphisms) == 6
    assert validate(A).passed


def test_strict_fiber_of_collapse_is_arrow_category():
    F = collapse(ordinal(1))
    for n in range(3):
        sigma = ("*",) + ("id_*",) * n
        fib = strict_fiber(F, sigma)
        A = arrow_category(ordinal(1), n)
        assert len(fib.objects) == len(A.objects) and len(fib.morphisms) == len(A.morphisms)


def test_strict_fiber_of_discrete_collapse():
    fib = strict_fiber(collapse(discrete("ab")), ("*",))
    assert len(fib.objects) == 2 and len(fib.morphisms) == 2


def test_essential_fiber_contains_strict_fiber():
    F = eg_to_bg()
    strict = strict_fiber(F, ("*",))
    ess = essential_chain_fiber(F, ("*",))
    assert validate(ess).passed
    # every object of D is iso to * through id and g, so each object appears twice
    assert len(ess.objects) == 2 * len(strict.objects)


def test_max_subgroupoid_and_preimage_marking():
    assert len(max_subgroupoid(ordinal(2)).morphisms) == 3
    assert len(max_subgroupoid(indiscrete("ab")).morphisms) == 4
    R = preimage_marking(collapse(ordinal(2)))
    assert R.weq == frozenset(ordinal(2).morphisms)
    assert preimage_marking(identity_functor(ordinal(2))).weq == ordinal(2).identities


def test_resolution_category_shape():
    Ct, proj = resolution_category(all_marked(ordinal(1)), ["0"])
    assert len(Ct.objects) == 2  # id_0 and 0->1
    assert validate(Ct).passed and validate_functor(proj).passed
    assert sorted(proj.ob(p) for p in Ct.objects) == ["0", "1"]


def test_product_and_projection():
    P = product(ordinal(1), cyclic_group(2))
    assert len(P.objects) == 2 and len(P.morphisms) == 6
    assert validate(P).passed
    assert validate_functor(projection(P, ordinal(1), 0)).passed
    assert validate_functor(projection(P, cyclic_group(2), 1)).passed


def test_functor_validation_catches_broken_composition():
    C = ordinal(2)
    D = ordinal(2)
    mm = {m: m for m in C.morphisms}
    mm["0->2"] = "0->1"
    v = validate_functor(Functor(C, D, {x: x for x in C.objects}, mm))
    assert v.failed and "0->2" in v.detail


def test_degenerate_chain():
    C = ordinal(1)
    assert is_degenerate_chain(C, ("0", "id_0", "0->1"))
    assert not is_degenerate_chain(C, ("0", "0->1"))


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        poset(["a", "b"], [("a", "b"), ("b", "a")])
