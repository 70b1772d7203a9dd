import random

import pytest
from hypothesis import given, strategies as st

from dkloc.catalog import boundary_triangle_category, cyclic_group, discrete, indiscrete, ordinal, poset, terminal
from dkloc.homotopy import (CapTooSmall, GroupPresentation, HomologyGroup, edge_path_group, homology,
                            is_trivial_group, pi0, simplify, weakly_contractible)
from dkloc.snf import elementary_divisors
from dkloc.sset import boundary_simplex, nerve, product, standard_simplex
from oracles import components_by_search, dense_smith, nerve_homology, sset_homology
from strategies import categories


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-4, 4)), max_size=25))
def test_elementary_divisors_match_sympy(triples):
    entries = {}
    for r, c, v in triples:
        entries[r, c] = entries.get((r, c), 0) + v
    rows = max((r for r, _ in entries), default=-1) + 1
    cols = max((c for _, c in entries), default=-1) + 1
    assert elementary_divisors(entries) == dense_smith(rows, cols, entries)


def test_elementary_divisors_divisibility_chain():
    assert elementary_divisors({(0, 0): 4, (1, 1): 6}) == [2, 12]
    assert elementary_divisors({}) == []


def test_boundary_of_triangle_homology():
    H = homology(boundary_simplex(2, 3), 2)
    assert H[0] == HomologyGroup(1) and H[1] == HomologyGroup(1) and H[2].trivial


def test_free_triangle_category_is_a_circle():
    H = homology(nerve(boundary_triangle_category(), 3), 2)
    assert (H[0].betti, H[1].betti, H[2].trivial) == (1, 1, True)


def test_bz2_homology():
    H = homology(nerve(cyclic_group(2), 3), 2)
    assert H[1] == HomologyGroup(0, (2,))
    assert H[2].trivial
    assert str(H[1]) == "Z/2"


def test_bz3_first_homology():
    assert homology(nerve(cyclic_group(3), 3), 1)[1] == HomologyGroup(0, (3,))


@given(categories(max_objects=4, max_morphisms=9))
def test_nerve_homology_matches_dense_oracle(C):
    H = homology(nerve(C, 3), 2)
    assert [(H[n].betti, H[n].torsion) for n in range(3)] == nerve_homology(C, 2)


@given(categories(max_objects=5, max_morphisms=14))
def test_h0_rank_is_number_of_components(C):
    X = nerve(C, 2)
    assert homology(X, 0)[0].betti == len(pi0(X)) == len(components_by_search(C))


def _with_initial(rng):
    n = rng.randint(1, 4)
    elems = [str(i) for i in range(n)]
    rel = [("0", e) for e in elems[1:]]
    rel += [(a, b) for a in elems[1:] for b in elems[1:] if a < b and rng.random() < 0.4]
    return poset(elems, rel)


@pytest.mark.parametrize("seed", range(8))
def test_initial_object_gives_acyclic_nerve(seed):
    C = _with_initial(random.Random(seed))
    H = homology(nerve(C, 3), 2)
    assert all(H.reduced(n).trivial for n in range(3))
    assert weakly_contractible(nerve(C, 3), 2).passed


@given(categories(max_objects=4, max_morphisms=10))
def test_hurewicz_abelianization_is_h1(C):
    X = nerve(C, 2)
    comp = pi0(X)[0]
    Y = X.restrict(comp)
    free, torsion = edge_path_group(Y, 0).abelian_invariants()
    H1 = homology(Y, 1)[1]
    assert (free, torsion) == (H1.betti, H1.torsion)


def test_product_of_circles_homology():
    S = boundary_simplex(2, 3)
    T = product(S, S)
    H = homology(T, 2)
    assert [(H[n].betti, H[n].torsion) for n in range(3)] == sset_homology(T, 2)
    assert (H[1].betti, H[2].betti) == (2, 1)


def test_edge_path_group_of_bz2():
    P = edge_path_group(nerve(cyclic_group(2), 2))
    assert len(P.generators) == 1
    assert P.abelian_invariants() == (0, (2,))
    assert is_trivial_group(P, 50).failed


def test_tietze_kills_generators():
    # <a, b | a b a^-1 b^-1, a>: abelianization Z, so Fail
    P = GroupPresentation(["a", "b"], [(1, 2, -1, -2), (1,)])
    v = is_trivial_group(P, 10)
    assert v.failed and "Z" in v.detail
    # <a, b | a b, b> is trivial
    Q = GroupPresentation(["a", "b"], [(1, 2), (2,)])
    assert is_trivial_group(Q, 10).passed
    R, steps = simplify(Q, 10)
    assert R.generators == [] and steps >= 1


def test_tietze_effort_bound_is_honest():
    # a perfect presentation of the trivial group that needs real work
    P = GroupPresentation(["a", "b"], [(1, 1, 2, -1, -2), (2, 2, 1, -2, -1)])
    assert P.abelian_invariants() == (0, ())
    v = is_trivial_group(P, 0)
    assert v.inconclusive_


def test_weakly_contractible_verdicts():
    assert weakly_contractible(nerve(terminal(), 2), 1).passed
    assert weakly_contractible(nerve(indiscrete("abc"), 3), 2).passed
    v = weakly_contractible(nerve(discrete("ab"), 2), 1)
    assert v.failed and "pi0" in v.detail
    v = weakly_contractible(nerve(cyclic_group(2), 2), 1)
    assert v.failed and "Z/2" in v.detail
    assert weakly_contractible(standard_simplex(3, 3), 2).passed
    assert v.bounds["cap"] == 2


def test_cap_requirements():
    with pytest.raises(CapTooSmall):
        homology(nerve(ordinal(1), 1), 1)
    with pytest.raises(CapTooSmall):
        weakly_contractible(nerve(ordinal(1), 1), 0)


def test_empty_space_is_not_contractible():
    X = nerve(ordinal(1), 2).restrict([])
    assert weakly_contractible(X, 1).failed
