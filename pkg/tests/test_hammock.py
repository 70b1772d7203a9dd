import random

import pytest
from hypothesis import given

from dkloc.catalog import all_marked, cyclic_group, identities_marked, indiscrete, ordinal
from dkloc.category import FinCat, RelCat
from dkloc.corpus import parallel_pair_f
from dkloc.generators import random_relcat
from dkloc.hammock import (BWD, FWD, Hammock, Zigzag, check_hammock, enumerate_hammocks, enumerate_hammocks_raw,
                           functor_on_zigzag, hammock_degen, hammock_face, ho_localization, is_reduced,
                           mapping_space_components, reduce_hammock, reduce_zigzag, saturate)
from dkloc.homotopy import homology, pi0, weakly_contractible
from dkloc.sset import audit
from oracles import brute_hammocks
from strategies import relcats


def _random_zigzag(rng, R, x, length):
    C = R.base
    segs, here = [], x
    for _ in range(length):
        if rng.random() < 0.5:
            opts = [(FWD, a) for a in C.out_arrows(here)]
        else:
            opts = [(BWD, w) for w in C.in_arrows(here) if w in R.weq]
        if not opts:
            continue
        d, a = rng.choice(opts)
        segs.append((d, a))
        here = C.dst(a) if d == FWD else C.src(a)
    return Zigzag(x, here, tuple(segs))


@given(relcats())
def test_reduce_zigzag_idempotent_and_reduced(R):
    rng = random.Random(len(R.base.morphisms))
    for x in R.base.objects:
        for n in range(6):
            z = _random_zigzag(rng, R, x, n)
            r = reduce_zigzag(R.base, z)
            assert is_reduced(R.base, r)
            assert reduce_zigzag(R.base, r) == r
            assert (r.source, r.target) == (z.source, z.target)


@given(relcats())
def test_reduce_is_compatible_with_concatenation(R):
    # reducing pieces first and then the whole gives the same word
    rng = random.Random(7)
    C = R.base
    for x in C.objects:
        z1 = _random_zigzag(rng, R, x, 3)
        z2 = _random_zigzag(rng, R, z1.target, 3)
        whole = reduce_zigzag(C, z1.then(z2))
        assert reduce_zigzag(C, reduce_zigzag(C, z1).then(reduce_zigzag(C, z2))) == whole


@pytest.mark.parametrize("seed", range(12))
def test_hammocks_match_brute_force(seed):
    R = random_relcat(random.Random(seed), 3, 5)
    for x in R.base.objects:
        for y in R.base.objects:
            for width, height in ((3, 1), (2, 2)):
                ours = enumerate_hammocks_raw(R, x, y, width, height)
                ref = brute_hammocks(R, x, y, width, height)
                for n in range(height + 1):
                    assert {h.label() for h in ours[n]} == ref[n]
                    assert len(ours[n]) == len(ref[n])
                    assert all(check_hammock(R, h) for h in ours[n])


@given(relcats(max_objects=3, max_morphisms=6))
def test_faces_and_degeneracies_stay_in_the_space(R):
    C = R.base
    x = C.objects[0]
    levels = enumerate_hammocks_raw(R, x, x, 3, 2)
    labels = [{h.label() for h in lvl} for lvl in levels]
    for n in (1, 2):
        for h in levels[n]:
            for i in range(n + 1):
                f = hammock_face(C, h, i)
                assert check_hammock(R, f)
                if f.width <= 3:
                    assert f.label() in labels[n - 1]
    for h in levels[1]:
        for i in range(2):
            assert hammock_degen(C, h, i).label() in labels[2]


def test_reduce_hammock_drops_identity_columns():
    R = all_marked(ordinal(1))
    h = Hammock("0", "1", (FWD, BWD, FWD), (("0->1", "id_1", "id_1"),), ())
    r = reduce_hammock(R.base, h)
    assert r.pattern == (FWD,) and r.rows == (("0->1",),)


@given(relcats(max_objects=2, max_morphisms=5))
def test_space_is_simplicial_and_pi0_matches_components(R):
    C = R.base
    for x in C.objects:
        for y in C.objects:
            M = enumerate_hammocks(R, x, y, 3, 2)
            assert audit(M.space).passed
            comps = mapping_space_components(R, x, y, 3)
            assert len(pi0(M.space)) == len(comps.classes)


@given(relcats(max_objects=3, max_morphisms=7))
def test_ho_localization_matches_hammock_components(R):
    H = ho_localization(R, 4)
    for x in R.base.objects:
        for y in R.base.objects:
            M = mapping_space_components(R, x, y, 4)
            assert [[z.segments for z in c] for c in M.classes] == [[z.segments for z in c] for c in H.hom(x, y)]
            assert M.history == H.history[x, y]
            assert M.stabilized == H.stabilized[x, y]


def test_arrow_all_marked_is_contractible():
    R = all_marked(ordinal(1))
    for x in "01":
        for y in "01":
            M = enumerate_hammocks(R, x, y, 4, 2)
            assert M.stabilized and len(pi0(M.space)) == 1
            assert weakly_contractible(M.space, 1).passed


@pytest.mark.parametrize("C", [ordinal(2), cyclic_group(2), indiscrete("ab")], ids=lambda C: C.name)
def test_identity_marking_gives_discrete_hom(C):
    R = identities_marked(C)
    for x in C.objects:
        for y in C.objects:
            M = enumerate_hammocks(R, x, y, 3, 2)
            assert len(pi0(M.space)) == len(C.hom(x, y))
            H = homology(M.space, 1)
            assert H[0].betti == len(C.hom(x, y)) and H[1].trivial


def test_empty_mapping_space():
    C = FinCat.from_table(["a", "b"], {})
    M = enumerate_hammocks(RelCat.minimal(C), "a", "b", 3, 2)
    assert M.space.is_empty() and M.stabilized


def test_parallel_pair_never_stabilizes():
    R = parallel_pair_f()
    for w in range(2, 7):
        H = ho_localization(R, w)
        assert not all(H.stabilized.values())
        assert H.verdict().inconclusive_


def test_parallel_pair_history_grows():
    H = ho_localization(parallel_pair_f(), 6)
    assert H.history["x", "x"] == [1, 1, 2, 2, 3, 3, 4]


def test_hocat_composition_is_associative():
    R = all_marked(indiscrete("ab"))
    H = ho_localization(R, 4)
    objs = list(R.base.objects)
    for x in objs:
        for y in objs:
            for z in objs:
                for w in objs:
                    for i in range(len(H.hom(x, y))):
                        for j in range(len(H.hom(y, z))):
                            for k in range(len(H.hom(z, w))):
                                a, b, c = (x, y, i), (y, z, j), (z, w, k)
                                left = H.compose(c, H.compose(b, a))
                                right = H.compose(H.compose(c, b), a)
                                assert left == right


def test_saturation_of_all_marked_and_parallel_pair():
    R = all_marked(ordinal(1))
    S, v = saturate(R, 4)
    assert v.passed and S.weq == R.weq
    S, v = saturate(parallel_pair_f(), 4)
    assert v.inconclusive_ and "g" in v.detail


def test_functor_on_zigzag_inverts_backward_arrows():
    from dkloc.catalog import collapse
    F = collapse(ordinal(1))
    z = Zigzag("0", "0", ((FWD, "0->1"), (BWD, "0->1")))
    assert functor_on_zigzag(F, z) == "id_*"
