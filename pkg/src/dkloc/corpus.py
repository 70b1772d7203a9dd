"""Curated examples: the fixtures shipped under ``fixtures/`` are generated from here."""

from __future__ import annotations

from .catalog import (all_marked, boundary_triangle_category, collapse, cyclic_group, discrete, eg_to_bg,
                      identities_marked, indiscrete, ordinal, parallel_pair, poset, terminal,
                      walking_arrow_collapse)
from .category import Functor, RelCat, identity_functor, resolution_category
from .families import MarkedOpfib, identity_fibration, product_family
from .sset import FunctorSequence


def parallel_pair_f() -> RelCat:
    """The parallel pair with ``f`` marked; its localization has no finite zigzag bound."""
    C = parallel_pair()
    return RelCat(C, ["id_x", "id_y", "f"], name="parallel/f")


def cospan() -> RelCat:
    C = poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="cospan")
    return RelCat(C, list(C.identities) + ["b->c"], name="cospan/b")


def categories() -> dict:
    return {
        "terminal": terminal(),
        "ordinal2": ordinal(2),
        "bz2": cyclic_group(2),
        "bz3": cyclic_group(3),
        "boundary_triangle": boundary_triangle_category(),
        "parallel_pair": parallel_pair(),
        "discrete_ab": discrete(["a", "b"]),
        "indiscrete_abc": indiscrete(["a", "b", "c"]),
    }


def relcats() -> dict:
    return {
        "arrow_all": all_marked(ordinal(1)),
        "arrow_ids": identities_marked(ordinal(1)),
        "ordinal2_ids": identities_marked(ordinal(2)),
        "ordinal2_all": all_marked(ordinal(2)),
        "indiscrete_ab_all": all_marked(indiscrete(["a", "b"])),
        "parallel_f": parallel_pair_f(),
        "cospan_b": cospan(),
        "terminal": all_marked(terminal()),
    }


def _resolution_projection(R: RelCat, A) -> Functor:
    return resolution_category(R, A)[1]


def functors() -> dict:
    """Functors for the fiber criterion, each with the outcome expected of the hypothesis."""
    ord2 = ordinal(2)
    return {
        "arrow_to_point": walking_arrow_collapse(),
        "indiscrete_to_point": collapse(indiscrete(["a", "b"])),
        "discrete_to_point": collapse(discrete(["a", "b"])),
        "eg_to_bg": eg_to_bg(),
        "identity_ordinal2": identity_functor(ord2),
        "identity_discrete": identity_functor(discrete(["a", "b"])),
        "identity_bz2": identity_functor(cyclic_group(2)),
        "ordinal2_to_point": collapse(ord2),
        "indiscrete3_to_point": collapse(indiscrete(["a", "b", "c"])),
        "resolution_arrow": _resolution_projection(all_marked(ordinal(1)), ["0"]),
    }


def opfibs() -> dict:
    return {
        "product_point_arrow": product_family(all_marked(terminal()), all_marked(ordinal(1))),
        "product_arrow_arrow": product_family(all_marked(ordinal(1)), all_marked(ordinal(1))),
        "product_arrow_parallel": product_family(identities_marked(ordinal(1)), parallel_pair_f()),
        "identity_ordinal2": identity_fibration(all_marked(ordinal(2))),
        "violation_transport": violation_fixture(),
    }


def violation_fixture() -> MarkedOpfib:
    """Product ``[1] x [1] -> [1]`` with the fiber arrow over ``0`` marked but not its transport over ``1``."""
    return product_family(identities_marked(ordinal(1)), identities_marked(ordinal(1)),
                          extra_marked=[("id_0", "0->1")])


VIOLATION_WITNESS = ("(id_0,0->1)", "(id_1,0->1)")


def product_pairs() -> dict:
    """``(D, F)`` pairs for the product-family comparison."""
    return {
        "point_x_arrow": (all_marked(terminal()), all_marked(ordinal(1))),
        "arrow_x_arrow": (all_marked(ordinal(1)), all_marked(ordinal(1))),
        "arrow_ids_x_parallel": (identities_marked(ordinal(1)), parallel_pair_f()),
    }


def sequences() -> dict:
    pt, a1, a2 = terminal(), ordinal(1), ordinal(2)
    disc = discrete(["a", "b"])
    to_pt = collapse
    top = Functor(disc, a1, {"a": "0", "b": "1"}, {"id_a": "id_0", "id_b": "id_1"})
    incl = Functor(a1, a2, {"0": "0", "1": "2"}, {"id_0": "id_0", "id_1": "id_2", "0->1": "0->2"})
    z2 = cyclic_group(2)
    ind = indiscrete(["a", "b"])
    cover = eg_to_bg()
    return {
        "single": FunctorSequence((a1,), ()),
        "terminal_chain": FunctorSequence((pt, pt), (identity_functor(pt),)),
        "arrow_to_point": FunctorSequence((a1, pt), (to_pt(a1),)),
        "mixed": FunctorSequence((disc, a1, pt), (top, to_pt(a1))),
        "inclusion_chain": FunctorSequence((disc, a1, a2, pt), (top, incl, to_pt(a2))),
        "cover_chain": FunctorSequence((ind, z2, pt), (cover, to_pt(z2))),
    }
