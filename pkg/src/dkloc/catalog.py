"""Small named categories used throughout the examples and tests."""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, Sequence

from .category import FinCat, Functor, RelCat


def terminal(obj="*") -> FinCat:
    return FinCat.from_table([obj], {}, name="[0]")


def poset(elements: Sequence, relations: Iterable[tuple], name="") -> FinCat:
    """Thin category of the partial order generated by ``relations``.

    Arrows are named ``"x->y"``.  Raises ValueError if the relation has a
    cycle (the result would not be antisymmetric).
    """
    elements = list(elements)
    leq = {(x, x) for x in elements} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in iproduct(list(leq), list(leq)):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    for a, b in leq:
        if a != b and (b, a) in leq:
            raise ValueError(f"relation has a cycle through {a} and {b}")
    arrows = {f"{a}->{b}": (a, b) for a in elements for b in elements if a != b and (a, b) in leq}
    comp = []
    for g, (b, c) in arrows.items():
        for f, (a, b2) in arrows.items():
            if b2 == b:
                comp.append((g, f, f"{a}->{c}"))
    return FinCat.from_table(elements, arrows, comp, name=name)


def ordinal(n: int) -> FinCat:
    """The poset ``[n] = {0 < 1 < ... < n}``."""
    elems = [str(i) for i in range(n + 1)]
    return poset(elems, [(elems[i], elems[i + 1]) for i in range(n)], name=f"[{n}]")


def discrete(names: Sequence) -> FinCat:
    return FinCat.from_table(list(names), {}, name="disc{" + ",".join(map(str, names)) + "}")


def indiscrete(names: Sequence) -> FinCat:
    """Exactly one arrow between any two objects; every arrow invertible."""
    names = list(names)
    arrows = {f"{a}->{b}": (a, b) for a in names for b in names if a != b}
    comp = []
    for a, b, c in iproduct(names, repeat=3):
        if a != b and b != c:
            comp.append((f"{b}->{c}", f"{a}->{b}", f"id_{a}" if a == c else f"{a}->{c}"))
    return FinCat.from_table(names, arrows, comp, name="ind{" + ",".join(map(str, names)) + "}")


def cyclic_group(n: int, obj="*") -> FinCat:
    """``BZ/n``: one object, arrows ``g^k``; ``g^0`` is the identity ``id_*``."""
    def name(k):
        return f"id_{obj}" if k % n == 0 else ("g" if k % n == 1 else f"g^{k % n}")
    arrows = {name(k): (obj, obj) for k in range(1, n)}
    comp = [(name(a), name(b), name(a + b)) for a in range(1, n) for b in range(1, n)]
    return FinCat.from_table([obj], arrows, comp, name=f"BZ/{n}")


def monoid(elements: Sequence[str], mult, obj="*", unit="e") -> FinCat:
    """One-object category of a finite monoid; ``mult(a, b)`` is ``a . b``.

    ``unit`` is renamed to the identity ``id_<obj>``.
    """
    def rn(a):
        return f"id_{obj}" if a == unit else a
    arrows = {a: (obj, obj) for a in elements if a != unit}
    comp = [(a, b, rn(mult(a, b))) for a in arrows for b in arrows]
    return FinCat.from_table([obj], arrows, comp, name="monoid")


def parallel_pair() -> FinCat:
    """Two parallel arrows ``f, g: x -> y``."""
    return FinCat.from_table(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")}, name="parallel")


def collapse(C: FinCat, D: FinCat | None = None) -> Functor:
    """The unique functor to the terminal category."""
    D = D or terminal()
    (pt,) = D.objects
    return Functor(C, D, {x: pt for x in C.objects}, {m: D.id(pt) for m in C.morphisms}, name="!")


def all_marked(C: FinCat) -> RelCat:
    return RelCat.maximal(C)


def identities_marked(C: FinCat) -> RelCat:
    return RelCat.minimal(C)


def walking_arrow_collapse() -> Functor:
    """``[1] -> [0]``."""
    return collapse(ordinal(1))


def eg_to_bg() -> Functor:
    """Indiscrete category on two objects to ``BZ/2``, both non-identity arrows to ``g``."""
    E = indiscrete(["a", "b"])
    G = cyclic_group(2)
    return Functor(E, G, {"a": "*", "b": "*"},
                   {"id_a": "id_*", "id_b": "id_*", "a->b": "g", "b->a": "g"}, name="EG->BG")


def boundary_triangle_category() -> FinCat:
    """Free category on the graph ``0 -> 1 -> 2``, ``0 -> 2`` with no relation.

    Its nerve has the homotopy type of a circle.
    """
    arrows = {"a": ("0", "1"), "b": ("1", "2"), "c": ("0", "2"), "ba": ("0", "2")}
    return FinCat.from_table(["0", "1", "2"], arrows, [("b", "a", "ba")], name="free square-ish")
