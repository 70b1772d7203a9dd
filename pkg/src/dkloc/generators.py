"""Seeded random finite categories and markings.

Random categories are built concretely: every object is a small finite set
and the morphisms are the closure under composition of a few random
functions between them.  This produces idempotents, non-invertible
endomorphisms, isomorphisms and non-thin hom-sets without ever needing an
associativity check (composition of functions is associative).
"""

from __future__ import annotations

import random
from itertools import product as iproduct

from .category import FinCat, RelCat


def concrete_category(sizes, generators, max_morphisms: int | None = None, name="") -> FinCat | None:
    """Subcategory of finite sets generated by the given functions.

    ``sizes[i]`` is the cardinality of object ``i``; a generator is
    ``(i, j, values)`` with ``values`` a tuple of length ``sizes[i]`` with
    entries below ``sizes[j]``.  Returns None if the closure exceeds
    ``max_morphisms``.
    """
    objs = list(range(len(sizes)))
    idfun = {i: (i, i, tuple(range(sizes[i]))) for i in objs}
    arrows = list(idfun.values())
    seen = set(arrows)
    for g in generators:
        if g not in seen:
            seen.add(g)
            arrows.append(g)
    frontier = list(arrows)
    while frontier:
        new = []
        current = list(arrows)
        for f in frontier:
            for g in current:
                for a, b in ((g, f), (f, g)):
                    if a[0] == b[1]:
                        h = (b[0], a[1], tuple(a[2][v] for v in b[2]))
                        if h not in seen:
                            seen.add(h)
                            arrows.append(h)
                            new.append(h)
                            if max_morphisms is not None and len(arrows) > max_morphisms:
                                return None
        frontier = new
    names = {}
    for a in arrows:
        if a in idfun.values():
            names[a] = f"id_{a[0]}"
    k = 0
    for a in arrows:
        if a not in names:
            names[a] = f"m{k}"
            k += 1
    table = {}
    for f in arrows:
        for g in arrows:
            if g[0] == f[1]:
                table[names[g], names[f]] = names[(f[0], g[1], tuple(g[2][v] for v in f[2]))]
    return FinCat([str(i) for i in objs], [names[a] for a in arrows],
                  {names[a]: str(a[0]) for a in arrows}, {names[a]: str(a[1]) for a in arrows},
                  {str(i): names[idfun[i]] for i in objs},
                  {(g, f): h for (g, f), h in table.items()}, name=name)


def random_category(rng: random.Random, max_objects: int = 5, max_morphisms: int = 14,
                    max_set: int = 3, tries: int = 200) -> FinCat:
    """A random category with at most the given numbers of objects and morphisms."""
    for _ in range(tries):
        n = rng.randint(1, max_objects)
        sizes = [rng.randint(1, max_set) for _ in range(n)]
        ngen = rng.randint(0, max(1, max_morphisms - n))
        gens = []
        for _ in range(ngen):
            i, j = rng.randrange(n), rng.randrange(n)
            gens.append((i, j, tuple(rng.randrange(sizes[j]) for _ in range(sizes[i]))))
        C = concrete_category(sizes, gens, max_morphisms=max_morphisms, name="random")
        if C is not None:
            return C
    return concrete_category([1], [], name="random")


def random_poset(rng: random.Random, max_objects: int = 5, density: float = 0.4) -> FinCat:
    from .catalog import poset
    n = rng.randint(1, max_objects)
    elems = [str(i) for i in range(n)]
    rel = [(elems[i], elems[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return poset(elems, rel, name="random poset")


def random_marking(rng: random.Random, C: FinCat, density: float = 0.3) -> RelCat:
    """Marking generated by a random subset of the arrows."""
    picks = [m for m in C.non_identity() if rng.random() < density]
    return RelCat.generated(C, picks)


def random_relcat(rng: random.Random, max_objects: int = 4, max_morphisms: int = 10) -> RelCat:
    C = random_category(rng, max_objects, max_morphisms)
    return random_marking(rng, C, density=rng.choice([0.0, 0.2, 0.4, 0.7, 1.0]))


def random_relabeling(rng: random.Random, C: FinCat) -> FinCat:
    """An isomorphic copy of ``C`` with shuffled fresh names."""
    objs = list(C.objects)
    mors = list(C.morphisms)
    rng.shuffle(objs)
    rng.shuffle(mors)
    omap = {x: f"o{i}" for i, x in enumerate(objs)}
    mmap = {m: f"a{i}" for i, m in enumerate(mors)}
    D = C.relabel(omap, mmap)
    order_o = sorted(D.objects)
    order_m = sorted(D.morphisms)
    return FinCat(order_o, order_m, {m: D.src(m) for m in order_m}, {m: D.dst(m) for m in order_m},
                  {x: D.id(x) for x in order_o}, D.table, name=C.name)


def corpus(seed: int, count: int, **kw) -> list[FinCat]:
    rng = random.Random(seed)
    return [random_category(rng, **kw) for _ in range(count)]


def relcat_corpus(seed: int, count: int, **kw) -> list[RelCat]:
    rng = random.Random(seed)
    return [random_relcat(rng, **kw) for _ in range(count)]


def all_pairs(C: FinCat):
    return list(iproduct(C.objects, C.objects))


def tractable_relcat_corpus(seed: int, count: int, width_cap: int, max_zigzags: int,
                            **kw) -> tuple[list[RelCat], int]:
    """First ``count`` draws of the seeded stream whose zigzag count at ``width_cap`` is within budget.

    Returns the corpus and the number of draws skipped.
    """
    from .hammock import zigzag_count
    rng = random.Random(seed)
    out, skipped = [], 0
    while len(out) < count:
        R = random_relcat(rng, **kw)
        if zigzag_count(R, width_cap) <= max_zigzags:
            out.append(R)
        else:
            skipped += 1
    return out, skipped
