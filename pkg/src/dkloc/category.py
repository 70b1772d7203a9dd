"""Finite categories given by total composition tables.

Objects and morphisms are arbitrary hashable identifiers.  Categories read
from files use strings; derived categories (arrow categories, fibers,
products) name their cells by tuples of constituent identifiers, so all
output is deterministic.

A chain of length ``n`` is the tuple ``(x0, f1, ..., fn)``: its start object
followed by ``n`` composable morphisms, first arrow first.  Length-0 chains
are ``(x,)``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

from .verdict import Verdict

Chain = tuple


class CategoryError(ValueError):
    """Structurally malformed category, functor or marking."""


class FinCat:
    """A finite category.

    ``table[(g, f)]`` is the composite ``g . f`` (``f`` first) and must be
    present for every composable pair.  The constructor checks structure
    (endpoints, identities, totality of the table) but not the unit and
    associativity laws; use :func:`validate` for those.
    """

    def __init__(self, objects, morphisms, source, target, identity, table, name=""):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.name = name
        self._src = dict(source)
        self._dst = dict(target)
        self._id = dict(identity)
        self._table = dict(table)
        self._check_structure()
        self._ids = frozenset(self._id.values())
        hom = defaultdict(list)
        out = defaultdict(list)
        inc = defaultdict(list)
        for m in self.morphisms:
            x, y = self._src[m], self._dst[m]
            hom[x, y].append(m)
            out[x].append(m)
            inc[y].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}
        self._inverse_cache: dict | None = None

    @classmethod
    def from_table(cls, objects, arrows: Mapping, composition=(), name=""):
        """Build a category from its non-identity arrows.

        ``arrows`` maps each non-identity morphism id to ``(source, target)``;
        identities named ``id_<x>`` are added.  ``composition`` lists
        ``(g, f, gf)`` for the composable pairs of non-identity arrows; the
        composites with identities are filled in.
        """
        objects = list(objects)
        ident = {x: f"id_{x}" for x in objects}
        order = list(ident.values()) + list(arrows)
        src = {i: x for x, i in ident.items()}
        dst = dict(src)
        for m, (x, y) in arrows.items():
            src[m], dst[m] = x, y
        table = {(g, f): gf for g, f, gf in composition}
        for m in order:
            table.setdefault((ident[dst[m]], m), m)
            table.setdefault((m, ident[src[m]]), m)
        return cls(objects, order, src, dst, ident, table, name=name)

    def _check_structure(self):
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object identifiers")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise CategoryError("duplicate morphism identifiers")
        objs = set(self.objects)
        for m in self.morphisms:
            if m not in self._src or m not in self._dst:
                raise CategoryError(f"morphism {m!r} lacks source or target")
            if self._src[m] not in objs or self._dst[m] not in objs:
                raise CategoryError(f"morphism {m!r} has an unknown endpoint")
        mors = set(self.morphisms)
        for x in self.objects:
            i = self._id.get(x)
            if i is None:
                raise CategoryError(f"object {x!r} has no identity")
            if i not in mors or self._src[i] != x or self._dst[i] != x:
                raise CategoryError(f"identity of {x!r} is not an endomorphism of {x!r}")
        if len(set(self._id.values())) != len(self.objects):
            raise CategoryError("two objects share an identity")
        if set(self._id) - objs:
            raise CategoryError("identity given for an unknown object")
        starting = defaultdict(list)
        for g in self.morphisms:
            starting[self._src[g]].append(g)
        expected = 0
        for f in self.morphisms:
            for g in starting[self._dst[f]]:
                expected += 1
                gf = self._table.get((g, f))
                if gf is None:
                    raise CategoryError(f"composite of {g!r} after {f!r} is missing")
                if gf not in mors:
                    raise CategoryError(f"composite {gf!r} is not a morphism")
                if self._src[gf] != self._src[f] or self._dst[gf] != self._dst[g]:
                    raise CategoryError(f"composite {g!r}.{f!r} = {gf!r} has wrong endpoints")
        if len(self._table) != expected:
            raise CategoryError("composition table has entries for non-composable pairs")

    # basic accessors

    def src(self, m):
        return self._src[m]

    def dst(self, m):
        return self._dst[m]

    def id(self, x):
        return self._id[x]

    def compose(self, g, f):
        """``g . f``: first ``f`` then ``g``."""
        try:
            return self._table[g, f]
        except KeyError:
            raise CategoryError(f"{g!r} and {f!r} are not composable") from None

    def compose_path(self, arrows: Sequence):
        """Compose arrows listed in path order (first arrow first)."""
        out = arrows[0]
        for a in arrows[1:]:
            out = self._table[a, out]
        return out

    def hom(self, x, y) -> tuple:
        return self._hom.get((x, y), ())

    def out_arrows(self, x) -> tuple:
        return self._out.get(x, ())

    def in_arrows(self, x) -> tuple:
        return self._in.get(x, ())

    def is_identity(self, m) -> bool:
        return m in self._ids

    @property
    def identities(self) -> frozenset:
        return self._ids

    @property
    def table(self) -> Mapping:
        return self._table

    def composable_pairs(self) -> Iterator[tuple]:
        """Yield ``(g, f)`` with ``g . f`` defined."""
        for f in self.morphisms:
            for g in self.out_arrows(self._dst[f]):
                yield g, f

    def inverse(self, m):
        """The two-sided inverse of ``m`` or None."""
        if self._inverse_cache is None:
            inv = {}
            for m2 in self.morphisms:
                x, y = self._src[m2], self._dst[m2]
                for n in self.hom(y, x):
                    if self._table[n, m2] == self._id[x] and self._table[m2, n] == self._id[y]:
                        inv[m2] = n
                        break
            self._inverse_cache = inv
        return self._inverse_cache.get(m)

    def is_iso(self, m) -> bool:
        return self.inverse(m) is not None

    def non_identity(self) -> tuple:
        return tuple(m for m in self.morphisms if m not in self._ids)

    # derived categories

    def subcategory(self, morphisms: Iterable, objects: Iterable | None = None, name="") -> "FinCat":
        """Subcategory on the given morphisms (identities of ``objects`` added)."""
        keep = set(morphisms)
        objs = self.objects if objects is None else tuple(o for o in self.objects if o in set(objects))
        keep |= {self._id[x] for x in objs}
        mors = tuple(m for m in self.morphisms if m in keep)
        oset = set(objs)
        for m in mors:
            if self._src[m] not in oset or self._dst[m] not in oset:
                raise CategoryError(f"morphism {m!r} leaves the chosen objects")
        table = {}
        for f in mors:
            for g in mors:
                if self._src[g] == self._dst[f]:
                    gf = self._table[g, f]
                    if gf not in keep:
                        raise CategoryError(f"subcategory not closed: {g!r}.{f!r} = {gf!r}")
                    table[g, f] = gf
        return FinCat(objs, mors, {m: self._src[m] for m in mors}, {m: self._dst[m] for m in mors},
                      {x: self._id[x] for x in objs}, table, name=name)

    def full_subcategory(self, objects: Iterable, name="") -> "FinCat":
        oset = set(objects)
        mors = [m for m in self.morphisms if self._src[m] in oset and self._dst[m] in oset]
        return self.subcategory(mors, oset, name=name)

    def relabel(self, objects: Mapping, morphisms: Mapping, name="") -> "FinCat":
        """Isomorphic copy with renamed cells."""
        o, m = objects, morphisms
        return FinCat([o[x] for x in self.objects], [m[a] for a in self.morphisms],
                      {m[a]: o[self._src[a]] for a in self.morphisms},
                      {m[a]: o[self._dst[a]] for a in self.morphisms},
                      {o[x]: m[self._id[x]] for x in self.objects},
                      {(m[g], m[f]): m[gf] for (g, f), gf in self._table.items()},
                      name=name or self.name)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCat{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self._src == other._src and self._dst == other._dst
                and self._id == other._id and self._table == other._table)

    def __hash__(self):
        return hash((self.objects, self.morphisms))


def validate(C: FinCat) -> Verdict:
    """Check the unit and associativity laws exhaustively."""
    for f in C.morphisms:
        x, y = C.src(f), C.dst(f)
        if C.compose(C.id(y), f) != f:
            return Verdict.fail(f"left unit fails: id_{y}.{f} != {f}")
        if C.compose(f, C.id(x)) != f:
            return Verdict.fail(f"right unit fails: {f}.id_{x} != {f}")
    for f in C.morphisms:
        for g in C.out_arrows(C.dst(f)):
            gf = C.compose(g, f)
            for h in C.out_arrows(C.dst(g)):
                left = C.compose(h, gf)
                right = C.compose(C.compose(h, g), f)
                if left != right:
                    return Verdict.fail(f"associativity fails at (h, g, f) = ({h}, {g}, {f}): "
                                        f"{left} != {right}")
    return Verdict.ok(f"{len(C.objects)} objects, {len(C.morphisms)} morphisms")


class Functor:
    """A functor between finite categories, given on objects and morphisms."""

    def __init__(self, domain: FinCat, codomain: FinCat, object_map: Mapping, morphism_map: Mapping,
                 name=""):
        self.domain = domain
        self.codomain = codomain
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)
        self.name = name
        for x in domain.objects:
            if self.object_map.get(x) not in set(codomain.objects):
                raise CategoryError(f"object {x!r} is not mapped into the codomain")
        cmors = set(codomain.morphisms)
        for m in domain.morphisms:
            if self.morphism_map.get(m) not in cmors:
                raise CategoryError(f"morphism {m!r} is not mapped into the codomain")

    def ob(self, x):
        return self.object_map[x]

    def __call__(self, m):
        return self.morphism_map[m]

    def chain(self, c: Chain) -> Chain:
        return (self.object_map[c[0]],) + tuple(self.morphism_map[f] for f in c[1:])

    def __repr__(self):
        return f"<Functor {self.name or ''} {self.domain!r} -> {self.codomain!r}>"


def validate_functor(F: Functor) -> Verdict:
    C, D = F.domain, F.codomain
    for m in C.morphisms:
        if D.src(F(m)) != F.ob(C.src(m)) or D.dst(F(m)) != F.ob(C.dst(m)):
            return Verdict.fail(f"{m} is not sent between the images of its endpoints")
    for x in C.objects:
        if F(C.id(x)) != D.id(F.ob(x)):
            return Verdict.fail(f"identity of {x} is not preserved")
    for g, f in C.composable_pairs():
        if F(C.compose(g, f)) != D.compose(F(g), F(f)):
            return Verdict.fail(f"composite {g}.{f} is not preserved")
    return Verdict.ok()


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, name="id")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G . F``."""
    return Functor(F.domain, G.codomain, {x: G.ob(F.ob(x)) for x in F.domain.objects},
                   {m: G(F(m)) for m in F.domain.morphisms})


class RelCat:
    """A category with a wide subcategory of weak equivalences."""

    def __init__(self, base: FinCat, weq: Iterable, name=""):
        self.base = base
        self.weq = frozenset(weq)
        self.name = name or base.name
        unknown = self.weq - set(base.morphisms)
        if unknown:
            raise CategoryError(f"marked arrows are not morphisms: {sorted(map(str, unknown))}")
        missing = base.identities - self.weq
        if missing:
            raise CategoryError(f"identities must be marked: {sorted(map(str, missing))}")
        for f in self.weq:
            for g in base.out_arrows(base.dst(f)):
                if g in self.weq and base.compose(g, f) not in self.weq:
                    raise CategoryError(f"marking not closed under composition: {g}.{f}")

    @classmethod
    def generated(cls, base: FinCat, arrows: Iterable, name="") -> "RelCat":
        """Smallest marking containing ``arrows`` and closed under composition."""
        marked = set(arrows) | set(base.identities)
        frontier = list(marked)
        while frontier:
            new = []
            for f in frontier:
                for g in base.out_arrows(base.dst(f)):
                    if g in marked:
                        for h in (base.compose(g, f),):
                            if h not in marked:
                                marked.add(h)
                                new.append(h)
                for e in base.in_arrows(base.src(f)):
                    if e in marked:
                        h = base.compose(f, e)
                        if h not in marked:
                            marked.add(h)
                            new.append(h)
            frontier = new
        return cls(base, marked, name=name)

    @classmethod
    def minimal(cls, base: FinCat) -> "RelCat":
        return cls(base, base.identities)

    @classmethod
    def maximal(cls, base: FinCat) -> "RelCat":
        return cls(base, base.morphisms)

    def weq_category(self) -> FinCat:
        return self.base.subcategory(self.weq)

    def is_weq(self, m) -> bool:
        return m in self.weq

    def weq_in(self, x) -> tuple:
        return tuple(m for m in self.base.in_arrows(x) if m in self.weq)

    def weq_out(self, x) -> tuple:
        return tuple(m for m in self.base.out_arrows(x) if m in self.weq)

    def weq_hom(self, x, y) -> tuple:
        return tuple(m for m in self.base.hom(x, y) if m in self.weq)

    def __repr__(self):
        return f"<RelCat {self.name}: {len(self.weq)} of {len(self.base.morphisms)} arrows marked>"


# chains and ladders

def chains(C: FinCat, n: int) -> Iterator[Chain]:
    """All length-``n`` chains in deterministic order."""
    if n < 0:
        raise ValueError("chain length must be non-negative")

    def extend(prefix, last):
        if len(prefix) == n + 1:
            yield prefix
            return
        for f in C.out_arrows(last):
            yield from extend(prefix + (f,), C.dst(f))

    for x in C.objects:
        yield from extend((x,), x)


def chain_objects(C: FinCat, c: Chain) -> tuple:
    objs = [c[0]]
    for f in c[1:]:
        objs.append(C.dst(f))
    return tuple(objs)


def is_degenerate_chain(C: FinCat, c: Chain) -> bool:
    return any(C.is_identity(f) for f in c[1:])


def ladders(C: FinCat, c: Chain, d: Chain, allowed=None) -> Iterator[tuple]:
    """Commuting ladders ``(u0, ..., un)`` from chain ``c`` to chain ``d``.

    ``allowed`` optionally restricts each rung, as a predicate on morphisms.
    """
    xs, ys = chain_objects(C, c), chain_objects(C, d)
    n = len(xs) - 1

    def rungs(i, prev):
        if i > n:
            yield ()
            return
        for u in C.hom(xs[i], ys[i]):
            if allowed is not None and not allowed(u):
                continue
            if i > 0 and C.compose(u, c[i]) != C.compose(d[i], prev):
                continue
            for rest in rungs(i + 1, u):
                yield (u,) + rest

    yield from rungs(0, None)


def _ladder_category(C: FinCat, objects: Sequence[Chain], allowed=None, name="") -> FinCat:
    """Category of the given chains (all of one length) and commuting ladders."""
    mors, src, dst = [], {}, {}
    hom = {}
    for c in objects:
        for d in objects:
            lst = []
            for us in ladders(C, c, d, allowed):
                m = (c, d, us)
                mors.append(m)
                src[m], dst[m] = c, d
                lst.append(m)
            hom[c, d] = lst
    ident = {c: (c, c, tuple(C.id(x) for x in chain_objects(C, c))) for c in objects}
    table = {}
    for f in mors:
        for d in objects:
            for g in hom[f[1], d]:
                table[g, f] = (f[0], g[1], tuple(C.compose(b, a) for b, a in zip(g[2], f[2])))
    return FinCat(objects, mors, src, dst, ident, table, name=name)


def arrow_category(C: FinCat, n: int) -> FinCat:
    """``C^[n]``: length-``n`` chains and commuting ladders between them."""
    return _ladder_category(C, list(chains(C, n)), name=f"{C.name}^[{n}]")


def arrow_functor(F: Functor, n: int, domain: FinCat | None = None,
                  codomain: FinCat | None = None) -> Functor:
    """``F^[n]: C^[n] -> D^[n]``."""
    A = domain if domain is not None else arrow_category(F.domain, n)
    B = codomain if codomain is not None else arrow_category(F.codomain, n)
    return Functor(A, B, {c: F.chain(c) for c in A.objects},
                   {m: (F.chain(m[0]), F.chain(m[1]), tuple(F(u) for u in m[2])) for m in A.morphisms})


def _chains_over(F: Functor, sigma: Chain) -> list:
    C = F.domain
    out = []

    def extend(prefix, last, i):
        if i == len(sigma):
            out.append(prefix)
            return
        for f in C.out_arrows(last):
            if F(f) == sigma[i]:
                extend(prefix + (f,), C.dst(f), i + 1)

    for x in C.objects:
        if F.ob(x) == sigma[0]:
            extend((x,), x, 1)
    return out


def strict_fiber(F: Functor, sigma: Chain) -> FinCat:
    """Fiber of ``F^[n]`` over the chain ``sigma``.

    Objects are chains of the domain sent exactly to ``sigma``; morphisms
    are ladders sent to the identity ladder.
    """
    objs = _chains_over(F, sigma)
    over_identity = {m for m in F.domain.morphisms if F.codomain.is_identity(F(m))}
    return _ladder_category(F.domain, objs, allowed=over_identity.__contains__,
                            name=f"fiber over {sigma!r}")


def essential_chain_fiber(F: Functor, sigma: Chain) -> FinCat:
    """Essential fiber of ``F^[n]`` over ``sigma``.

    Objects are pairs ``(c, theta)`` with ``theta: F(c) -> sigma`` a ladder of
    isomorphisms; a morphism ``(c, theta) -> (c', theta')`` is a ladder
    ``u: c -> c'`` with ``theta' . F(u) = theta``.
    """
    C, D = F.domain, F.codomain
    n = len(sigma) - 1
    objs = []
    for c in chains(C, n):
        for theta in ladders(D, F.chain(c), sigma, allowed=D.is_iso):
            objs.append((c, theta))
    mors, src, dst, hom = [], {}, {}, {}
    for a in objs:
        for b in objs:
            lst = []
            for us in ladders(C, a[0], b[0]):
                if all(D.compose(t2, F(u)) == t1 for t1, t2, u in zip(a[1], b[1], us)):
                    m = (a, b, us)
                    mors.append(m)
                    src[m], dst[m] = a, b
                    lst.append(m)
            hom[a, b] = lst
    ident = {a: (a, a, tuple(C.id(x) for x in chain_objects(C, a[0]))) for a in objs}
    table = {}
    for f in mors:
        for b in objs:
            for g in hom[f[1], b]:
                table[g, f] = (f[0], g[1], tuple(C.compose(v, u) for v, u in zip(g[2], f[2])))
    return FinCat(objs, mors, src, dst, ident, table, name=f"essential fiber over {sigma!r}")


def essential_fiber(F: Functor, x) -> FinCat:
    """Essential fiber over an object: pairs ``(c, theta: F(c) ~> x)``."""
    return essential_chain_fiber(F, (x,))


def max_subgroupoid(C: FinCat) -> FinCat:
    return C.subcategory([m for m in C.morphisms if C.is_iso(m)], name=f"K({C.name})")


def preimage_marking(F: Functor) -> RelCat:
    """Mark the arrows sent to isomorphisms."""
    D = F.codomain
    return RelCat(F.domain, [m for m in F.domain.morphisms if D.is_iso(F(m))])


def resolution_category(R: RelCat, A: Iterable) -> tuple[FinCat, Functor]:
    """Category of marked arrows ``w: a -> x`` out of objects of ``A``.

    A morphism ``(a, w) -> (a', w')`` is a commuting square ``(u, v)`` with
    ``u: a -> a'``, ``v: x -> x'`` and ``v . w = w' . u``.  The returned
    functor sends ``(a, w)`` to the target ``x`` of ``w``.
    """
    C = R.base
    A = [a for a in C.objects if a in set(A)]
    objs = [(a, w) for a in A for w in C.out_arrows(a) if w in R.weq]
    mors, src, dst, hom = [], {}, {}, {}
    for p in objs:
        for q in objs:
            lst = []
            for u in C.hom(p[0], q[0]):
                for v in C.hom(C.dst(p[1]), C.dst(q[1])):
                    if C.compose(v, p[1]) == C.compose(q[1], u):
                        m = (p, q, (u, v))
                        mors.append(m)
                        src[m], dst[m] = p, q
                        lst.append(m)
            hom[p, q] = lst
    ident = {p: (p, p, (C.id(p[0]), C.id(C.dst(p[1])))) for p in objs}
    table = {}
    for f in mors:
        for q in objs:
            for g in hom[f[1], q]:
                table[g, f] = (f[0], g[1], (C.compose(g[2][0], f[2][0]), C.compose(g[2][1], f[2][1])))
    Ct = FinCat(objs, mors, src, dst, ident, table, name=f"resolutions in {R.name}")
    proj = Functor(Ct, C, {p: C.dst(p[1]) for p in objs}, {m: m[2][1] for m in mors}, name="target")
    return Ct, proj


def product(C: FinCat, D: FinCat, name="") -> FinCat:
    objs = [(x, y) for x in C.objects for y in D.objects]
    mors = [(f, g) for f in C.morphisms for g in D.morphisms]
    table = {}
    for f2, f1 in C.composable_pairs():
        for g2, g1 in D.composable_pairs():
            table[(f2, g2), (f1, g1)] = (C.compose(f2, f1), D.compose(g2, g1))
    return FinCat(objs, mors, {m: (C.src(m[0]), D.src(m[1])) for m in mors},
                  {m: (C.dst(m[0]), D.dst(m[1])) for m in mors},
                  {(x, y): (C.id(x), D.id(y)) for x, y in objs}, table,
                  name=name or f"{C.name}x{D.name}")


def projection(P: FinCat, C: FinCat, index: int) -> Functor:
    """Projection of a product category ``P = C0 x C1`` onto factor ``index``."""
    return Functor(P, C, {x: x[index] for x in P.objects}, {m: m[index] for m in P.morphisms},
                   name=f"pr{index}")
