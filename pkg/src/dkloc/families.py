"""Marked opfibrations of finite relative categories.

A functor ``f: (C, V) -> (D, W)`` with chosen cocartesian lifts, checked
against four conditions: lifts exist and are cocartesian, lifts of marked
arrows are marked, transport along any arrow preserves marked arrows in
fibers, and transport along a marked arrow induces an equivalence of the
fiberwise localizations.  The last one is only auditable up to caps.

Scope: these are the 1-categorical shadows of the definition.  Whether the
localized functor is a cocartesian fibration with localized fibers is only
audited for product families, where the homotopy fiber is the fiber.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .category import CategoryError, FinCat, Functor, RelCat, product, projection, validate_functor
from .hammock import HoCat, Zigzag, enumerate_hammocks, ho_localization
from .homotopy import homology, pi0
from .io import fmt_id
from .sset import product as sset_product
from .verdict import Report, Verdict

SCOPE = ("audits the four conditions of a marked cocartesian fibration and, for product families, "
         "the fiber-localization consequence; the general infinity-categorical statement is out of scope")


@dataclass
class MarkedOpfib:
    f: Functor
    V: RelCat
    W: RelCat
    lifts: dict = field(default_factory=dict)  # (c, alpha) -> lift out of c

    def __post_init__(self):
        if self.V.base is not self.f.domain and self.V.base != self.f.domain:
            raise CategoryError("domain marking is not on the functor's domain")
        if self.W.base is not self.f.codomain and self.W.base != self.f.codomain:
            raise CategoryError("codomain marking is not on the functor's codomain")

    @property
    def C(self) -> FinCat:
        return self.f.domain

    @property
    def D(self) -> FinCat:
        return self.f.codomain

    def lift(self, c, alpha):
        return self.lifts.get((c, alpha))

    def fiber(self, d) -> FinCat:
        """Strict fiber over an object: objects over ``d``, arrows over ``id_d``."""
        C, D, f = self.C, self.D, self.f
        objs = [c for c in C.objects if f.ob(c) == d]
        arrows = [m for m in C.morphisms if f(m) == D.id(d)]
        return C.subcategory(arrows, objs, name=f"fiber over {fmt_id(d)}")

    def fiber_marking(self, d) -> RelCat:
        Fd = self.fiber(d)
        return RelCat(Fd, [m for m in Fd.morphisms if m in self.V.weq])

    def transport_arrow(self, alpha, u):
        """``alpha_!(u)`` for ``u`` in the fiber over the source of ``alpha``: the unique
        ``h`` over the identity with ``h . lift(c, alpha) = lift(c', alpha) . u``."""
        C, D, f = self.C, self.D, self.f
        c, c2 = C.src(u), C.dst(u)
        l1, l2 = self.lift(c, alpha), self.lift(c2, alpha)
        target = C.compose(l2, u)
        idd = D.id(D.dst(alpha))
        hits = [h for h in C.hom(C.dst(l1), C.dst(l2)) if f(h) == idd and C.compose(h, l1) == target]
        return hits[0] if len(hits) == 1 else None

    def transport(self, alpha) -> Functor:
        D = self.D
        src, dst = self.fiber(D.src(alpha)), self.fiber(D.dst(alpha))
        return Functor(src, dst, {c: self.C.dst(self.lift(c, alpha)) for c in src.objects},
                       {u: self.transport_arrow(alpha, u) for u in src.morphisms},
                       name=f"transport along {fmt_id(alpha)}")


def is_cocartesian(E: MarkedOpfib, l) -> str | None:
    """None if ``l`` is cocartesian; otherwise a description of the failed factorization."""
    C, D, f = E.C, E.D, E.f
    c, c1 = C.src(l), C.dst(l)
    alpha = f(l)
    for g in C.out_arrows(c):
        c2 = C.dst(g)
        for beta in D.hom(f.ob(c1), f.ob(c2)):
            if D.compose(beta, alpha) != f(g):
                continue
            hits = [h for h in C.hom(c1, c2) if f(h) == beta and C.compose(h, l) == g]
            if len(hits) != 1:
                return (f"{len(hits)} factorizations of {fmt_id(g)} through {fmt_id(l)} "
                        f"over {fmt_id(beta)}")
    return None


def _relative_check(E: MarkedOpfib) -> Verdict:
    v = validate_functor(E.f)
    if not v.passed:
        return v
    for m in sorted(E.V.weq, key=fmt_id):
        if E.f(m) not in E.W.weq:
            return Verdict.fail(f"marked {fmt_id(m)} is sent to unmarked {fmt_id(E.f(m))}")
    return Verdict.ok()


def _lift_check(E: MarkedOpfib) -> Verdict:
    C, D, f = E.C, E.D, E.f
    for c in C.objects:
        for alpha in D.out_arrows(f.ob(c)):
            l = E.lift(c, alpha)
            if l is None:
                return Verdict.fail(f"no chosen lift of {fmt_id(alpha)} at {fmt_id(c)}")
            if l not in C.morphisms or C.src(l) != c or f(l) != alpha:
                return Verdict.fail(f"chosen lift {fmt_id(l)} of {fmt_id(alpha)} at {fmt_id(c)} "
                                    f"does not start at {fmt_id(c)} over {fmt_id(alpha)}")
            why = is_cocartesian(E, l)
            if why:
                return Verdict.fail(f"lift {fmt_id(l)} of {fmt_id(alpha)} at {fmt_id(c)} "
                                    f"is not cocartesian: {why}")
    return Verdict.ok()


def _marked_lift_check(E: MarkedOpfib) -> Verdict:
    for (c, alpha), l in sorted(E.lifts.items(), key=fmt_id):
        if alpha in E.W.weq and l not in E.V.weq:
            return Verdict.fail(f"lift {fmt_id(l)} of marked {fmt_id(alpha)} at {fmt_id(c)} is unmarked")
    return Verdict.ok()


def _transport_marking_check(E: MarkedOpfib) -> Verdict:
    D = E.D
    for alpha in D.morphisms:
        Fd = E.fiber(D.src(alpha))
        for u in Fd.morphisms:
            if u not in E.V.weq:
                continue
            t = E.transport_arrow(alpha, u)
            if t is None:
                return Verdict.fail(f"transport of {fmt_id(u)} along {fmt_id(alpha)} is not unique")
            if t not in E.V.weq:
                return Verdict.fail(f"transport along {fmt_id(alpha)} sends marked {fmt_id(u)} "
                                    f"to unmarked {fmt_id(t)}")
    return Verdict.ok()


def _map_zigzag(T: Functor, z: Zigzag) -> Zigzag:
    return Zigzag(T.ob(z.source), T.ob(z.target), tuple((d, T(a)) for d, a in z.segments))


def _ho_equivalence(T: Functor, H0: HoCat, H1: HoCat) -> Verdict:
    """Is the functor induced by ``T`` on width-capped homotopy categories an equivalence?"""
    unsure = []
    for y in H1.objects:
        if any(H1.hom(T.ob(c), y) and any(H1.inverse((T.ob(c), y, i)) is not None
                                          for i in range(len(H1.hom(T.ob(c), y))))
               for c in H0.objects):
            continue
        if all(H1.stabilized[T.ob(c), y] and H1.stabilized[y, T.ob(c)] for c in H0.objects):
            return Verdict.fail(f"{fmt_id(y)} is not isomorphic to a transported object")
        unsure.append(f"essential surjectivity at {fmt_id(y)}")
    for x in H0.objects:
        for y in H0.objects:
            stable = H0.stabilized[x, y] and H1.stabilized[T.ob(x), T.ob(y)]
            images = {}
            for i, cls in enumerate(H0.hom(x, y)):
                c = H1.class_of(_map_zigzag(T, cls[0]))
                if c is None:
                    unsure.append(f"image of {cls[0]} is past the cap")
                    continue
                if c in images:
                    msg = f"classes {H0.hom(x, y)[images[c]][0]} and {cls[0]} are identified"
                    if stable:
                        return Verdict.fail(f"not faithful: {msg}")
                    unsure.append(msg)
                images[c] = i
            n1 = len(H1.hom(T.ob(x), T.ob(y)))
            if len(set(images)) < n1:
                msg = f"not full at ({fmt_id(x)},{fmt_id(y)}): {len(set(images))} of {n1} classes hit"
                if stable:
                    return Verdict.fail(msg)
                unsure.append(msg)
    if unsure:
        return Verdict.inconclusive("; ".join(unsure[:3]))
    return Verdict.ok()


def is_relative_isomorphism(T: Functor, R0: RelCat, R1: RelCat) -> bool:
    """Bijective on objects and arrows, with marked arrows exactly the images of marked arrows.

    Such a transport induces an isomorphism of localizations at every cap,
    so no truncated comparison is needed."""
    obs = {T.ob(x) for x in R0.base.objects}
    arrows = {T(m) for m in R0.base.morphisms}
    if len(obs) != len(R1.base.objects) or len(arrows) != len(R1.base.morphisms):
        return False
    return {T(m) for m in R0.weq} == set(R1.weq)


def _homology_match(A, B, upto: int) -> str | None:
    ha, hb = homology(A, upto), homology(B, upto)
    for n in range(upto + 1):
        if ha[n] != hb[n]:
            return f"H{n} = {ha[n]} vs {hb[n]}"
    return None


def _localization_check(E: MarkedOpfib, width: int, height: int, upto: int, max_pairs: int,
                        seed: int) -> Verdict:
    D = E.D
    bounds = dict(width=width, height=height, upto=upto, max_pairs=max_pairs, seed=seed)
    rng = random.Random(seed)
    unsure = []
    hos = {d: ho_localization(E.fiber_marking(d), width) for d in D.objects}
    for alpha in sorted(E.W.weq, key=fmt_id):
        if D.is_identity(alpha):
            continue
        T = E.transport(alpha)
        R0, R1 = E.fiber_marking(D.src(alpha)), E.fiber_marking(D.dst(alpha))
        if is_relative_isomorphism(T, R0, R1):
            continue
        H0, H1 = hos[D.src(alpha)], hos[D.dst(alpha)]
        v = _ho_equivalence(T, H0, H1)
        if v.passed and not (all(H0.stabilized.values()) and all(H1.stabilized.values())):
            v = Verdict.inconclusive("classes correspond within the cap but hom-sets have not stabilized")
        if v.failed:
            return Verdict.fail(f"transport along {fmt_id(alpha)}: {v.detail}", **bounds)
        if v.inconclusive_:
            unsure.append(f"{fmt_id(alpha)}: {v.detail}")
        pairs = [(x, y) for x in R0.base.objects for y in R0.base.objects]
        if len(pairs) > max_pairs:
            pairs = [pairs[i] for i in sorted(rng.sample(range(len(pairs)), max_pairs))]
        for x, y in pairs:
            M0 = enumerate_hammocks(R0, x, y, width, height)
            M1 = enumerate_hammocks(R1, T.ob(x), T.ob(y), width, height)
            why = _homology_match(M0.space, M1.space, upto)
            if why:
                msg = f"Map({fmt_id(x)},{fmt_id(y)}) along {fmt_id(alpha)}: {why}"
                if M0.stabilized and M1.stabilized:
                    unsure.append(msg + " (homology at truncated height)")
                else:
                    unsure.append(msg)
    if unsure:
        return Verdict.inconclusive("; ".join(unsure[:3]), **bounds)
    return Verdict.ok(**bounds)


def check_marked_opfib(E: MarkedOpfib, width: int = 3, height: int = 2, upto: int = 1,
                       max_pairs: int = 8, seed: int = 0) -> Report:
    """One verdict per condition; the first three are exact, the last is capped."""
    if height < max(2, upto + 1):
        raise ValueError(f"height cap must be at least {max(2, upto + 1)} for upto={upto}")
    rep = Report("marked cocartesian fibration",
                 bounds=dict(width=width, height=height, upto=upto, max_pairs=max_pairs, seed=seed))
    rep.data["scope"] = SCOPE
    rep.add("relative functor", _relative_check(E))
    rep.add("(1) cocartesian lifts", _lift_check(E))
    if rep.checks["(1) cocartesian lifts"].passed:
        rep.add("(2) marked lifts", _marked_lift_check(E))
        rep.add("(3) transport preserves marking", _transport_marking_check(E))
    else:
        skip = Verdict.inconclusive("not evaluated: condition (1) failed")
        rep.add("(2) marked lifts", skip)
        rep.add("(3) transport preserves marking", skip)
    if rep.checks["(3) transport preserves marking"].passed:
        rep.add("(4) transport localizes to equivalences",
                _localization_check(E, width, height, upto, max_pairs, seed))
    else:
        rep.add("(4) transport localizes to equivalences",
                Verdict.inconclusive("not evaluated: condition (3) did not pass"))
    return rep


def split_marking(E: MarkedOpfib) -> tuple[frozenset, frozenset, Verdict]:
    """Vertical marked arrows, marked cocartesian lifts of marked arrows, and whether they generate."""
    C, D, f = E.C, E.D, E.f
    ver = frozenset(m for m in E.V.weq if D.is_identity(f(m)))
    hor = frozenset(m for m in E.V.weq if f(m) in E.W.weq and is_cocartesian(E, m) is None)
    for a in sorted(E.V.weq, key=fmt_id):
        l = E.lift(C.src(a), f(a))
        if l is None:
            return hor, ver, Verdict.fail(f"{fmt_id(a)} has no chosen lift to factor through")
        hits = [v for v in C.hom(C.dst(l), C.dst(a)) if v in ver and C.compose(v, l) == a]
        if not hits:
            return hor, ver, Verdict.fail(f"{fmt_id(a)} is not a chosen lift followed by a vertical marked arrow")
    return hor, ver, Verdict.ok(f"{len(E.V.weq)} marked arrows factor")


# families constructed from data

def identity_fibration(R: RelCat) -> MarkedOpfib:
    C = R.base
    F = Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, name="id")
    return MarkedOpfib(F, R, R, {(C.src(m), m): m for m in C.morphisms})


def product_family(D_rel: RelCat, F_rel: RelCat, extra_marked=()) -> MarkedOpfib:
    """Projection ``D x F -> D`` with the marking generated by ``W x id`` and ``id x U``.

    ``extra_marked`` adds arrows before closing under composition (used to
    build violations).
    """
    D, F = D_rel.base, F_rel.base
    P = product(D, F)
    gens = [(w, F.id(y)) for w in D_rel.weq for y in F.objects]
    gens += [(D.id(d), u) for d in D.objects for u in F_rel.weq]
    V = RelCat.generated(P, gens + list(extra_marked), name="generated")
    pr = projection(P, D, 0)
    lifts = {((D.src(a), x), a): (a, F.id(x)) for a in D.morphisms for x in F.objects}
    return MarkedOpfib(pr, V, D_rel, lifts)


def _pi0_product_check(HP: HoCat, HD: HoCat, HF: HoCat, d, x, y) -> Verdict:
    p, q = (d, x), (d, y)
    stable = HP.stabilized[p, q] and HD.stabilized[d, d] and HF.stabilized[x, y]
    seen = {}
    for i, cls in enumerate(HP.hom(p, q)):
        z = cls[0]
        zd = Zigzag(d, d, tuple((s, a[0]) for s, a in z.segments))
        zf = Zigzag(x, y, tuple((s, a[1]) for s, a in z.segments))
        key = (HD.class_of(zd), HF.class_of(zf))
        if None in key:
            return Verdict.inconclusive(f"projection of {z} is past the cap")
        if key in seen:
            msg = f"classes {HP.hom(p, q)[seen[key]][0]} and {z} have the same projections"
            return Verdict.fail(msg) if stable else Verdict.inconclusive(msg)
        seen[key] = i
    want = len(HD.hom(d, d)) * len(HF.hom(x, y))
    if len(seen) != want:
        msg = f"{len(seen)} classes vs {want} pairs of classes"
        return Verdict.fail(msg) if stable else Verdict.inconclusive(msg)
    if not stable:
        return Verdict.inconclusive(f"{want} classes match within the cap but hom-sets have not stabilized")
    return Verdict.ok()


def product_family_check(D_rel: RelCat, F_rel: RelCat, width: int = 3, height: int = 2, upto: int = 1,
                         max_pairs: int = 8, seed: int = 0, with_conditions: bool = True) -> Report:
    """Mapping spaces of the total localization against products of the factors' mapping spaces."""
    if height < max(2, upto + 1):
        raise ValueError(f"height cap must be at least {max(2, upto + 1)} for upto={upto}")
    E = product_family(D_rel, F_rel)
    bounds = dict(width=width, height=height, upto=upto, max_pairs=max_pairs, seed=seed)
    rep = Report("product family", bounds=bounds)
    rep.data["scope"] = SCOPE
    if with_conditions:
        cond = check_marked_opfib(E, width, height, upto, max_pairs, seed)
        rep.add("marked cocartesian fibration", cond.summary)
        rep.data["conditions"] = {k: v.to_json() for k, v in cond.checks.items()}
    HP = ho_localization(E.V, width)
    HD = ho_localization(D_rel, width)
    HF = ho_localization(F_rel, width)
    pairs = [(d, x, y) for d in D_rel.base.objects for x in F_rel.base.objects for y in F_rel.base.objects]
    if len(pairs) > max_pairs:
        rng = random.Random(seed)
        pairs = [pairs[i] for i in sorted(rng.sample(range(len(pairs)), max_pairs))]
    rows = []
    for d, x, y in pairs:
        name = f"({fmt_id(d)},{fmt_id(x)}) to ({fmt_id(d)},{fmt_id(y)})"
        v0 = _pi0_product_check(HP, HD, HF, d, x, y)
        MP = enumerate_hammocks(E.V, (d, x), (d, y), width, height)
        MD = enumerate_hammocks(D_rel, d, d, width, height)
        MF = enumerate_hammocks(F_rel, x, y, width, height)
        prod = sset_product(MD.space, MF.space)
        why = _homology_match(MP.space, prod, upto)
        if why is None and len(pi0(MP.space)) != len(pi0(prod)):
            why = f"{len(pi0(MP.space))} vs {len(pi0(prod))} components"
        stable = MP.stabilized and MD.stabilized and MF.stabilized
        if why is None and stable:
            vh = Verdict.ok()
        elif why is None:
            vh = Verdict.inconclusive("homology matches within the cap but widths have not stabilized")
        elif stable:
            vh = Verdict.inconclusive(f"{why} (homology at truncated height)")
        else:
            vh = Verdict.inconclusive(f"{why}, widths not stabilized")
        rep.add(f"pi0 {name}", v0.with_bounds(**bounds))
        rep.add(f"homology {name}", vh.with_bounds(**bounds))
        rows.append({"pair": name, "total": MP.space.nondegenerate_counts(),
                     "product": prod.nondegenerate_counts(), "stabilized": stable})
    rep.data["pairs"] = rows
    return rep
