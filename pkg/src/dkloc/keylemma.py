"""Mechanical checks around the fiber criterion for localizations.

For a functor ``F: C -> D`` between finite categories the criterion asks
that for every chain ``s`` of ``D`` the fiber of ``F^[n]`` over ``s`` has a
weakly contractible nerve; its conclusion is that ``D`` is the localization
of ``C`` at the arrows sent to isomorphisms.  ``check_hypothesis`` audits
the first part, ``check_conclusion`` the second at two finite levels
(homotopy category, homotopy-discreteness of mapping spaces), and the
remaining checks replay intermediate steps of the argument.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .category import (Functor, RelCat, arrow_category, chains, essential_chain_fiber,
                       is_degenerate_chain, max_subgroupoid, preimage_marking, resolution_category,
                       strict_fiber, validate_functor)
from .hammock import enumerate_hammocks, functor_on_zigzag, ho_localization
from .homotopy import homology, pi0, weakly_contractible
from .io import fmt_id
from .sset import nerve, weq_ladder_category
from .verdict import Report, Verdict, _summarize

FIBER_MODES = ("strict", "essential")


@dataclass
class FiberEntry:
    chain: tuple
    dim: int
    objects: int
    morphisms: int
    verdict: Verdict

    def to_json(self) -> dict:
        return {"chain": fmt_id(self.chain), "dim": self.dim, "objects": self.objects,
                "morphisms": self.morphisms, "verdict": self.verdict.to_json()}


@dataclass
class KeyLemmaReport:
    fiber_mode: str
    entries: list[FiberEntry] = field(default_factory=list)
    coverage: dict = field(default_factory=dict)  # dim -> (audited, total)
    bounds: dict = field(default_factory=dict)
    conclusion: Report | None = None

    @property
    def hypothesis(self) -> Verdict:
        checks = {f"fiber over {fmt_id(e.chain)}": e.verdict for e in self.entries}
        return _summarize(checks).with_bounds(**self.bounds)

    @property
    def summary(self) -> Verdict:
        h = self.hypothesis
        if self.conclusion is None:
            return h
        return _summarize({"hypothesis": h, "conclusion": self.conclusion.summary})

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "fiber_mode": self.fiber_mode,
            "bounds": dict(self.bounds),
            "coverage": {str(k): {"audited": a, "total": t} for k, (a, t) in sorted(self.coverage.items())},
            "fibers": [e.to_json() for e in self.entries],
            "hypothesis": self.hypothesis.to_json(),
        }
        if self.conclusion is not None:
            out["conclusion"] = self.conclusion.to_json()
        out["summary"] = self.summary.to_json()
        return out


def _fiber(F: Functor, sigma, mode: str):
    if mode == "strict":
        return strict_fiber(F, sigma)
    if mode == "essential":
        return essential_chain_fiber(F, sigma)
    raise ValueError(f"fiber mode must be one of {FIBER_MODES}, got {mode!r}")


def check_hypothesis(F: Functor, max_dim: int = 2, upto: int = 1, effort: int = 50,
                     fiber_mode: str = "strict", sample: int = 64, seed: int = 0,
                     include_degenerate: bool = False, workers: int = 1) -> KeyLemmaReport:
    """Weak contractibility of the fibers of ``F^[n]`` over chains of the codomain.

    Nondegenerate chains of length ``<= max_dim`` are audited; when a
    dimension has more than ``sample`` of them a seeded sample of that size
    is taken and the coverage is recorded.  Fibers are audited
    independently; with ``workers > 1`` they run on a thread pool and the
    entries keep chain order.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    v = validate_functor(F)
    if not v.passed:
        raise ValueError(f"invalid functor: {v.detail}")
    if fiber_mode not in FIBER_MODES:
        raise ValueError(f"fiber mode must be one of {FIBER_MODES}, got {fiber_mode!r}")
    D = F.codomain
    cap = max(2, upto + 1)
    rep = KeyLemmaReport(fiber_mode, bounds=dict(max_dim=max_dim, upto=upto, effort=effort, cap=cap,
                                                 fiber_mode=fiber_mode, sample=sample, seed=seed))
    rng = random.Random(seed)
    for n in range(max_dim + 1):
        todo = [s for s in chains(D, n) if include_degenerate or not is_degenerate_chain(D, s)]
        total = len(todo)
        if total > sample:
            picks = sorted(rng.sample(range(total), sample))
            todo = [todo[i] for i in picks]
        rep.coverage[n] = (len(todo), total)

        def audit(sigma, n=n):
            fib = _fiber(F, sigma, fiber_mode)
            verdict = weakly_contractible(nerve(fib, cap), upto, effort)
            return FiberEntry(sigma, n, len(fib.objects), len(fib.morphisms), verdict)

        if workers > 1 and len(todo) > 1:
            with ThreadPoolExecutor(workers) as pool:
                rep.entries.extend(pool.map(audit, todo))
        else:
            rep.entries.extend(map(audit, todo))
    return rep


# conclusion

def _components_graph(C) -> dict:
    """Connected components of the underlying graph: no zigzag joins different ones."""
    parent = {x: x for x in C.objects}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for m in C.morphisms:
        a, b = find(C.src(m)), find(C.dst(m))
        if a != b:
            parent[b] = a
    return {x: find(x) for x in C.objects}


def _ho_functor_check(F: Functor, W: RelCat, width: int) -> tuple[Verdict, dict]:
    """Essential surjectivity, fullness and faithfulness of ``Ho(C, W) -> D``."""
    C, D = F.domain, F.codomain
    H = ho_localization(W, width)
    comp = _components_graph(C)
    bounds = dict(width=width)
    data: dict = {"ho": H.to_json()}
    unsure: list[str] = []
    for d in D.objects:
        if not any(any(D.is_iso(m) for m in D.hom(F.ob(c), d)) for c in C.objects):
            return Verdict.fail(f"not essentially surjective: {fmt_id(d)} is not isomorphic to any image",
                                **bounds), data
    for x, y in H.pairs():
        images: dict = {}
        for i, cls in enumerate(H.hom(x, y)):
            seen = {functor_on_zigzag(F, z) for z in cls}
            if len(seen) != 1 or None in seen:
                return Verdict.fail(f"zigzag class {cls[0]} from {fmt_id(x)} to {fmt_id(y)} has no "
                                    f"well-defined image", **bounds), data
            images.setdefault(seen.pop(), []).append(i)
        target = D.hom(F.ob(x), F.ob(y))
        missing = [m for m in target if m not in images]
        stable = H.stabilized[x, y]
        if missing:
            where = f"{fmt_id(missing[0])}: {fmt_id(F.ob(x))} -> {fmt_id(F.ob(y))} is not the image of a " \
                    f"zigzag from {fmt_id(x)} to {fmt_id(y)}"
            if comp[x] != comp[y]:
                return Verdict.fail(f"not full, no zigzag exists at all: {where}", **bounds), data
            if stable:
                return Verdict.fail(f"not full: {where}", **bounds), data
            unsure.append(f"fullness at ({fmt_id(x)},{fmt_id(y)})")
        clash = [(m, ids) for m, ids in images.items() if len(ids) > 1]
        if clash:
            m, ids = clash[0]
            where = f"classes {H.hom(x, y)[ids[0]][0]} and {H.hom(x, y)[ids[1]][0]} both map to {fmt_id(m)}"
            if stable:
                return Verdict.fail(f"not faithful: {where}", **bounds), data
            unsure.append(f"faithfulness at ({fmt_id(x)},{fmt_id(y)})")
    if unsure:
        return Verdict.inconclusive(f"hom-sets not stabilized: {'; '.join(unsure[:4])}", **bounds), data
    return Verdict.ok("Ho functor is an equivalence within the cap", **bounds), data


def _pairs(objects, max_pairs: int, seed: int) -> list[tuple]:
    pairs = [(x, y) for x in objects for y in objects]
    if len(pairs) > max_pairs:
        rng = random.Random(seed)
        pairs = [pairs[i] for i in sorted(rng.sample(range(len(pairs)), max_pairs))]
    return pairs


def _mapping_space_check(F: Functor, W: RelCat, x, y, width: int, height: int, upto: int,
                         effort: int) -> tuple[Verdict, dict]:
    D = F.codomain
    M = enumerate_hammocks(W, x, y, width, height)
    X = M.space
    bounds = dict(width=width, height=height, upto=upto, effort=effort)
    comps = pi0(X)
    data = {"pair": [fmt_id(x), fmt_id(y)], "components": len(comps), "stabilized": M.stabilized,
            "nondegenerate": X.nondegenerate_counts()}
    images = {}
    for c in comps:
        z = M.hammocks[0][c[0]].row(0)
        m = functor_on_zigzag(F, z)
        if m is None:
            return Verdict.fail(f"zigzag {z} has no image", **bounds), data
        if m in images:
            msg = f"two components of Map({fmt_id(x)},{fmt_id(y)}) map to {fmt_id(m)}"
            return (Verdict.fail(msg, **bounds) if M.stabilized else Verdict.inconclusive(msg, **bounds)), data
        images[m] = c
    missing = [m for m in D.hom(F.ob(x), F.ob(y)) if m not in images]
    if missing:
        msg = f"no component of Map({fmt_id(x)},{fmt_id(y)}) maps to {fmt_id(missing[0])}"
        if M.stabilized or not X.size(0) and _components_graph(F.domain)[x] != _components_graph(F.domain)[y]:
            return Verdict.fail(msg, **bounds), data
        return Verdict.inconclusive(msg, **bounds), data
    for m, c in images.items():
        v = weakly_contractible(X.restrict(c), upto, effort)
        if not v.passed:
            msg = f"component over {fmt_id(m)}: {v.detail}"
            if v.failed and M.stabilized:
                return Verdict.fail(msg, **bounds), data
            return Verdict.inconclusive(msg if v.inconclusive_ else msg + " (components not stabilized)",
                                        **bounds), data
    return Verdict.ok(**bounds), data


def check_conclusion(F: Functor, width: int = 4, height: int = 2, upto: int = 1, effort: int = 50,
                     max_pairs: int = 16, seed: int = 0) -> Report:
    """Does ``F`` exhibit its codomain as the localization at ``F^-1(iso)``?

    (a) the homotopy-category functor is an equivalence within the width cap;
    (b) for sampled pairs the hammock mapping space is homotopy discrete with
    components matching the codomain's hom-set.  Mismatches only on
    hom-sets that have not stabilized are Inconclusive.
    """
    if height < max(2, upto + 1):
        raise ValueError(f"height cap must be at least {max(2, upto + 1)} for upto={upto}")
    W = preimage_marking(F)
    rep = Report("localization conclusion",
                 bounds=dict(width=width, height=height, upto=upto, effort=effort, max_pairs=max_pairs, seed=seed))
    v, data = _ho_functor_check(F, W, width)
    rep.add("ho-equivalence", v)
    rep.data["ho"] = data["ho"]
    spaces = []
    for x, y in _pairs(F.domain.objects, max_pairs, seed):
        v, d = _mapping_space_check(F, W, x, y, width, height, upto, effort)
        d["verdict"] = v.to_json()
        spaces.append(d)
        rep.add(f"mapping space ({fmt_id(x)},{fmt_id(y)})", v)
    rep.data["mapping_spaces"] = spaces
    return rep


# intermediate steps

def _compare_spaces(A, B, upto: int, label: str) -> Verdict:
    pa, pb = len(pi0(A)), len(pi0(B))
    if pa != pb:
        return Verdict.fail(f"{label}: {pa} vs {pb} components")
    ha, hb = homology(A, upto), homology(B, upto)
    for n in range(upto + 1):
        if ha[n] != hb[n]:
            return Verdict.fail(f"{label}: H{n} = {ha[n]} vs {hb[n]}")
    return Verdict.ok()


def groupoid_observation_check(F: Functor, upto: int = 2) -> Verdict:
    """Compare ``pi0`` and ``H_i`` of the nerve of ``F^-1(iso)`` and of the maximal subgroupoid of the codomain."""
    W = preimage_marking(F).weq_category()
    K = max_subgroupoid(F.codomain)
    cap = upto + 1
    v = _compare_spaces(nerve(W, cap), nerve(K, cap), upto, "N(W) vs N(K(D))")
    return v.with_bounds(upto=upto, cap=cap)


def classification_row_check(F: Functor, cap_n: int = 1, upto: int = 1, effort: int = 50) -> Report:
    """Row ``n`` of the classification diagram of ``(C, F^-1(iso))`` against ``N(K(D^[n]))``."""
    R = preimage_marking(F)
    cap = upto + 1
    rep = Report("classification rows", bounds=dict(cap_n=cap_n, upto=upto, cap=cap))
    hyp = check_hypothesis(F, max_dim=cap_n, upto=upto, effort=effort)
    rep.data["hypothesis"] = hyp.hypothesis.to_json()
    for n in range(cap_n + 1):
        row = nerve(weq_ladder_category(R, n), cap)
        target = nerve(max_subgroupoid(arrow_category(F.codomain, n)), cap)
        rep.add(f"row {n}", _compare_spaces(row, target, upto, f"N(W) ladder vs N(K(D^[{n}]))").with_bounds(n=n, upto=upto))
    return rep


def _weakly_terminal(C):
    for t in C.objects:
        if all(C.hom(x, t) for x in C.objects):
            return t
    return None


def resolution_localization_demo(R: RelCat, A, max_dim: int = 2, width: int = 4, height: int = 2,
                                 upto: int = 1, effort: int = 50) -> Report:
    """Run both checks on the projection from the category of marked arrows out of ``A``."""
    Ct, proj = resolution_category(R, A)
    rep = Report("resolution category", bounds=dict(max_dim=max_dim, width=width, height=height,
                                                     upto=upto, effort=effort))
    rep.data["resolution"] = {"objects": len(Ct.objects), "morphisms": len(Ct.morphisms)}
    hyp = check_hypothesis(proj, max_dim=max_dim, upto=upto, effort=effort)
    rep.add("hypothesis", hyp.hypothesis)
    special = []
    for x in R.base.objects:
        fib = strict_fiber(proj, (x,))
        t = _weakly_terminal(fib) if fib.objects else None
        special.append({"object": fmt_id(x), "fiber_objects": len(fib.objects),
                        "weakly_terminal": None if t is None else fmt_id(t)})
    rep.data["special"] = special
    rep.data["fibers"] = [e.to_json() for e in hyp.entries]
    concl = check_conclusion(proj, width=width, height=height, upto=upto, effort=effort)
    rep.add("conclusion", concl.summary)
    rep.data["conclusion"] = concl.to_json()
    return rep
