"""Acceptance run: one test per criterion, each with its own time limit.

Each test prints a single ``criterion N: PASS|FAIL`` line; the lines are
repeated in the terminal summary (see conftest.py).  Running this file
directly executes the same checks without pytest.
"""

import random
import time

import pytest

from cli_cases import CASES, run
from dkloc.catalog import (all_marked, boundary_triangle_category, collapse, cyclic_group, discrete, indiscrete,
                           ordinal, poset, walking_arrow_collapse)
from dkloc.category import RelCat, identity_functor
from dkloc.corpus import VIOLATION_WITNESS, functors, opfibs, parallel_pair_f, product_pairs, sequences, violation_fixture
from dkloc.families import check_marked_opfib, product_family_check
from dkloc.generators import corpus, tractable_relcat_corpus
from dkloc.hammock import (enumerate_hammocks, ho_localization, mapping_space, mapping_space_components,
                           zigzag_count)
from dkloc.homotopy import edge_path_group, homology, pi0
from dkloc.keylemma import (check_conclusion, check_hypothesis, classification_row_check,
                            resolution_localization_demo)
from dkloc.sset import audit, boundary_simplex, mapping_simplex_colimit_check, nerve
from oracles import brute_nondegenerate_count, components_by_search

RESULTS: list[str] = []

CAT_SEED, RELCAT_SEED = 11, 7
CORPUS_SIZE = 200
# zigzag budget for the hammock/Ho comparison; see the decisions ledger
MAX_ZIGZAGS = 5000
# literal pi0 of the simplicial mapping space is also built below this many zigzags
LITERAL_SPACE_BUDGET = 1500


def category_corpus():
    return corpus(CAT_SEED, CORPUS_SIZE, max_objects=5, max_morphisms=14)


def _initial_objects(C):
    return [x for x in C.objects if all(len(C.hom(x, y)) == 1 for y in C.objects)]


def c1():
    for C in category_corpus():
        X = nerve(C, 3)
        v = audit(X)
        if not v.passed:
            return False, f"{C.name}: {v.detail}"
        want = [brute_nondegenerate_count(C, n) for n in range(4)]
        if X.nondegenerate_counts() != want:
            return False, f"{C.name}: counts {X.nondegenerate_counts()} vs {want}"
    return True, f"{CORPUS_SIZE} categories at cap 3"


def c2():
    H = homology(boundary_simplex(2, 3), 2)
    if (H[0].betti, H[1].betti, H[0].torsion, H[1].torsion) != (1, 1, (), ()):
        return False, f"boundary of triangle: {H}"
    H = homology(nerve(cyclic_group(2), 3), 2)
    if H[1].betti or H[1].torsion != (2,):
        return False, f"BZ/2: {H}"
    initial = 0
    cats = category_corpus()
    cats += [ordinal(n) for n in range(4)] + [poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])]
    for C in cats:
        X = nerve(C, 3)
        if _initial_objects(C):
            initial += 1
            H = homology(X, 2)
            if not all(H.reduced(n).trivial for n in range(3)):
                return False, f"{C.name} has an initial object but {H}"
        h0 = homology(X, 0)[0].betti
        if not h0 == len(pi0(X)) == len(components_by_search(C)):
            return False, f"{C.name}: H0 rank {h0} vs {len(pi0(X))} components"
    return True, f"{len(cats)} nerves, {initial} with an initial object"


def _hurewicz(X):
    for comp in pi0(X):
        Y = X.restrict(comp)
        P = edge_path_group(Y, 0)
        H1 = homology(Y, 1)[1]
        if P.abelian_invariants() != (H1.betti, H1.torsion):
            return f"{P.abelian_invariants()} vs {H1}"
    return None


def c3():
    spaces = [nerve(C, 2) for C in category_corpus()]
    spaces += [nerve(C, 2) for C in (cyclic_group(2), cyclic_group(3), boundary_triangle_category(),
                                     indiscrete("abc"), discrete("ab"))]
    spaces.append(boundary_simplex(2, 2))
    for R in (all_marked(ordinal(1)), parallel_pair_f(), all_marked(indiscrete("ab"))):
        for x in R.base.objects:
            for y in R.base.objects:
                spaces.append(mapping_space(R, x, y, 3, 2))
    for X in spaces:
        why = _hurewicz(X)
        if why:
            return False, f"{X.name}: {why}"
    return True, f"{len(spaces)} spaces"


def c4():
    rels, skipped = tractable_relcat_corpus(RELCAT_SEED, 50, 5, MAX_ZIGZAGS)
    pairs = literal = 0
    for i, R in enumerate(rels):
        H = ho_localization(R, 5)
        small = zigzag_count(R, 5) <= LITERAL_SPACE_BUDGET
        for x in R.base.objects:
            for y in R.base.objects:
                pairs += 1
                ref = [[z.segments for z in c] for c in H.hom(x, y)]
                M = mapping_space_components(R, x, y, 5)
                if [[z.segments for z in c] for c in M.classes] != ref:
                    return False, f"relcat {i}, ({x},{y}): components differ"
                if small:
                    literal += 1
                    E = enumerate_hammocks(R, x, y, 5, 1)
                    got = sorted(sorted(E.hammocks[0][v].row(0).segments for v in c) for c in pi0(E.space))
                    if got != sorted(sorted(c) for c in ref):
                        return False, f"relcat {i}, ({x},{y}): pi0 of the space differs"
    return True, (f"50 relcats ({skipped} draws over {MAX_ZIGZAGS} zigzags skipped), {pairs} pairs, "
                  f"{literal} also checked on the simplicial space")


def c5():
    pairs = 0
    for C in category_corpus():
        R = RelCat.minimal(C)
        for x in C.objects:
            for y in C.objects:
                pairs += 1
                X = mapping_space(R, x, y, 3, 2)
                # discrete: every simplex above dimension 0 is degenerate
                if X.nondegenerate_counts() != [len(C.hom(x, y)), 0, 0]:
                    return False, f"{C.name} ({x},{y}): {X.nondegenerate_counts()} vs |Hom| {len(C.hom(x, y))}"
    return True, f"{pairs} pairs"


def c6():
    caps = dict(width=4, height=2, upto=1)

    def both(F):
        return check_hypothesis(F, max_dim=2, upto=1).hypothesis, check_conclusion(F, **caps).summary

    h, c = both(walking_arrow_collapse())
    if not (h.passed and c.passed):
        return False, f"[1]->[0]: {h.status} / {c.status}"
    h, c = both(collapse(indiscrete("ab")))
    if not (h.passed and c.passed):
        return False, f"indiscrete: {h.status} / {c.status}"
    h, c = both(collapse(discrete("ab")))
    if not (h.failed and "pi0" in h.detail and c.failed and "not full" in c.detail):
        return False, f"discrete: {h} / {c}"
    rep = resolution_localization_demo(all_marked(ordinal(1)), ["0"])
    if not (rep.checks["hypothesis"].passed and rep.checks["conclusion"].passed):
        return False, f"resolution demo: {rep.summary}"
    for name, F in functors().items():
        h, c = both(F)
        if h.passed and c.failed:
            return False, f"{name}: hypothesis Pass with conclusion Fail"
    return True, f"examples plus {len(functors())} curated functors"


def c7():
    for name, F in (("[1]->[0]", walking_arrow_collapse()), ("id [2]", identity_functor(ordinal(2))),
                    ("id discrete", identity_functor(discrete("ab"))),
                    ("id BZ/2", identity_functor(cyclic_group(2)))):
        r = classification_row_check(F, cap_n=1, upto=1)
        if not r.summary.passed:
            return False, f"{name}: {r.summary}"
    r = classification_row_check(collapse(discrete("ab")), cap_n=1, upto=1)
    if not r.summary.failed:
        return False, f"discrete pair: {r.summary}"
    return True, "4 pass, discrete pair fails"


def c8():
    seqs = {k: s for k, s in sequences().items()
            if s.length <= 3 and all(len(C.objects) <= 4 for C in s.categories)}
    for name, s in seqs.items():
        v = mapping_simplex_colimit_check(s, 2)
        if not v.passed:
            return False, f"{name}: {v}"
    return True, f"{len(seqs)} sequences"


def c9():
    for name in ("point_x_arrow", "arrow_x_arrow"):
        D, F = product_pairs()[name]
        rep = product_family_check(D, F, width=3, height=2, upto=1)
        if not all(v.passed for v in rep.checks.values()) or not all(
                s["status"] == "pass" for s in rep.data["conditions"].values()):
            return False, f"{name}: {rep.summary}"
    cond = check_marked_opfib(opfibs()["product_arrow_parallel"])
    if not cond.summary.passed:
        return False, f"arrow_ids_x_parallel conditions: {cond.summary}"
    rep = check_marked_opfib(violation_fixture())
    v = rep.checks["(3) transport preserves marking"]
    if not (v.failed and all(w in v.detail for w in VIOLATION_WITNESS)):
        return False, f"violation: {v}"
    return True, "2 product fixtures pass, violation caught with its witness"


def c10():
    for argv, code in CASES:
        a, b = run(argv, 1), run(argv, 8)
        if a.returncode != code or b.returncode != code:
            return False, f"{' '.join(argv)}: exit {a.returncode}/{b.returncode}, expected {code}"
        if a.stdout != b.stdout:
            return False, f"{' '.join(argv)}: output differs between 1 and 8 threads"
    return True, f"{len(CASES)} invocations over every command"


def c11():
    R = parallel_pair_f()
    for w in range(2, 7):
        H = ho_localization(R, w)
        if not H.verdict().inconclusive_ or H.stabilized["x", "x"]:
            return False, f"width {w}: {H.verdict()}"
        if mapping_space_components(R, "x", "x", w).stabilized:
            return False, f"width {w}: mapping space claims stabilization"
        out = run(["mapspace", "rel_parallel_f.json", "x", "x", "--width", str(w)])
        if out.returncode != 3:
            return False, f"width {w}: CLI exit {out.returncode}"
    return True, "widths 2-6 Inconclusive"


CRITERIA = {
    1: ("simplicial audit", c1, 10),
    2: ("homology oracle", c2, 10),
    3: ("Hurewicz consistency", c3, 30),
    4: ("hammock/Ho agreement", c4, 60),
    5: ("discrete-marking identity", c5, 10),
    6: ("fiber criterion suite", c6, 60),
    7: ("classification rows", c7, 30),
    8: ("mapping-simplex colimit", c8, 30),
    9: ("family suite", c9, 60),
    10: ("determinism", c10, 60),
    11: ("honesty of truncation", c11, 60),
}


def evaluate(n):
    name, fn, limit = CRITERIA[n]
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    in_time = dt < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {n} ({name}): {status} in {dt:.1f}s (limit {limit}s); {detail}"
    if ok and not in_time:
        line += "; over the time limit"
    return status == "PASS", line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    random.seed(0)
    ok, line = evaluate(n)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    import sys
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
