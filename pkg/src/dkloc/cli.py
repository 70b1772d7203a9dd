"""Command-line front end.

Every command prints one JSON report (sorted keys) to stdout and exits with
0 if all checks pass, 1 if any fails, 3 if some are inconclusive and none
fails, 2 on unreadable or invalid input.  Wall-clock timings are left out
unless ``--timings`` is given, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .category import CategoryError, validate, validate_functor
from .families import MarkedOpfib, SCOPE, check_marked_opfib, product_family_check, split_marking
from .hammock import enumerate_hammocks
from .homotopy import edge_path_group, homology, is_trivial_group, pi0, weakly_contractible
from .io import (InputError, category_to_dot, digest, dumps, fmt_id, functor_from_json,
                 kind_of, load_json, relcat_from_json, sequence_from_json)
from .keylemma import check_conclusion, check_hypothesis
from .sset import audit, mapping_simplex, mapping_simplex_colimit_check, nerve, to_dot
from .verdict import Report, Status, Verdict

EXIT = {Status.PASS: 0, Status.FAIL: 1, Status.INCONCLUSIVE: 3}
EXIT_INPUT = 2


def threads() -> int:
    try:
        return max(1, int(os.environ.get("DKLOC_THREADS", "1")))
    except ValueError:
        return 1


class Phases:
    def __init__(self):
        self.times: dict[str, float] = {}

    def run(self, name, fn, *args, **kw):
        t = time.perf_counter()
        out = fn(*args, **kw)
        self.times[name] = round(time.perf_counter() - t, 6)
        return out


def _require_valid(C, what):
    v = validate(C)
    if not v.passed:
        raise InputError(f"{what} is not a category: {v.detail}")


def _load_relcat(path):
    doc = load_json(path)
    if kind_of(doc) not in ("category", "relcat"):
        raise InputError(f"{path}: expected a category or relcat document")
    R = relcat_from_json(doc)
    _require_valid(R.base, path)
    return R


def _load_functor(path, relative=False):
    doc = load_json(path)
    if kind_of(doc) not in ("functor", "marked-opfib"):
        raise InputError(f"{path}: expected a functor document")
    out = functor_from_json(doc, base=Path(path).parent, relative=True)
    F, dom, cod = out
    _require_valid(F.domain, "domain")
    _require_valid(F.codomain, "codomain")
    v = validate_functor(F)
    if not v.passed:
        raise InputError(f"{path}: not a functor: {v.detail}")
    return (F, dom, cod, doc) if relative else F


# commands

def cmd_validate(args, ph: Phases) -> Report:
    doc = load_json(args.path)
    kind = kind_of(doc)
    rep = Report("validate", bounds={})
    rep.data["kind"] = kind
    if kind in ("category", "relcat"):
        R = relcat_from_json(doc)
        rep.add("category laws", ph.run("validate", validate, R.base))
        rep.data["objects"], rep.data["morphisms"] = len(R.base.objects), len(R.base.morphisms)
        if args.dot:
            Path(args.dot).write_text(category_to_dot(R.base, R.weq if kind == "relcat" else frozenset(),
                                                      name=R.base.name or "C"), encoding="utf-8")
    elif kind in ("functor", "marked-opfib"):
        F, dom, cod = functor_from_json(doc, base=Path(args.path).parent, relative=True)
        rep.add("domain laws", validate(F.domain))
        rep.add("codomain laws", validate(F.codomain))
        rep.add("functoriality", validate_functor(F))
    elif kind == "sequence":
        seq = sequence_from_json(doc, base=Path(args.path).parent)
        for i, C in enumerate(seq.categories):
            rep.add(f"category {i} laws", validate(C))
        for i, F in enumerate(seq.functors):
            rep.add(f"functor {i}", validate_functor(F))
    else:
        raise InputError(f"unknown document kind {kind!r}")
    return rep


def cmd_homology(args, ph: Phases) -> Report:
    R = _load_relcat(args.path)
    cap = args.cap if args.cap is not None else max(2, args.upto + 1)
    rep = Report("homology of the nerve", bounds=dict(cap=cap, upto=args.upto, effort=args.effort))
    X = ph.run("nerve", nerve, R.base, cap)
    H = ph.run("homology", homology, X, args.upto)
    comps = pi0(X)
    rep.data["simplices"] = X.nondegenerate_counts()
    rep.data["homology"] = H.to_json()
    rep.data["pi0"] = [[fmt_id(X.labels[0][v][0]) for v in c] for c in comps]
    rep.add("simplicial identities", audit(X))
    if cap >= 2 and X.size(0):
        P = edge_path_group(X, 0)
        rep.data["pi1_presentation"] = str(P)
        rep.data["pi1_trivial"] = is_trivial_group(P, args.effort).to_json()
    rep.data["weakly_contractible"] = weakly_contractible(X, args.upto, args.effort).to_json() \
        if cap >= max(2, args.upto + 1) else None
    return rep


def cmd_mapspace(args, ph: Phases) -> Report:
    R = _load_relcat(args.path)
    for o in (args.x, args.y):
        if o not in R.base.objects:
            raise InputError(f"unknown object {o!r}")
    bounds = dict(width=args.width, height=args.height, upto=args.upto, effort=args.effort)
    rep = Report(f"mapping space from {args.x} to {args.y}", bounds=bounds)
    M = ph.run("hammocks", enumerate_hammocks, R, args.x, args.y, args.width, args.height)
    X = M.space
    rep.add("simplicial identities", audit(X))
    comps = pi0(X)
    rows = []
    for c in comps:
        Y = X.restrict(c)
        entry = {"representative": str(M.hammocks[0][c[0]].row(0)), "vertices": len(c)}
        if args.height >= args.upto + 1:
            entry["homology"] = homology(Y, args.upto).to_json()
        if args.height >= max(2, args.upto + 1):
            entry["weakly_contractible"] = weakly_contractible(Y, args.upto, args.effort).to_json()
        rows.append(entry)
    rep.data["space"] = M.to_json()
    rep.data["pi0"] = len(comps)
    rep.data["components"] = rows
    rep.data["empty"] = X.is_empty()
    if M.stabilized:
        rep.add("width stabilization", Verdict.ok(f"pi0 by width {M.pi0_by_width}", **bounds))
    else:
        rep.add("width stabilization",
                Verdict.inconclusive(f"pi0 by width {M.pi0_by_width} has not stabilized", **bounds))
    if args.dot:
        Path(args.dot).write_text(to_dot(X, name=f"Map({args.x},{args.y})"), encoding="utf-8")
    return rep


def cmd_keylemma(args, ph: Phases) -> Report:
    F = _load_functor(args.path)
    bounds = dict(max_dim=args.max_dim, upto=args.upto, effort=args.effort, fiber_mode=args.fiber_mode,
                  sample=args.sample, seed=args.seed)
    if args.with_conclusion:
        bounds.update(width=args.width, height=args.height, max_pairs=args.max_pairs)
    rep = Report("fiber criterion", bounds=bounds)
    K = ph.run("hypothesis", check_hypothesis, F, args.max_dim, args.upto, args.effort, args.fiber_mode,
               args.sample, args.seed, workers=threads())
    rep.add("hypothesis", K.hypothesis)
    if args.with_conclusion:
        C = ph.run("conclusion", check_conclusion, F, args.width, args.height, args.upto, args.effort,
                   args.max_pairs, args.seed)
        K.conclusion = C
        rep.add("conclusion", C.summary)
    rep.data["keylemma"] = K.to_json()
    return rep


def _opfib_from_file(path) -> MarkedOpfib:
    F, dom, cod, doc = _load_functor(path, relative=True)
    lifts = {}
    for c, alpha, l in doc.get("lifts", []):
        for what, ident, cat in (("object", c, F.domain.objects), ("arrow", alpha, F.codomain.morphisms),
                                 ("lift", l, F.domain.morphisms)):
            if ident not in cat:
                raise InputError(f"lifts: unknown {what} {ident!r}")
        if (c, alpha) in lifts:
            raise InputError(f"lifts: ({c!r}, {alpha!r}) listed twice")
        lifts[c, alpha] = l
    try:
        return MarkedOpfib(F, dom, cod, lifts)
    except CategoryError as e:
        raise InputError(str(e)) from None


def cmd_family(args, ph: Phases) -> Report:
    caps = dict(width=args.width, height=args.height, upto=args.upto, max_pairs=args.max_pairs, seed=args.seed)
    if args.product:
        D, Fr = (_load_relcat(p) for p in args.product)
        return ph.run("product", product_family_check, D, Fr, **caps)
    if not args.path:
        raise InputError("family needs a marked-opfib file or --product D F")
    E = _opfib_from_file(args.path)
    rep = ph.run("conditions", check_marked_opfib, E, **caps)
    hor, ver, gen = split_marking(E)
    rep.data["split"] = {"horizontal": sorted(fmt_id(m) for m in hor),
                         "vertical": sorted(fmt_id(m) for m in ver), "generated": gen.to_json()}
    rep.data["scope"] = SCOPE
    return rep


def cmd_mapping_simplex(args, ph: Phases) -> Report:
    doc = load_json(args.path)
    seq = sequence_from_json(doc, base=Path(args.path).parent)
    for i, C in enumerate(seq.categories):
        _require_valid(C, f"category {i}")
    for i, F in enumerate(seq.functors):
        v = validate_functor(F)
        if not v.passed:
            raise InputError(f"functor {i}: {v.detail}")
    rep = Report("mapping simplex", bounds=dict(cap=args.cap, n=seq.length))
    M = ph.run("mapping simplex", mapping_simplex, seq, args.cap)
    rep.data["simplices"] = M.counts()
    rep.data["nondegenerate"] = M.nondegenerate_counts()
    rep.add("simplicial identities", audit(M))
    if args.check_colimit:
        rep.add("colimit comparison", ph.run("colimit", mapping_simplex_colimit_check, seq, args.cap))
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dkloc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"dkloc {__version__}")
    p.add_argument("--timings", action="store_true", help="include wall-clock time per phase")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check category, functor or sequence laws")
    s.add_argument("path")
    s.add_argument("--dot", help="write a DOT graph of the category")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("homology", help="integral homology of the nerve")
    s.add_argument("path")
    s.add_argument("--cap", type=int)
    s.add_argument("--upto", type=int, default=2)
    s.add_argument("--effort", type=int, default=50)
    s.set_defaults(fn=cmd_homology)

    s = sub.add_parser("mapspace", help="truncated hammock mapping space")
    s.add_argument("path")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--width", type=int, default=4)
    s.add_argument("--height", type=int, default=2)
    s.add_argument("--upto", type=int, default=1)
    s.add_argument("--effort", type=int, default=50)
    s.add_argument("--dot", help="write the 1-skeleton as DOT")
    s.set_defaults(fn=cmd_mapspace)

    s = sub.add_parser("keylemma", help="fiber criterion for a functor to be a localization")
    s.add_argument("path")
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("--upto", type=int, default=1)
    s.add_argument("--effort", type=int, default=50)
    s.add_argument("--fiber-mode", choices=["strict", "essential"], default="strict")
    s.add_argument("--sample", type=int, default=64)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--with-conclusion", action="store_true")
    s.add_argument("--width", type=int, default=4)
    s.add_argument("--height", type=int, default=2)
    s.add_argument("--max-pairs", type=int, default=16)
    s.set_defaults(fn=cmd_keylemma)

    s = sub.add_parser("family", help="marked cocartesian fibration conditions")
    s.add_argument("path", nargs="?")
    s.add_argument("--product", nargs=2, metavar=("D", "F"))
    s.add_argument("--width", type=int, default=3)
    s.add_argument("--height", type=int, default=2)
    s.add_argument("--upto", type=int, default=1)
    s.add_argument("--max-pairs", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_family)

    s = sub.add_parser("mapping-simplex", help="mapping simplex of a functor sequence")
    s.add_argument("path")
    s.add_argument("--cap", type=int, default=2)
    s.add_argument("--check-colimit", action="store_true")
    s.set_defaults(fn=cmd_mapping_simplex)
    return p


def _inputs(args) -> list[dict]:
    paths = [getattr(args, "path", None)] + list(getattr(args, "product", None) or [])
    return [{"path": p, "sha256": digest(p)} for p in paths if p]


def _options(args) -> dict:
    skip = {"fn", "command", "output", "timings", "path", "product"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ph = Phases()
    try:
        rep = args.fn(args, ph)
        doc = {"tool": "dkloc", "version": __version__, "command": args.command, "options": _options(args),
               "inputs": _inputs(args), "report": rep.to_json()}
        code = EXIT[rep.status]
    except ValueError as e:  # InputError, CategoryError, SSetError and cap errors
        doc = {"tool": "dkloc", "version": __version__, "command": args.command, "error": str(e)}
        code = EXIT_INPUT
    if args.timings:
        doc["timings"] = ph.times
    text = dumps(doc)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if code == EXIT_INPUT:
        print(f"dkloc: {doc['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
