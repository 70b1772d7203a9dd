"""Regenerate fixtures/ from the curated corpus.

    python3 scripts/make_fixtures.py [outdir]
"""

import sys
from pathlib import Path

from dkloc import corpus
from dkloc.catalog import boundary_triangle_category
from dkloc.io import category_to_json, dumps, functor_to_json, opfib_to_json, relcat_to_json, sequence_to_json


def write(out: Path, name: str, doc: dict):
    path = out / f"{name}.json"
    path.write_text(dumps(doc), encoding="utf-8")
    return path


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, C in corpus.categories().items():
        written.append(write(out, f"cat_{name}", category_to_json(C)))
    for name, R in corpus.relcats().items():
        written.append(write(out, f"rel_{name}", relcat_to_json(R)))
    for name, F in corpus.functors().items():
        written.append(write(out, f"fun_{name}", functor_to_json(F)))
    for name, E in corpus.opfibs().items():
        written.append(write(out, f"opfib_{name}", opfib_to_json(E.f, E.V, E.W, E.lifts)))
    for name, seq in corpus.sequences().items():
        written.append(write(out, f"seq_{name}", sequence_to_json(seq)))
    # broken inputs for the validator
    written.append(write(out, "bad_associativity", broken_associativity()))
    missing = category_to_json(boundary_triangle_category())
    del missing["identities"]["2"]
    written.append(write(out, "bad_missing_identity", missing))
    for p in written:
        print(p)


def broken_associativity() -> dict:
    """Arrows ``p, p2: 0 -> 1``, idempotent ``e: 1 -> 1``, ``q: 1 -> 2`` and ``r, k: 0 -> 2``
    with ``e.p = p2``, ``q.e = q``, ``q.p = r`` and ``q.p2 = k``, so ``(q.e).p = r`` but
    ``q.(e.p) = k``."""
    arrows = [("e", "1", "1"), ("p", "0", "1"), ("p2", "0", "1"), ("q", "1", "2"), ("r", "0", "2"), ("k", "0", "2")]
    ids = {"0": "id_0", "1": "id_1", "2": "id_2"}
    comp = [["e", "e", "e"], ["e", "p", "p2"], ["e", "p2", "p2"], ["q", "e", "q"], ["q", "p", "r"], ["q", "p2", "k"]]
    for x, i in ids.items():
        comp.append([i, i, i])
    for m, s, d in arrows:
        comp += [[ids[d], m, m], [m, ids[s], m]]
    return {
        "kind": "category", "name": "not associative",
        "objects": list(ids),
        "morphisms": [{"id": i, "src": x, "dst": x} for x, i in ids.items()]
                     + [{"id": m, "src": s, "dst": d} for m, s, d in arrows],
        "identities": ids,
        "composition": comp,
    }


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
