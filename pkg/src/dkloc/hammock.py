"""Truncated hammock localization of a finite relative category.

A zigzag from ``x`` to ``y`` is a word of segments ``(+1, f)`` (``f`` read
forward) and ``(-1, w)`` (``w`` a marked arrow read backward).  A hammock of
height ``n`` is ``n + 1`` zigzags ("rows") of a common direction pattern,
joined by marked vertical maps going down (row ``i`` to row ``i + 1``) with
every square commuting and identities at the two ends.  Individual rows may
contain identities; a hammock is reduced if no column is made of identities
only and neighbouring columns point in opposite directions.

Reduced hammocks of width at most ``w`` and height ``n`` are the
``n``-simplices of the truncated mapping space.  Faces drop a row (composing
the verticals through it) and reduce; degeneracies repeat a row.  Height-1
hammocks generate the equivalence on zigzags whose classes are the hom-sets
of the homotopy category.

Nothing is untruncated here, so every result carries its caps and a
stabilization record.  A hom-set (or a component count) is called
stabilized at cap ``w`` when the class maps from width ``w - 2`` to
``w - 1`` to ``w`` are all bijective.  Looking two widths back rather than
one is deliberate: zigzags between a fixed pair often have a fixed width
parity, so a single step can show no change while the next one does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterator

from .category import FinCat, RelCat
from .sset import TruncSSet
from .verdict import Verdict

FWD, BWD = 1, -1


def _fmt(a) -> str:
    from .io import fmt_id
    return fmt_id(a)


# zigzags

@dataclass(frozen=True)
class Zigzag:
    """``segments`` is a tuple of ``(direction, arrow)`` pairs."""

    source: Hashable
    target: Hashable
    segments: tuple = ()

    @property
    def width(self) -> int:
        return len(self.segments)

    @property
    def pattern(self) -> tuple:
        return tuple(d for d, _ in self.segments)

    @property
    def arrows(self) -> tuple:
        return tuple(a for _, a in self.segments)

    def key(self):
        return (self.width, tuple((d, _fmt(a)) for d, a in self.segments))

    def objects(self, C: FinCat) -> tuple:
        out = [self.source]
        for d, a in self.segments:
            out.append(C.dst(a) if d == FWD else C.src(a))
        return tuple(out)

    def then(self, other: "Zigzag") -> "Zigzag":
        """Concatenation, ``self`` first."""
        if self.target != other.source:
            raise ValueError("zigzags do not meet")
        return Zigzag(self.source, other.target, self.segments + other.segments)

    def __str__(self):
        if not self.segments:
            return f"1_{_fmt(self.source)}"
        return " ".join(_fmt(a) if d == FWD else _fmt(a) + "^-1" for d, a in self.segments)


def check_zigzag(R: RelCat, z: Zigzag) -> bool:
    C = R.base
    here = z.source
    for d, a in z.segments:
        if d == FWD:
            if C.src(a) != here:
                return False
            here = C.dst(a)
        else:
            if d != BWD or a not in R.weq or C.dst(a) != here:
                return False
            here = C.src(a)
    return here == z.target


def _join(C: FinCat, d: int, first, second):
    """Compose two same-direction columns, ``first`` to the left."""
    return C.compose(second, first) if d == FWD else C.compose(first, second)


def reduce_zigzag(C: FinCat, z: Zigzag) -> Zigzag:
    """Normal form: compose same-direction runs and drop identities, to a fixpoint."""
    out: list[tuple[int, Hashable]] = []
    for d, a in z.segments:
        if C.is_identity(a):
            continue
        if out and out[-1][0] == d:
            b = _join(C, d, out[-1][1], a)
            out.pop()
            if not C.is_identity(b):
                out.append((d, b))
            continue
        out.append((d, a))
    # a composite that became an identity may leave two same-direction neighbours
    while True:
        for j in range(len(out) - 1):
            if out[j][0] == out[j + 1][0]:
                d = out[j][0]
                b = _join(C, d, out[j][1], out[j + 1][1])
                out[j:j + 2] = [] if C.is_identity(b) else [(d, b)]
                break
        else:
            break
    return Zigzag(z.source, z.target, tuple(out))


def is_reduced(C: FinCat, z: Zigzag) -> bool:
    return all(not C.is_identity(a) for a in z.arrows) and all(
        d != e for d, e in zip(z.pattern, z.pattern[1:]))


def zigzag_to_dot(z: Zigzag, C: FinCat, name="zigzag") -> str:
    from .io import dot_quote
    objs = z.objects(C)
    lines = [f"digraph {dot_quote(name)} {{", "  rankdir=LR;"]
    for j, o in enumerate(objs):
        lines.append(f"  c{j} [label={dot_quote(_fmt(o))}];")
    for j, (d, a) in enumerate(z.segments, start=1):
        s, t = (j - 1, j) if d == FWD else (j, j - 1)
        style = "" if d == FWD else ", style=dashed"
        lines.append(f"  c{s} -> c{t} [label={dot_quote(_fmt(a))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# hammocks

@dataclass(frozen=True)
class Hammock:
    """Rows share ``pattern``; ``verticals[i]`` maps row ``i`` to row ``i + 1``
    at the interior object columns ``1 .. width - 1``."""

    source: Hashable
    target: Hashable
    pattern: tuple
    rows: tuple
    verticals: tuple

    @property
    def height(self) -> int:
        return len(self.rows) - 1

    @property
    def width(self) -> int:
        return len(self.pattern)

    def row(self, i: int) -> Zigzag:
        return Zigzag(self.source, self.target, tuple(zip(self.pattern, self.rows[i])))

    def label(self) -> tuple:
        return (self.pattern, self.rows, self.verticals)


def _row_objects(C: FinCat, x, pattern, row) -> list:
    out = [x]
    for d, a in zip(pattern, row):
        out.append(C.dst(a) if d == FWD else C.src(a))
    return out


def check_hammock(R: RelCat, h: Hammock) -> bool:
    """Shape, marking and commutativity of every square."""
    C = R.base
    k = h.width
    if len(h.verticals) != h.height:
        return False
    objs = []
    for row in h.rows:
        if len(row) != k or not check_zigzag(R, Zigzag(h.source, h.target, tuple(zip(h.pattern, row)))):
            return False
        objs.append(_row_objects(C, h.source, h.pattern, row))
    for i, vs in enumerate(h.verticals):
        if len(vs) != max(k - 1, 0):
            return False
        full = (C.id(h.source),) + tuple(vs) + (C.id(h.target),) if k else ()
        for j in range(1, k):
            v = full[j]
            if v not in R.weq or C.src(v) != objs[i][j] or C.dst(v) != objs[i + 1][j]:
                return False
        for j in range(1, k + 1):
            a, b = h.rows[i][j - 1], h.rows[i + 1][j - 1]
            if h.pattern[j - 1] == FWD:
                if C.compose(b, full[j - 1]) != C.compose(full[j], a):
                    return False
            else:
                if C.compose(b, full[j]) != C.compose(full[j - 1], a):
                    return False
    return True


def _identity_column(C: FinCat, rows, j) -> bool:
    ids = C.identities
    return all(r[j] in ids for r in rows)


def reduce_hammock(C: FinCat, h: Hammock) -> Hammock:
    """Delete identity columns and compose same-direction neighbours, to a fixpoint."""
    ids = C.identities
    if (all(a != b for a, b in zip(h.pattern, h.pattern[1:]))
            and not any(all(r[j] in ids for r in h.rows) for j in range(len(h.pattern)))):
        return h
    pattern = list(h.pattern)
    rows = [list(r) for r in h.rows]
    verts = [list(v) for v in h.verticals]
    while True:
        k = len(pattern)
        j = next((j for j in range(k) if _identity_column(C, rows, j)), None)
        if j is not None:
            # arrow column j (0-based) joins object columns j and j+1, which agree
            drop = j if j >= 1 else 1  # interior object column to forget
            del pattern[j]
            for r in rows:
                del r[j]
            if k >= 2:
                for v in verts:
                    del v[min(drop, k - 1) - 1]
            continue
        j = next((j for j in range(k - 1) if pattern[j] == pattern[j + 1]), None)
        if j is not None:
            d = pattern[j]
            for r in rows:
                r[j:j + 2] = [_join(C, d, r[j], r[j + 1])]
            del pattern[j + 1]
            for v in verts:
                del v[j]
            continue
        break
    return Hammock(h.source, h.target, tuple(pattern), tuple(tuple(r) for r in rows),
                   tuple(tuple(v) for v in verts))


def hammock_face(C: FinCat, h: Hammock, i: int) -> Hammock:
    n = h.height
    rows = h.rows[:i] + h.rows[i + 1:]
    if i == 0:
        verts = h.verticals[1:]
    elif i == n:
        verts = h.verticals[:-1]
    else:
        merged = tuple(C.compose(b, a) for a, b in zip(h.verticals[i - 1], h.verticals[i]))
        verts = h.verticals[:i - 1] + (merged,) + h.verticals[i + 1:]
    return reduce_hammock(C, Hammock(h.source, h.target, h.pattern, rows, verts))


def hammock_degen(C: FinCat, h: Hammock, i: int) -> Hammock:
    objs = _row_objects(C, h.source, h.pattern, h.rows[i])
    ids = tuple(C.id(o) for o in objs[1:-1])
    return Hammock(h.source, h.target, h.pattern, h.rows[:i + 1] + h.rows[i:],
                   h.verticals[:i] + (ids,) + h.verticals[i:])


def hammock_to_dot(h: Hammock, C: FinCat, name="hammock") -> str:
    """Rows as ranks of a grid; vertical maps dashed."""
    from .io import dot_quote
    lines = [f"digraph {dot_quote(name)} {{", "  rankdir=LR; newrank=true;"]
    k = h.width
    for i, row in enumerate(h.rows):
        objs = _row_objects(C, h.source, h.pattern, row)
        lines.append(f"  subgraph row{i} {{ rank=same;")
        for j, o in enumerate(objs):
            lines.append(f"    r{i}c{j} [label={dot_quote(_fmt(o))}, pos=\"{j},{-i}!\"];")
        lines.append("  }")
        for j, (d, a) in enumerate(zip(h.pattern, row), start=1):
            s, t = (j - 1, j) if d == FWD else (j, j - 1)
            lines.append(f"  r{i}c{s} -> r{i}c{t} [label={dot_quote(_fmt(a))}];")
    for i, vs in enumerate(h.verticals):
        for j, v in enumerate(vs, start=1):
            lines.append(f"  r{i}c{j} -> r{i + 1}c{j} [label={dot_quote(_fmt(v))}, style=dashed];")
    if k == 0:
        lines.append("  r0c0;")
    lines.append("}")
    return "\n".join(lines) + "\n"


# enumeration

class _Index:
    """Hom and marked-hom lookups for one relative category."""

    def __init__(self, R: RelCat):
        C = R.base
        self.R, self.C = R, C
        self.hom = {}
        self.weq_hom = {}
        for m in C.morphisms:
            key = (C.src(m), C.dst(m))
            self.hom.setdefault(key, []).append(m)
            if m in R.weq:
                self.weq_hom.setdefault(key, []).append(m)
        self.comp = C._table
        self.ids = C.identities
        self.src = C._src
        self.dst = C._dst
        self.weq_out = {x: list(R.weq_out(x)) for x in C.objects}
        self.weq_in = {x: list(R.weq_in(x)) for x in C.objects}
        self.out = {x: list(C.out_arrows(x)) for x in C.objects}


def patterns(width: int) -> list[tuple]:
    """Alternating direction patterns of the given width."""
    if width == 0:
        return [()]
    return [tuple(s * (1 if j % 2 == 0 else -1) for j in range(width)) for s in (FWD, BWD)]


def rows_of(ix: _Index, x, y, pattern) -> list[tuple]:
    """All rows (identities allowed) of the pattern from ``x`` to ``y``."""
    C = ix.C
    k = len(pattern)
    # reach[j]: objects at column j from which y can be reached along pattern[j:]
    reach = [set() for _ in range(k + 1)]
    reach[k] = {y}
    for j in range(k - 1, -1, -1):
        d = pattern[j]
        for o in C.objects:
            steps = ix.out[o] if d == FWD else ix.weq_in[o]
            if any((C.dst(a) if d == FWD else C.src(a)) in reach[j + 1] for a in steps):
                reach[j].add(o)
    if x not in reach[0]:
        return []
    out = []

    def go(j, here, acc):
        if j == k:
            out.append(tuple(acc))
            return
        d = pattern[j]
        for a in (ix.out[here] if d == FWD else ix.weq_in[here]):
            nxt = C.dst(a) if d == FWD else C.src(a)
            if nxt in reach[j + 1]:
                acc.append(a)
                go(j + 1, nxt, acc)
                acc.pop()

    go(0, x, [])
    return out


def vertical_maps(ix: _Index, x, y, pattern, row) -> list[tuple[tuple, tuple]]:
    """All ``(verticals, lower_row)`` with ``row`` on top."""
    k = len(pattern)
    if k == 0:
        return [((), ())]
    comp, dst, hom, weq_hom, weq_out = ix.comp, ix.dst, ix.hom, ix.weq_hom, ix.weq_out
    objs = _row_objects(ix.C, x, pattern, row)
    id_y = ix.C.id(y)
    out = []
    vs: list = []
    lower: list = []

    def go(j, v_prev, top_prev):
        # v_prev: vertical at object column j-1, landing at top_prev in the lower row
        if j > k:
            out.append((tuple(vs), tuple(lower)))
            return
        a = row[j - 1]
        last = j == k
        for v in ((id_y,) if last else weq_out[objs[j]]):
            o2 = dst[v]
            if pattern[j - 1] == FWD:
                want = comp[v, a]
                cands = [b for b in hom.get((top_prev, o2), ()) if comp[b, v_prev] == want]
            else:
                want = comp[v_prev, a]
                cands = [b for b in weq_hom.get((o2, top_prev), ()) if comp[b, v] == want]
            if not cands:
                continue
            if not last:
                vs.append(v)
            for b in cands:
                lower.append(b)
                go(j + 1, v, o2)
                lower.pop()
            if not last:
                vs.pop()

    go(1, ix.C.id(x), x)
    return out


def lower_rows(ix: _Index, x, y, pattern, row) -> set:
    """Distinct lower rows of the height-1 hammocks with ``row`` on top.

    Same search as ``vertical_maps`` but keeps, per lower-row prefix, only the
    set of verticals that can end it, so different verticals reaching the
    same lower row are not followed separately.
    """
    k = len(pattern)
    if k == 0:
        return {()}
    comp, dst, hom, weq_hom, weq_out = ix.comp, ix.dst, ix.hom, ix.weq_hom, ix.weq_out
    objs = _row_objects(ix.C, x, pattern, row)
    id_y = ix.C.id(y)
    states = {(): {ix.C.id(x)}}
    for j in range(1, k + 1):
        a = row[j - 1]
        choices = (id_y,) if j == k else weq_out[objs[j]]
        nxt: dict = {}
        for prefix, vprevs in states.items():
            for v_prev in vprevs:
                top_prev = dst[v_prev]
                for v in choices:
                    o2 = dst[v]
                    if pattern[j - 1] == FWD:
                        want = comp[v, a]
                        for b in hom.get((top_prev, o2), ()):
                            if comp[b, v_prev] == want:
                                nxt.setdefault(prefix + (b,), set()).add(v)
                    else:
                        want = comp[v_prev, a]
                        for b in weq_hom.get((o2, top_prev), ()):
                            if comp[b, v] == want:
                                nxt.setdefault(prefix + (b,), set()).add(v)
        states = nxt
    return set(states)


def _reduce_segments(ix: _Index, segments) -> tuple:
    """``reduce_zigzag`` on raw segment tuples, for the inner loops."""
    ids, comp = ix.ids, ix.comp
    out: list = []
    for d, a in segments:
        if a in ids:
            continue
        if out and out[-1][0] == d:
            prev = out.pop()[1]
            b = comp[a, prev] if d == FWD else comp[prev, a]
            if b not in ids:
                out.append((d, b))
            continue
        out.append((d, a))
    changed = True
    while changed:
        changed = False
        for j in range(len(out) - 1):
            if out[j][0] == out[j + 1][0]:
                d, f, g = out[j][0], out[j][1], out[j + 1][1]
                b = comp[g, f] if d == FWD else comp[f, g]
                out[j:j + 2] = [] if b in ids else [(d, b)]
                changed = True
                break
    return tuple(out)


def _has_identity_column(C: FinCat, rows) -> bool:
    ids = C.identities
    return any(all(r[j] in ids for r in rows) for j in range(len(rows[0]))) if rows and rows[0] else False


def enumerate_hammocks_raw(R: RelCat, x, y, width_cap: int, height_cap: int,
                           ix: _Index | None = None) -> list[list[Hammock]]:
    """Reduced hammocks by height (``0..height_cap``), all widths ``<= width_cap``."""
    ix = ix or _Index(R)
    C = R.base
    levels: list[list[Hammock]] = [[] for _ in range(height_cap + 1)]
    for k in range(width_cap + 1):
        if k == 0 and x != y:
            continue
        for p in patterns(k):
            rows = rows_of(ix, x, y, p)
            succ = {r: vertical_maps(ix, x, y, p, r) for r in rows} if height_cap else {}

            def extend(rs, vs):
                n = len(rs) - 1
                if not _has_identity_column(C, rs):
                    levels[n].append(Hammock(x, y, p, tuple(rs), tuple(vs)))
                if n == height_cap:
                    return
                for v, r2 in succ[rs[-1]]:
                    extend(rs + [r2], vs + [v])

            # rows with an identity column can still start a reduced hammock,
            # so every row seeds the search
            for r in rows:
                extend([r], [])
    return levels


# mapping spaces

def _seg_key(segs) -> tuple:
    return (len(segs), tuple((d, _fmt(a)) for d, a in segs))


class _Partition:
    """Union-find over raw zigzag segments with per-width snapshots."""

    def __init__(self):
        self.parent: dict = {}
        self.snapshots: list[dict] = []

    def add(self, u):
        if u not in self.parent:
            self.parent[u] = u

    def find(self, u):
        p = self.parent
        while p[u] != u:
            p[u] = p[p[u]]
            u = p[u]
        return u

    def union(self, u, v):
        a, b = self.find(u), self.find(v)
        if a != b:
            self.parent[b] = a

    def snapshot(self):
        self.snapshots.append({u: self.find(u) for u in self.parent})

    def classes(self, snap: dict | None = None) -> list[list]:
        """Sorted classes of sorted members; independent of union order."""
        snap = snap if snap is not None else {u: self.find(u) for u in self.parent}
        groups: dict = {}
        for u, r in snap.items():
            groups.setdefault(r, []).append(u)
        return sorted((sorted(g, key=_seg_key) for g in groups.values()), key=lambda g: _seg_key(g[0]))

    def count(self, snap: dict) -> int:
        return len(set(snap.values()))

    def bijective(self, a: int, b: int) -> bool:
        """The class map from snapshot ``a`` to snapshot ``b`` is a bijection."""
        sa, sb = self.snapshots[a], self.snapshots[b]
        seen: dict = {}
        for u, r in sa.items():
            t = sb[u]
            if seen.setdefault(t, r) != r:
                return False
        return all(t in seen for t in sb.values())


def stabilized_at(part: _Partition, w: int) -> bool:
    return w >= 2 and part.bijective(w - 2, w - 1) and part.bijective(w - 1, w)


@dataclass
class Components:
    """Path components of a width-capped mapping space and their history over widths."""

    source: Hashable
    target: Hashable
    width_cap: int
    classes: list  # lists of Zigzag, sorted, shortest first
    history: list[int]
    stabilized: bool

    @cached_property
    def _index(self) -> dict:
        return {z.segments: i for i, c in enumerate(self.classes) for z in c}

    def index_of(self, z: Zigzag):
        return self._index.get(z.segments)


def mapping_space_components(R: RelCat, x, y, width_cap: int, ix: _Index | None = None,
                             edges=True) -> Components:
    """Components from every reduced height-1 hammock of width ``<= width_cap``.

    This streams the hammocks instead of assembling the simplicial set, so
    it scales to widths where the full space would not fit; the result is
    the same partition ``pi0`` computes on ``mapping_space``.
    """
    ix = ix or _Index(R)
    ids = ix.ids
    part = _Partition()
    history = []
    for w in range(width_cap + 1):
        if not (w == 0 and x != y):
            for p in patterns(w):
                for r in rows_of(ix, x, y, p):
                    if not any(a in ids for a in r):
                        part.add(tuple(zip(p, r)))
                if not edges:
                    continue
                for r in rows_of(ix, x, y, p):
                    top = None
                    for lower in lower_rows(ix, x, y, p, r):
                        if any(a in ids and b in ids for a, b in zip(r, lower)):
                            continue
                        if top is None:
                            top = _reduce_segments(ix, tuple(zip(p, r)))
                        part.union(top, _reduce_segments(ix, tuple(zip(p, lower))))
        part.snapshot()
        history.append(part.count(part.snapshots[-1]))
    classes = [[Zigzag(x, y, segs) for segs in c] for c in part.classes()]
    return Components(x, y, width_cap, classes, history, edges and stabilized_at(part, width_cap))


@dataclass
class MappingSpaceTrunc:
    source: Hashable
    target: Hashable
    width_cap: int
    height_cap: int
    space: TruncSSet
    hammocks: list[list[Hammock]]
    components: Components
    counts_by_width: list[list[int]]

    @property
    def pi0_by_width(self) -> list[int]:
        return self.components.history

    @property
    def stabilized(self) -> bool:
        return self.components.stabilized

    def bounds(self) -> dict:
        return dict(width=self.width_cap, height=self.height_cap)

    def to_json(self) -> dict:
        return {"source": _fmt(self.source), "target": _fmt(self.target),
                "width": self.width_cap, "height": self.height_cap,
                "counts": self.space.counts(), "nondegenerate": self.space.nondegenerate_counts(),
                "pi0_by_width": self.pi0_by_width, "counts_by_width": self.counts_by_width,
                "components": [str(c[0]) for c in self.components.classes],
                "stabilized": self.stabilized}


def enumerate_hammocks(R: RelCat, x, y, width_cap: int, height_cap: int) -> MappingSpaceTrunc:
    C = R.base
    ix = _Index(R)
    levels = enumerate_hammocks_raw(R, x, y, width_cap, height_cap, ix)
    labels = [[h.label() for h in level] for level in levels]
    by_label = [{h.label(): h for h in level} for level in levels]

    def face(n, i, lab):
        if n == 1:
            p, rows, _ = lab
            segs = _reduce_segments(ix, tuple(zip(p, rows[1 - i])))
            return (tuple(d for d, _ in segs), (tuple(a for _, a in segs),), ())
        return hammock_face(C, by_label[n][lab], i).label()

    def degen(n, i, lab):
        return hammock_degen(C, by_label[n][lab], i).label()

    X = TruncSSet.from_functions(height_cap, labels, face, degen,
                                 name=f"Map({_fmt(x)},{_fmt(y)})")
    comps = mapping_space_components(R, x, y, width_cap, ix, edges=height_cap >= 1)
    counts_by_width = [[sum(1 for h in level if h.width <= w) for level in levels]
                       for w in range(width_cap + 1)]
    return MappingSpaceTrunc(x, y, width_cap, height_cap, X, levels, comps, counts_by_width)


def mapping_space(R: RelCat, x, y, width_cap: int = 4, height_cap: int = 2) -> TruncSSet:
    return enumerate_hammocks(R, x, y, width_cap, height_cap).space


# homotopy category

@dataclass
class HoCat:
    """Width-capped homotopy category of a relative category."""

    R: RelCat
    width_cap: int
    classes: dict = field(default_factory=dict)  # (x, y) -> list of classes (lists of Zigzag)
    stabilized: dict = field(default_factory=dict)  # (x, y) -> bool
    history: dict = field(default_factory=dict)  # (x, y) -> class counts over widths 0..cap

    @cached_property
    def _class_of(self) -> dict:
        out = {}
        for (x, y), cls in self.classes.items():
            for i, c in enumerate(cls):
                for z in c:
                    out[x, y, z.segments] = (x, y, i)
        return out

    @property
    def objects(self):
        return self.R.base.objects

    def hom(self, x, y) -> list[list[Zigzag]]:
        return self.classes.get((x, y), [])

    def class_of(self, z: Zigzag):
        """``(x, y, index)`` of the class of a zigzag, or None if it is wider than the cap."""
        z = reduce_zigzag(self.R.base, z)
        return self._class_of.get((z.source, z.target, z.segments))

    def representative(self, x, y, i) -> Zigzag:
        return self.classes[x, y][i][0]

    def identity(self, x):
        return self.class_of(Zigzag(x, x, ()))

    def arrow_class(self, m):
        C = self.R.base
        return self.class_of(Zigzag(C.src(m), C.dst(m), ((FWD, m),)))

    def compose(self, second, first):
        """Class of ``second`` after ``first`` using shortest representatives; None past the cap."""
        (x, y, i), (y2, z, j) = first, second
        if y != y2:
            raise ValueError("classes do not compose")
        return self.class_of(self.representative(x, y, i).then(self.representative(y, z, j)))

    def inverse(self, c):
        """An inverse class if one is visible within the cap, else None."""
        x, y, _ = c
        idx, idy = self.identity(x), self.identity(y)
        for j in range(len(self.hom(y, x))):
            d = (y, x, j)
            if self.compose(d, c) == idx and self.compose(c, d) == idy:
                return d
        return None

    def involved_stable(self, x, y) -> bool:
        return all(self.stabilized.get(p, False) for p in ((x, y), (y, x), (x, x), (y, y)))

    def pairs(self) -> list[tuple]:
        return sorted(self.classes, key=lambda p: (_fmt(p[0]), _fmt(p[1])))

    def verdict(self) -> Verdict:
        loose = [p for p in self.pairs() if not self.stabilized[p]]
        bounds = dict(width=self.width_cap)
        if loose:
            shown = ", ".join(f"Hom({_fmt(a)},{_fmt(b)}) counts {self.history[a, b]}" for a, b in loose[:4])
            more = f" and {len(loose) - 4} more" if len(loose) > 4 else ""
            return Verdict.inconclusive(f"{len(loose)} hom-sets not stabilized: {shown}{more}", **bounds)
        return Verdict.ok("all hom-sets stabilized", **bounds)

    def to_json(self) -> dict:
        homs = []
        for (x, y) in self.pairs():
            homs.append({"source": _fmt(x), "target": _fmt(y),
                         "classes": [str(c[0]) for c in self.classes[x, y]],
                         "sizes": [len(c) for c in self.classes[x, y]],
                         "history": self.history[x, y],
                         "stabilized": self.stabilized[x, y]})
        return {"width": self.width_cap, "homs": homs}


def elementary_moves(ix: _Index, x, pattern, row) -> Iterator[tuple]:
    """Rows joined to ``row`` by a vertical map with a single non-identity component.

    At a peak (both neighbouring arrows point into the object) the move
    post-composes with a marked arrow out of it; at a valley it
    pre-composes with a marked arrow into it.  Any vertical map factors as
    the peak part followed by the valley part, and each part splits into
    one-column moves, so these moves connect exactly the rows that the
    height-1 hammocks connect.
    """
    comp = ix.comp
    ids = ix.ids
    objs = _row_objects(ix.C, x, pattern, row)
    for j in range(1, len(pattern)):
        left, right = row[j - 1], row[j]
        if pattern[j - 1] == FWD:
            for v in ix.weq_out[objs[j]]:
                if v not in ids:
                    yield row[:j - 1] + (comp[v, left], comp[v, right]) + row[j + 1:]
        else:
            for v in ix.weq_in[objs[j]]:
                if v not in ids:
                    yield row[:j - 1] + (comp[left, v], comp[right, v]) + row[j + 1:]


def ho_localization(R: RelCat, width_cap: int = 4) -> HoCat:
    """Classes of reduced zigzags under the relation generated by height-1 hammocks.

    The relation is generated through ``elementary_moves``; the full set of
    height-1 hammocks gives the same classes (``mapping_space_components``).
    """
    if width_cap < 1:
        raise ValueError("width cap must be at least 1")
    C = R.base
    ix = _Index(R)
    ids = ix.ids
    H = HoCat(R, width_cap)
    for x in C.objects:
        for y in C.objects:
            part = _Partition()
            history = []
            for w in range(width_cap + 1):
                if not (w == 0 and x != y):
                    for p in patterns(w):
                        for r in rows_of(ix, x, y, p):
                            if not any(a in ids for a in r):
                                part.add(tuple(zip(p, r)))
                        for r in rows_of(ix, x, y, p):
                            a = _reduce_segments(ix, tuple(zip(p, r)))
                            for r2 in elementary_moves(ix, x, p, r):
                                part.union(a, _reduce_segments(ix, tuple(zip(p, r2))))
                part.snapshot()
                history.append(part.count(part.snapshots[-1]))
            H.classes[x, y] = [[Zigzag(x, y, segs) for segs in c] for c in part.classes()]
            H.stabilized[x, y] = stabilized_at(part, width_cap)
            H.history[x, y] = history
    return H


def saturate(R: RelCat, width_cap: int = 4) -> tuple[RelCat, Verdict]:
    """Mark every arrow whose class is invertible in the width-capped homotopy category."""
    H = ho_localization(R, width_cap)
    C = R.base
    marked = set(C.identities)
    undecided = []
    for m in C.morphisms:
        if C.is_identity(m):
            continue
        c = H.arrow_class(m)
        if c is not None and H.inverse(c) is not None:
            marked.add(m)
        elif not H.involved_stable(C.src(m), C.dst(m)):
            undecided.append(m)
    out = RelCat.generated(C, marked, name=f"sat({R.name})")
    bounds = dict(width=width_cap)
    if undecided:
        return out, Verdict.inconclusive(
            f"invertibility undecided within the cap for {', '.join(_fmt(m) for m in undecided)}", **bounds)
    return out, Verdict.ok(f"{len(out.weq)} arrows marked", **bounds)


def functor_on_zigzag(F, z: Zigzag):
    """Image of a zigzag in the codomain, backward arrows inverted; None if some image is not invertible."""
    D = F.codomain
    acc = D.id(F.ob(z.source))
    for d, a in z.segments:
        m = F(a)
        if d == BWD:
            m = D.inverse(m)
            if m is None:
                return None
        acc = D.compose(m, acc)
    return acc


def zigzag_count(R: RelCat, width_cap: int) -> int:
    """Number of zigzags of width ``<= width_cap`` (identities allowed) over all pairs.

    A cheap proxy for the cost of hammock enumeration, which grows roughly
    like the number of marked endomorphisms to the power of the width.
    """
    ix = _Index(R)
    C = R.base
    return sum(len(rows_of(ix, x, y, p)) for x in C.objects for y in C.objects
               for k in range(width_cap + 1) for p in patterns(k))
