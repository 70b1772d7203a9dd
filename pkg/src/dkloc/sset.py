"""Truncated simplicial and bisimplicial sets.

A :class:`TruncSSet` stores simplices up to a dimension cap together with
explicit face and degeneracy tables (integer indices into the level below
or above).  Degeneracies are kept because normalized chains and the
mapping-simplex face formulas need the degeneracy flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Hashable, Sequence

from .category import Chain, FinCat, RelCat, chain_objects, chains
from .verdict import Verdict


class SSetError(ValueError):
    pass


class TruncSSet:
    """Simplicial set truncated at dimension ``cap``.

    ``faces[n][i][s]`` is the index of ``d_i`` of simplex ``s`` in dimension
    ``n`` (defined for ``1 <= n <= cap``) and ``degens[n][i][s]`` the index of
    ``s_i`` (defined for ``n < cap``).
    """

    def __init__(self, cap: int, labels: Sequence[Sequence[Hashable]], faces, degens, name=""):
        if cap < 0:
            raise SSetError("cap must be non-negative")
        if len(labels) != cap + 1:
            raise SSetError("need one level of simplices per dimension up to the cap")
        self.cap = cap
        self.labels = [tuple(level) for level in labels]
        self.faces = faces
        self.degens = degens
        self.name = name
        self.index = [{lab: i for i, lab in enumerate(level)} for level in self.labels]
        for n, level in enumerate(self.labels):
            if len(self.index[n]) != len(level):
                raise SSetError(f"duplicate simplex labels in dimension {n}")
        self.degenerate = [[False] * len(level) for level in self.labels]
        for n in range(cap):
            for table in degens[n]:
                for t in table:
                    self.degenerate[n + 1][t] = True

    @classmethod
    def from_functions(cls, cap: int, levels, face: Callable, degen: Callable, name="") -> "TruncSSet":
        """Build from labels per level and label-level ``face(n, i, x)``, ``degen(n, i, x)``."""
        levels = [list(level) for level in levels]
        index = [{lab: i for i, lab in enumerate(level)} for level in levels]
        faces = [None]
        for n in range(1, cap + 1):
            faces.append([tuple(_lookup(index[n - 1], face(n, i, x), n - 1) for x in levels[n])
                          for i in range(n + 1)])
        degens = []
        for n in range(cap):
            degens.append([tuple(_lookup(index[n + 1], degen(n, i, x), n + 1) for x in levels[n])
                           for i in range(n + 1)])
        return cls(cap, levels, faces, degens, name=name)

    def size(self, n: int) -> int:
        return len(self.labels[n])

    def counts(self) -> list[int]:
        return [len(level) for level in self.labels]

    def nondegenerate(self, n: int) -> list[int]:
        return [s for s in range(len(self.labels[n])) if not self.degenerate[n][s]]

    def nondegenerate_counts(self) -> list[int]:
        return [len(self.nondegenerate(n)) for n in range(self.cap + 1)]

    def face(self, n: int, i: int, s: int) -> int:
        return self.faces[n][i][s]

    def degen(self, n: int, i: int, s: int) -> int:
        return self.degens[n][i][s]

    def vertices(self, n: int, s: int) -> tuple:
        """Vertex indices of simplex ``s``: vertex ``j`` is ``d_{0..j-1} d_{j+1..n}``."""
        out = []
        for j in range(n + 1):
            t, m = s, n
            while m > j:
                t = self.faces[m][m][t]
                m -= 1
            while m > 0:
                t = self.faces[m][0][t]
                m -= 1
            out.append(t)
        return tuple(out)

    def is_empty(self) -> bool:
        return not self.labels[0]

    def truncate(self, cap: int) -> "TruncSSet":
        if cap > self.cap:
            raise SSetError("cannot raise the cap by truncation")
        return TruncSSet(cap, self.labels[:cap + 1], self.faces[:cap + 1], self.degens[:cap],
                         name=self.name)

    def restrict(self, keep_vertices) -> "TruncSSet":
        """Largest sub-simplicial set whose vertices all lie in ``keep_vertices``."""
        keep = [set() for _ in range(self.cap + 1)]
        keep[0] = set(keep_vertices)
        for n in range(1, self.cap + 1):
            keep[n] = {s for s in range(self.size(n)) if all(v in keep[0] for v in self.vertices(n, s))}
        order = [sorted(k) for k in keep]
        newidx = [{s: j for j, s in enumerate(o)} for o in order]
        faces = [None] + [[tuple(newidx[n - 1][self.faces[n][i][s]] for s in order[n])
                           for i in range(n + 1)] for n in range(1, self.cap + 1)]
        degens = [[tuple(newidx[n + 1][self.degens[n][i][s]] for s in order[n])
                   for i in range(n + 1)] for n in range(self.cap)]
        labels = [[self.labels[n][s] for s in order[n]] for n in range(self.cap + 1)]
        return TruncSSet(self.cap, labels, faces, degens, name=self.name)

    def __repr__(self):
        return f"<TruncSSet {self.name} cap={self.cap} nondegenerate={self.nondegenerate_counts()}>"


def _lookup(index: dict, label, n: int) -> int:
    try:
        return index[label]
    except KeyError:
        raise SSetError(f"simplex {label!r} missing from dimension {n}") from None


def audit(X: TruncSSet) -> Verdict:
    """Check every simplicial identity that is defined within the cap."""
    d, s = X.faces, X.degens
    N = X.cap
    for n in range(2, N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                for x in range(X.size(n)):
                    if d[n - 1][i][d[n][j][x]] != d[n - 1][j - 1][d[n][i][x]]:
                        return Verdict.fail(f"d{i}d{j} != d{j - 1}d{i} on {X.labels[n][x]!r}")
    for n in range(N):
        for j in range(n + 1):
            for x in range(X.size(n)):
                y = s[n][j][x]
                for i in range(n + 2):
                    lhs = d[n + 1][i][y]
                    if i < j:
                        rhs = s[n - 1][j - 1][d[n][i][x]]
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = s[n - 1][j][d[n][i - 1][x]]
                    if lhs != rhs:
                        return Verdict.fail(f"d{i}s{j} identity fails on {X.labels[n][x]!r}")
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(X.size(n)):
                    if s[n + 1][i][s[n][j][x]] != s[n + 1][j + 1][s[n][i][x]]:
                        return Verdict.fail(f"s{i}s{j} != s{j + 1}s{i} on {X.labels[n][x]!r}")
    return Verdict.ok(cap=N)


# nerves and simplices

def chain_face(C: FinCat, c: Chain, i: int) -> Chain:
    n = len(c) - 1
    if n == 0:
        raise SSetError("vertices have no faces")
    if i == 0:
        return (C.dst(c[1]),) + c[2:]
    if i == n:
        return c[:-1]
    return c[:i] + (C.compose(c[i + 1], c[i]),) + c[i + 2:]


def chain_degen(C: FinCat, c: Chain, i: int) -> Chain:
    x = chain_objects(C, c)[i]
    return c[:i + 1] + (C.id(x),) + c[i + 1:]


def nerve(C: FinCat, cap: int) -> TruncSSet:
    """``N(C)`` up to dimension ``cap``; ``n``-simplices are length-``n`` chains."""
    levels = [list(chains(C, n)) for n in range(cap + 1)]
    return TruncSSet.from_functions(cap, levels, lambda n, i, c: chain_face(C, c, i),
                                    lambda n, i, c: chain_degen(C, c, i), name=f"N({C.name})")


def standard_simplex(m: int, cap: int) -> TruncSSet:
    """``Delta^m``; ``k``-simplices are non-decreasing ``(k+1)``-tuples in ``0..m``."""
    levels = [[t for t in iproduct(range(m + 1), repeat=k + 1) if all(a <= b for a, b in zip(t, t[1:]))]
              for k in range(cap + 1)]
    return TruncSSet.from_functions(cap, levels, lambda n, i, t: t[:i] + t[i + 1:],
                                    lambda n, i, t: t[:i + 1] + t[i:], name=f"Delta^{m}")


def boundary_simplex(m: int, cap: int) -> TruncSSet:
    """``dDelta^m``: simplices of ``Delta^m`` missing at least one vertex."""
    full = standard_simplex(m, cap)
    levels = [[t for t in level if len(set(t)) < m + 1] for level in full.labels]
    return TruncSSet.from_functions(cap, levels, lambda n, i, t: t[:i] + t[i + 1:],
                                    lambda n, i, t: t[:i + 1] + t[i:], name=f"dDelta^{m}")


def point(cap: int) -> TruncSSet:
    return standard_simplex(0, cap)


def discrete_sset(points: Sequence, cap: int) -> TruncSSet:
    levels = [[(p, k) for p in points] for k in range(cap + 1)]
    return TruncSSet.from_functions(cap, levels, lambda n, i, x: (x[0], n - 1),
                                    lambda n, i, x: (x[0], n + 1), name="discrete")


def empty_sset(cap: int) -> TruncSSet:
    return TruncSSet(cap, [[] for _ in range(cap + 1)], [None] + [[()] * (n + 1) for n in range(1, cap + 1)],
                     [[()] * (n + 1) for n in range(cap)], name="empty")


def product(X: TruncSSet, Y: TruncSSet) -> TruncSSet:
    """Levelwise product with componentwise faces and degeneracies."""
    if X.cap != Y.cap:
        raise SSetError(f"cap mismatch: {X.cap} vs {Y.cap}")
    N = X.cap
    labels = [[(a, b) for a in X.labels[n] for b in Y.labels[n]] for n in range(N + 1)]
    ny = [Y.size(n) for n in range(N + 1)]

    faces = [None]
    for n in range(1, N + 1):
        faces.append([tuple(X.faces[n][i][a] * ny[n - 1] + Y.faces[n][i][b]
                            for a in range(X.size(n)) for b in range(ny[n])) for i in range(n + 1)])
    degens = []
    for n in range(N):
        degens.append([tuple(X.degens[n][i][a] * ny[n + 1] + Y.degens[n][i][b]
                             for a in range(X.size(n)) for b in range(ny[n])) for i in range(n + 1)])
    return TruncSSet(N, labels, faces, degens, name=f"{X.name}x{Y.name}")


class SimplicialMap:
    """Levelwise index maps ``X_n -> Y_n`` up to the common cap."""

    def __init__(self, source: TruncSSet, target: TruncSSet, maps: Sequence[Sequence[int]]):
        self.source, self.target = source, target
        self.maps = [tuple(m) for m in maps]

    @classmethod
    def from_labels(cls, source: TruncSSet, target: TruncSSet, fn: Callable) -> "SimplicialMap":
        """``fn(n, label) -> label`` in the target."""
        maps = [[_lookup(target.index[n], fn(n, lab), n) for lab in source.labels[n]]
                for n in range(min(source.cap, target.cap) + 1)]
        return cls(source, target, maps)

    def check(self) -> Verdict:
        X, Y, f = self.source, self.target, self.maps
        for n in range(1, len(f)):
            for i in range(n + 1):
                for s in range(X.size(n)):
                    if f[n - 1][X.faces[n][i][s]] != Y.faces[n][i][f[n][s]]:
                        return Verdict.fail(f"map does not commute with d{i} on {X.labels[n][s]!r}")
        for n in range(len(f) - 1):
            for i in range(n + 1):
                for s in range(X.size(n)):
                    if f[n + 1][X.degens[n][i][s]] != Y.degens[n][i][f[n][s]]:
                        return Verdict.fail(f"map does not commute with s{i} on {X.labels[n][s]!r}")
        return Verdict.ok()

    def is_bijective(self) -> bool:
        return all(len(set(m)) == len(m) == self.target.size(n) for n, m in enumerate(self.maps))


def isomorphic_via(X: TruncSSet, Y: TruncSSet, fn: Callable) -> bool:
    """True if the label map ``fn`` is a simplicial bijection ``X -> Y``."""
    if X.cap != Y.cap or X.counts() != Y.counts():
        return False
    try:
        f = SimplicialMap.from_labels(X, Y, fn)
    except SSetError:
        return False
    return f.is_bijective() and f.check().passed


# bisimplicial sets

class BiSSet:
    """Bisimplicial set truncated at ``(cap_row, cap_col)``.

    ``labels[n][k]`` lists the ``(n, k)``-simplices; ``n`` indexes rows.  Row
    operators (``hface``, ``hdeg``) change ``n``, column operators (``vface``,
    ``vdeg``) change ``k``.
    """

    def __init__(self, cap_row: int, cap_col: int, labels, hface, vface, hdeg, vdeg, name=""):
        self.cap_row, self.cap_col = cap_row, cap_col
        self.labels = labels
        self.hface, self.vface, self.hdeg, self.vdeg = hface, vface, hdeg, vdeg
        self.name = name

    @classmethod
    def from_functions(cls, cap_row, cap_col, levels, hface, vface, hdeg, vdeg, name="") -> "BiSSet":
        """``levels[n][k]`` label lists; operators act on labels: ``hface(n, k, i, x)`` etc."""
        index = [[{lab: j for j, lab in enumerate(levels[n][k])} for k in range(cap_col + 1)]
                 for n in range(cap_row + 1)]
        H, V, HS, VS = {}, {}, {}, {}
        for n in range(cap_row + 1):
            for k in range(cap_col + 1):
                lv = levels[n][k]
                if n > 0:
                    H[n, k] = [tuple(_lookup(index[n - 1][k], hface(n, k, i, x), n - 1) for x in lv)
                               for i in range(n + 1)]
                if k > 0:
                    V[n, k] = [tuple(_lookup(index[n][k - 1], vface(n, k, i, x), k - 1) for x in lv)
                               for i in range(k + 1)]
                if n < cap_row:
                    HS[n, k] = [tuple(_lookup(index[n + 1][k], hdeg(n, k, i, x), n + 1) for x in lv)
                                for i in range(n + 1)]
                if k < cap_col:
                    VS[n, k] = [tuple(_lookup(index[n][k + 1], vdeg(n, k, i, x), k + 1) for x in lv)
                                for i in range(k + 1)]
        return cls(cap_row, cap_col, [[list(l) for l in row] for row in levels], H, V, HS, VS, name=name)

    def row(self, n: int) -> TruncSSet:
        """The simplicial set ``k -> B_{n,k}``."""
        K = self.cap_col
        faces = [None] + [self.vface[n, k] for k in range(1, K + 1)]
        degens = [self.vdeg[n, k] for k in range(K)]
        return TruncSSet(K, [self.labels[n][k] for k in range(K + 1)], faces, degens,
                         name=f"{self.name} row {n}")

    def column(self, k: int) -> TruncSSet:
        N = self.cap_row
        faces = [None] + [self.hface[n, k] for n in range(1, N + 1)]
        degens = [self.hdeg[n, k] for n in range(N)]
        return TruncSSet(N, [self.labels[n][k] for n in range(N + 1)], faces, degens,
                         name=f"{self.name} column {k}")

    def audit(self) -> Verdict:
        for n in range(self.cap_row + 1):
            v = audit(self.row(n))
            if not v.passed:
                return Verdict.fail(f"row {n}: {v.detail}")
        for k in range(self.cap_col + 1):
            v = audit(self.column(k))
            if not v.passed:
                return Verdict.fail(f"column {k}: {v.detail}")
        for n in range(self.cap_row + 1):
            for k in range(self.cap_col + 1):
                for x in range(len(self.labels[n][k])):
                    if n > 0 and k > 0:
                        for i in range(n + 1):
                            for j in range(k + 1):
                                a = self.vface[n - 1, k][j][self.hface[n, k][i][x]]
                                b = self.hface[n, k - 1][i][self.vface[n, k][j][x]]
                                if a != b:
                                    return Verdict.fail(f"row/column faces do not commute at ({n},{k})")
                    if n > 0 and k < self.cap_col:
                        for i in range(n + 1):
                            for j in range(k + 1):
                                a = self.vdeg[n - 1, k][j][self.hface[n, k][i][x]]
                                b = self.hface[n, k + 1][i][self.vdeg[n, k][j][x]]
                                if a != b:
                                    return Verdict.fail(f"row face and column degeneracy at ({n},{k})")
                    if k > 0 and n < self.cap_row:
                        for i in range(n + 1):
                            for j in range(k + 1):
                                a = self.hdeg[n, k - 1][i][self.vface[n, k][j][x]]
                                b = self.vface[n + 1, k][j][self.hdeg[n, k][i][x]]
                                if a != b:
                                    return Verdict.fail(f"row degeneracy and column face at ({n},{k})")
        return Verdict.ok(caps=(self.cap_row, self.cap_col))


def diagonal(B: BiSSet) -> TruncSSet:
    """``n``-simplices are the ``(n, n)``-simplices; operators act in both directions."""
    N = min(B.cap_row, B.cap_col)
    faces = [None]
    for n in range(1, N + 1):
        faces.append([tuple(B.hface[n, n - 1][i][B.vface[n, n][i][x]] for x in range(len(B.labels[n][n])))
                      for i in range(n + 1)])
    degens = []
    for n in range(N):
        degens.append([tuple(B.hdeg[n, n + 1][i][B.vdeg[n, n][i][x]] for x in range(len(B.labels[n][n])))
                       for i in range(n + 1)])
    return TruncSSet(N, [B.labels[n][n] for n in range(N + 1)], faces, degens, name=f"diag {B.name}")


def row_constant(X: TruncSSet, cap_row: int) -> BiSSet:
    """``B_{n,k} = X_k`` with identity row operators."""
    K = X.cap
    labels = [[list(X.labels[k]) for k in range(K + 1)] for _ in range(cap_row + 1)]
    H, V, HS, VS = {}, {}, {}, {}
    for n in range(cap_row + 1):
        for k in range(K + 1):
            ident = tuple(range(X.size(k)))
            if n > 0:
                H[n, k] = [ident] * (n + 1)
            if n < cap_row:
                HS[n, k] = [ident] * (n + 1)
            if k > 0:
                V[n, k] = X.faces[k]
            if k < K:
                VS[n, k] = X.degens[k]
    return BiSSet(cap_row, K, labels, H, V, HS, VS, name=f"const {X.name}")


def external_product(X: TruncSSet, Y: TruncSSet) -> BiSSet:
    """``B_{n,k} = X_n x Y_k``."""
    labels = [[[(a, b) for a in X.labels[n] for b in Y.labels[k]] for k in range(Y.cap + 1)]
              for n in range(X.cap + 1)]
    H, V, HS, VS = {}, {}, {}, {}
    for n in range(X.cap + 1):
        for k in range(Y.cap + 1):
            pairs = [(a, b) for a in range(X.size(n)) for b in range(Y.size(k))]
            if n > 0:
                H[n, k] = [tuple(X.faces[n][i][a] * Y.size(k) + b for a, b in pairs) for i in range(n + 1)]
            if n < X.cap:
                HS[n, k] = [tuple(X.degens[n][i][a] * Y.size(k) + b for a, b in pairs) for i in range(n + 1)]
            if k > 0:
                V[n, k] = [tuple(a * Y.size(k - 1) + Y.faces[k][i][b] for a, b in pairs) for i in range(k + 1)]
            if k < Y.cap:
                VS[n, k] = [tuple(a * Y.size(k + 1) + Y.degens[k][i][b] for a, b in pairs) for i in range(k + 1)]
    return BiSSet(X.cap, Y.cap, labels, H, V, HS, VS, name=f"{X.name}[x]{Y.name}")


def weq_ladder_category(R: RelCat, n: int) -> FinCat:
    """Category of length-``n`` chains and ladders whose rungs are all marked."""
    from .category import _ladder_category
    return _ladder_category(R.base, list(chains(R.base, n)), allowed=R.weq.__contains__,
                            name=f"we({R.name}^[{n}])")


def classification_diagram(R: RelCat, cap_n: int, cap_k: int) -> BiSSet:
    """Row ``n`` is the nerve of the category of ``n``-chains and marked ladders.

    An ``(n, k)``-simplex is a ``k``-chain of marked ladders between
    ``n``-chains, written ``(c0, l1, ..., lk)`` with ladders
    ``l = (source chain, target chain, rungs)``.  Row operators act on every
    chain by the chain face/degeneracy and on every ladder by dropping or
    repeating the corresponding rung.
    """
    C = R.base
    rows = [weq_ladder_category(R, n) for n in range(cap_n + 1)]
    levels = [[list(chains(rows[n], k)) for k in range(cap_k + 1)] for n in range(cap_n + 1)]

    def ladder_face(l, i):
        return (chain_face(C, l[0], i), chain_face(C, l[1], i), l[2][:i] + l[2][i + 1:])

    def ladder_degen(l, i):
        return (chain_degen(C, l[0], i), chain_degen(C, l[1], i), l[2][:i + 1] + l[2][i:])

    def hface(n, k, i, x):
        return (chain_face(C, x[0], i),) + tuple(ladder_face(l, i) for l in x[1:])

    def hdeg(n, k, i, x):
        return (chain_degen(C, x[0], i),) + tuple(ladder_degen(l, i) for l in x[1:])

    def vface(n, k, i, x):
        return chain_face(rows[n], x, i)

    def vdeg(n, k, i, x):
        return chain_degen(rows[n], x, i)

    return BiSSet.from_functions(cap_n, cap_k, levels, hface, vface, hdeg, vdeg, name=f"N({R.name})")


# mapping simplex

@dataclass(frozen=True)
class FunctorSequence:
    """``C^0 -> C^1 -> ... -> C^n`` with ``functors[i]: C^i -> C^{i+1}``."""

    categories: tuple
    functors: tuple

    def __post_init__(self):
        if len(self.functors) != len(self.categories) - 1:
            raise SSetError("need exactly one functor between consecutive categories")
        for i, F in enumerate(self.functors):
            if F.domain is not self.categories[i] and F.domain != self.categories[i]:
                raise SSetError(f"functor {i} does not start at category {i}")
            if F.codomain is not self.categories[i + 1] and F.codomain != self.categories[i + 1]:
                raise SSetError(f"functor {i} does not end at category {i + 1}")

    @property
    def length(self) -> int:
        return len(self.categories) - 1

    def push(self, i: int, j: int, c: Chain) -> Chain:
        """Transport a chain of ``C^i`` to ``C^j`` (``i <= j``)."""
        for t in range(i, j):
            c = self.functors[t].chain(c)
        return c


def mapping_simplex(seq: FunctorSequence, cap: int) -> TruncSSet:
    """``M(C^0 -> ... -> C^n)``.

    A ``k``-simplex is ``(alpha, c)`` with ``alpha`` a monotone ``(k+1)``-tuple
    in ``0..n`` and ``c`` a ``k``-chain of ``C^{alpha(0)}``.  The zeroth face
    pushes the remaining chain forward when ``alpha(0) < alpha(1)``.
    """
    n = seq.length
    levels = []
    for k in range(cap + 1):
        level = []
        for alpha in iproduct(range(n + 1), repeat=k + 1):
            if all(a <= b for a, b in zip(alpha, alpha[1:])):
                for c in chains(seq.categories[alpha[0]], k):
                    level.append((alpha, c))
        levels.append(level)

    def face(k, i, x):
        alpha, c = x
        C = seq.categories[alpha[0]]
        a2 = alpha[:i] + alpha[i + 1:]
        c2 = chain_face(C, c, i)
        if i == 0:
            c2 = seq.push(alpha[0], alpha[1], c2)
        return a2, c2

    def degen(k, i, x):
        alpha, c = x
        return alpha[:i + 1] + alpha[i:], chain_degen(seq.categories[alpha[0]], c, i)

    return TruncSSet.from_functions(cap, levels, face, degen, name="M")


def colimit(pieces: Sequence[TruncSSet], gluings) -> tuple[TruncSSet, list[list[list[int]]]]:
    """Strict colimit of pieces glued along links.

    ``gluings`` is a list of ``(a, f, b, g)``: simplicial maps ``f: L -> pieces[a]``
    and ``g: L -> pieces[b]`` whose images are identified.  Returns the
    quotient of the disjoint union and, per piece, the levelwise class maps.
    Raises SSetError if the identification is not compatible with faces.
    """
    cap = min(P.cap for P in pieces)
    offsets = []
    result_labels, faces, degens = [], [None], []
    classes_per_dim = []
    for n in range(cap + 1):
        off, total = [], 0
        for P in pieces:
            off.append(total)
            total += P.size(n)
        offsets.append(off)
        parent = list(range(total))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for a, f, b, g in gluings:
            for s in range(f.source.size(n)):
                u, v = find(off[a] + f.maps[n][s]), find(off[b] + g.maps[n][s])
                if u != v:
                    parent[max(u, v)] = min(u, v)
        roots = sorted({find(u) for u in range(total)})
        rid = {r: j for j, r in enumerate(roots)}
        cls = [rid[find(u)] for u in range(total)]
        classes_per_dim.append(cls)
        labels = [None] * len(roots)
        for p, P in enumerate(pieces):
            for s in range(P.size(n)):
                j = cls[off[p] + s]
                if labels[j] is None:
                    labels[j] = (p, P.labels[n][s])
        result_labels.append(labels)

    def induced(table_for, n_from, n_to, arity):
        out = []
        for i in range(arity):
            img = [None] * len(result_labels[n_from])
            for p, P in enumerate(pieces):
                tab = table_for(P)[i]
                for s in range(P.size(n_from)):
                    j = classes_per_dim[n_from][offsets[n_from][p] + s]
                    t = classes_per_dim[n_to][offsets[n_to][p] + tab[s]]
                    if img[j] is None:
                        img[j] = t
                    elif img[j] != t:
                        raise SSetError(f"identification not compatible with operators in dimension {n_from}")
            out.append(tuple(img))
        return out

    for n in range(1, cap + 1):
        faces.append(induced(lambda P, n=n: P.faces[n], n, n - 1, n + 1))
    for n in range(cap):
        degens.append(induced(lambda P, n=n: P.degens[n], n, n + 1, n + 1))
    Q = TruncSSet(cap, result_labels, faces, degens, name="colim")
    piece_maps = [[[classes_per_dim[n][offsets[n][p] + s] for s in range(P.size(n))]
                   for n in range(cap + 1)] for p, P in enumerate(pieces)]
    return Q, piece_maps


def mapping_simplex_colimit_check(seq: FunctorSequence, cap: int) -> Verdict:
    """Compare the strict colimit of the zigzag

        C^0 x D^n <- C^0 x D^{n-1} -> C^1 x D^{n-1} <- ... -> C^n

    (backward maps by the zeroth coface, forward maps by the functors) with
    the mapping simplex via the canonical comparison map.
    """
    n = seq.length
    bounds = dict(cap=cap, n=n)
    nerves = [nerve(C, cap) for C in seq.categories]
    pieces = [product(nerves[i], standard_simplex(n - i, cap)) for i in range(n + 1)]
    gluings = []
    for i in range(n):
        link = product(nerves[i], standard_simplex(n - i - 1, cap))
        into_left = SimplicialMap.from_labels(link, pieces[i], lambda k, x: (x[0], tuple(b + 1 for b in x[1])))
        into_right = SimplicialMap.from_labels(
            link, pieces[i + 1], lambda k, x, i=i: (seq.functors[i].chain(x[0]), x[1]))
        for m in (into_left, into_right):
            v = m.check()
            if not v.passed:
                return Verdict.fail(f"gluing map is not simplicial: {v.detail}", **bounds)
        gluings.append((i, into_left, i + 1, into_right))
    try:
        Q, piece_maps = colimit(pieces, gluings)
    except SSetError as e:
        return Verdict.fail(str(e), **bounds)
    M = mapping_simplex(seq, cap)
    comparison = [[None] * Q.size(k) for k in range(cap + 1)]
    for i, P in enumerate(pieces):
        for k in range(cap + 1):
            for s, (c, beta) in enumerate(P.labels[k]):
                alpha = tuple(i + b for b in beta)
                target = M.index[k][(alpha, seq.push(i, alpha[0], c))]
                j = piece_maps[i][k][s]
                if comparison[k][j] is None:
                    comparison[k][j] = target
                elif comparison[k][j] != target:
                    return Verdict.fail(f"comparison map not well defined on dimension {k}", **bounds)
    phi = SimplicialMap(Q, M, comparison)
    v = phi.check()
    if not v.passed:
        return Verdict.fail(f"comparison map not simplicial: {v.detail}", **bounds)
    for k in range(cap + 1):
        if sorted(comparison[k]) != list(range(M.size(k))):
            missing = set(range(M.size(k))) - set(comparison[k])
            if missing:
                return Verdict.fail(f"comparison not surjective in dimension {k}: "
                                    f"{M.labels[k][min(missing)]!r} missed", **bounds)
            return Verdict.fail(f"comparison not injective in dimension {k}", **bounds)
    return Verdict.ok(f"colimit has {Q.counts()} simplices, matching the mapping simplex", **bounds)


# export

def to_json(X: TruncSSet) -> dict:
    """Nondegenerate simplices with their faces (indices into the lower level listing)."""
    from .io import fmt_id
    levels = []
    for n in range(X.cap + 1):
        nd = X.nondegenerate(n)
        entries = []
        for s in nd:
            e = {"id": fmt_id(X.labels[n][s])}
            if n > 0:
                e["faces"] = [fmt_id(X.labels[n - 1][X.faces[n][i][s]]) for i in range(n + 1)]
            entries.append(e)
        levels.append(entries)
    return {"cap": X.cap, "nondegenerate": levels, "counts": X.counts()}


def to_dot(X: TruncSSet, name="X") -> str:
    """1-skeleton as a DOT digraph (nondegenerate edges only)."""
    from .io import dot_quote, fmt_id
    lines = [f"digraph {dot_quote(name)} {{"]
    for v in range(X.size(0)):
        lines.append(f"  v{v} [label={dot_quote(fmt_id(X.labels[0][v]))}];")
    if X.cap >= 1:
        for e in X.nondegenerate(1):
            a, b = X.faces[1][1][e], X.faces[1][0][e]
            lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
