"""Slow, independent reference computations.

Nothing here imports the package's enumeration or linear algebra code:
chains are brute-forced from the composition table, homology goes through
sympy's Smith normal form on dense matrices, and hammocks are enumerated
by taking all tuples of arrows and filtering.
"""

from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

FWD, BWD = 1, -1


def brute_chains(C, n):
    """All length-n chains as tuples ``(x0, f1, ..., fn)`` by filtering all arrow tuples."""
    if n == 0:
        return [(x,) for x in C.objects]
    out = []
    for fs in product(C.morphisms, repeat=n):
        if all(C.dst(fs[i]) == C.src(fs[i + 1]) for i in range(n - 1)):
            out.append((C.src(fs[0]),) + fs)
    return out


def brute_nondegenerate_count(C, n):
    return sum(1 for c in brute_chains(C, n) if not any(f in C.identities for f in c[1:]))


def _nerve_face(C, c, i):
    n = len(c) - 1
    if n == 0:
        raise ValueError
    if i == 0:
        return (C.dst(c[1]),) + c[2:]
    if i == n:
        return c[:-1]
    return c[:i] + (C.table[c[i + 1], c[i]],) + c[i + 2:]


def dense_smith(rows, cols, entries):
    """Nonzero invariant factors of a dense integer matrix via sympy."""
    if rows == 0 or cols == 0:
        return []
    M = Matrix.zeros(rows, cols)
    for (r, c), v in entries.items():
        M[r, c] += v
    S = smith_normal_form(M, domain=ZZ)
    return sorted(abs(S[i, i]) for i in range(min(rows, cols)) if S[i, i] != 0)


def nerve_homology(C, upto):
    """``[(betti, torsion)]`` for the nerve, from brute-forced normalized chains."""
    basis = []
    for n in range(upto + 2):
        basis.append([c for c in brute_chains(C, n) if not any(f in C.identities for f in c[1:])])
    pos = [{c: i for i, c in enumerate(b)} for b in basis]
    divs = {}
    for n in range(1, upto + 2):
        entries = {}
        for j, c in enumerate(basis[n]):
            for i in range(n + 1):
                d = _nerve_face(C, c, i)
                if d in pos[n - 1]:
                    key = (pos[n - 1][d], j)
                    entries[key] = entries.get(key, 0) + (-1) ** i
        divs[n] = dense_smith(len(basis[n - 1]), len(basis[n]), entries)
    out = []
    for n in range(upto + 1):
        rank_out = len(divs[n]) if n else 0
        betti = len(basis[n]) - rank_out - len(divs[n + 1])
        out.append((betti, tuple(d for d in divs[n + 1] if d > 1)))
    return out


def sset_homology(X, upto):
    """Homology of a TruncSSet from its face tables, through sympy."""
    nd = [[s for s in range(X.size(n)) if not X.degenerate[n][s]] for n in range(upto + 2)]
    pos = [{s: i for i, s in enumerate(b)} for b in nd]
    divs = {}
    for n in range(1, upto + 2):
        entries = {}
        for j, s in enumerate(nd[n]):
            for i in range(n + 1):
                t = X.faces[n][i][s]
                if t in pos[n - 1]:
                    key = (pos[n - 1][t], j)
                    entries[key] = entries.get(key, 0) + (-1) ** i
        divs[n] = dense_smith(len(nd[n - 1]), len(nd[n]), entries)
    out = []
    for n in range(upto + 1):
        rank_out = len(divs[n]) if n else 0
        out.append((len(nd[n]) - rank_out - len(divs[n + 1]), tuple(d for d in divs[n + 1] if d > 1)))
    return out


def components_by_search(C):
    """Connected components of the underlying graph by depth-first search."""
    adj = {x: set() for x in C.objects}
    for m in C.morphisms:
        adj[C.src(m)].add(C.dst(m))
        adj[C.dst(m)].add(C.src(m))
    seen, comps = set(), []
    for x in C.objects:
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def brute_hammocks(R, x, y, width, height):
    """Reduced hammocks as label triples ``(pattern, rows, verticals)``, per height."""
    C = R.base
    marked = sorted(R.weq, key=str)
    levels = [set() for _ in range(height + 1)]
    for k in range(width + 1):
        if k == 0:
            if x == y:
                for n in range(height + 1):
                    levels[n].add(((), ((),) * (n + 1), ((),) * n))
            continue
        for first in (FWD, BWD):
            pattern = tuple(first * (-1) ** j for j in range(k))
            rows = []
            for arrows in product(C.morphisms, repeat=k):
                objs = [x]
                ok = True
                for d, a in zip(pattern, arrows):
                    if d == BWD and a not in R.weq:
                        ok = False
                        break
                    start, end = (C.src(a), C.dst(a)) if d == FWD else (C.dst(a), C.src(a))
                    if start != objs[-1]:
                        ok = False
                        break
                    objs.append(end)
                if ok and objs[-1] == y:
                    rows.append((arrows, objs))
            for n in range(height + 1):
                for stack in product(rows, repeat=n + 1):
                    if any(all(C.is_identity(r[0][j]) for r in stack) for j in range(k)):
                        continue
                    for verts in product(product(marked, repeat=k - 1), repeat=n):
                        if _commutes(C, pattern, stack, verts, x, y):
                            levels[n].add((pattern, tuple(r[0] for r in stack), verts))
    return levels


def _commutes(C, pattern, stack, verts, x, y):
    k = len(pattern)
    for i, vs in enumerate(verts):
        top, bot = stack[i], stack[i + 1]
        full = (C.id(x),) + vs + (C.id(y),)
        for j in range(1, k):
            if C.src(full[j]) != top[1][j] or C.dst(full[j]) != bot[1][j]:
                return False
        for j in range(k):
            a, b = top[0][j], bot[0][j]
            if pattern[j] == FWD:
                # a: col j -> col j+1
                if C.table[b, full[j]] != C.table[full[j + 1], a]:
                    return False
            else:
                # a: col j+1 -> col j
                if C.table[b, full[j + 1]] != C.table[full[j], a]:
                    return False
    return True
