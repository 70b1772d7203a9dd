"""Elementary divisors of sparse integer matrices.

Exact Python integers throughout.  Pivots are chosen by minimal absolute
value, which keeps entry growth in check on the boundary matrices met here
(mostly 0/+-1).
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


def _normalize(divisors: list[int]) -> list[int]:
    """Turn a list of positive diagonal entries into a divisibility chain."""
    d = sorted(divisors)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] // g * d[j]
    return sorted(d)


def elementary_divisors(entries: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, as a divisibility chain.

    ``entries`` maps ``(row, col)`` to value, or is an iterable of
    ``(row, col, value)`` triples (duplicates are summed).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    items = entries.items() if isinstance(entries, Mapping) else (((r, c), v) for r, c, v in entries)
    for (r, c), v in items:
        if not v:
            continue
        row = rows.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            cols.get(c, set()).discard(r)
    rows = {r: row for r, row in rows.items() if row}
    if len(rows) < len(cols):
        # eliminate along the short side: wide boundary matrices fill in badly otherwise
        t_rows: dict[int, dict[int, int]] = {}
        for r, row in rows.items():
            for c, v in row.items():
                t_rows.setdefault(c, {})[r] = v
        rows, cols = t_rows, {r: set(row) for r, row in rows.items()}
    divisors: list[int] = []

    def set_entry(r, c, v):
        row = rows[r]
        if v:
            row[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]

    def peel():
        # a unit entry alone in its column (or row) is a pivot whose row and
        # column clear without touching anything else
        col_work = [c for c, s in cols.items() if len(s) == 1]
        row_work = [r for r, row in rows.items() if len(row) == 1]
        while col_work or row_work:
            if col_work:
                c = col_work.pop()
                s = cols.get(c)
                if not s or len(s) != 1:
                    continue
                (r,) = s
                if abs(rows[r][c]) != 1:
                    continue
                for c2 in rows.pop(r):
                    s2 = cols[c2]
                    s2.discard(r)
                    if not s2:
                        del cols[c2]
                    elif len(s2) == 1:
                        col_work.append(c2)
            else:
                r = row_work.pop()
                row = rows.get(r)
                if not row or len(row) != 1:
                    continue
                ((c, v),) = row.items()
                if abs(v) != 1:
                    continue
                for r2 in cols.pop(c):
                    if r2 == r:
                        continue
                    other = rows[r2]
                    del other[c]
                    if not other:
                        del rows[r2]
                    elif len(other) == 1:
                        row_work.append(r2)
                del rows[r]
            divisors.append(1)

    def pick_pivot():
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                a = abs(v)
                if a == 1:
                    return r, c
                if best is None or a < best[0]:
                    best = (a, r, c)
        return best[1], best[2]

    peel()
    while rows:
        r, c = pick_pivot()
        while True:
            p = rows[r][c]
            for r2 in sorted(cols[c] - {r}):
                q = rows[r2][c] // p
                for c2, v in list(rows[r].items()):
                    set_entry(r2, c2, rows[r2].get(c2, 0) - q * v)
                if not rows[r2]:
                    del rows[r2]
            left = cols[c] - {r}
            if left:
                r = min(left, key=lambda r2: (abs(rows[r2][c]), r2))
                continue
            # column c now holds only the pivot, so column operations touch row r alone
            for c2 in sorted(set(rows[r]) - {c}):
                set_entry(r, c2, rows[r][c2] % p)
            left = set(rows[r]) - {c}
            if left:
                c = min(left, key=lambda c2: (abs(rows[r][c2]), c2))
                continue
            break
        divisors.append(abs(rows[r][c]))
        set_entry(r, c, 0)
        del rows[r]
    return _normalize(divisors)


def rank_and_torsion(entries) -> tuple[int, list[int]]:
    d = elementary_divisors(entries)
    return len(d), [x for x in d if x > 1]
