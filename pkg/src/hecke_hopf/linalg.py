"""Exact linear algebra over Z and Q on sparse vectors.

Vectors are dicts ``column -> coefficient``.  ``RowReducer`` performs
incremental Gaussian elimination over Q (optionally remembering how every
stored row was built from the inputs, which yields membership
certificates).  ``integer_kernel`` returns a Z-basis of the integer kernel
through unimodular column operations, and ``hnf`` puts an integer row basis
into Hermite normal form so reported bases are canonical.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Vector = Mapping[Hashable, object]


class RowReducer:
    """Incremental sparse row reduction over Q.

    Columns are compared through an integer rank assigned on first sight
    unless ``column_order`` is supplied; each stored row has its smallest
    column as pivot with coefficient 1.
    """

    def __init__(self, track: bool = False, column_order: Mapping[Hashable, int] | None = None):
        self.track = track
        self._order: dict[Hashable, int] = dict(column_order or {})
        self._fixed = column_order is not None
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self.combos: dict[int, dict[Hashable, Fraction]] = {}
        self._cols: list[Hashable] = [None] * len(self._order)
        for k, v in self._order.items():
            self._cols[v] = k

    def _col(self, key: Hashable) -> int:
        idx = self._order.get(key)
        if idx is None:
            if self._fixed:
                raise KeyError(f"column {key!r} not in the fixed order")
            idx = len(self._order)
            self._order[key] = idx
            self._cols.append(key)
        return idx

    def _to_row(self, vec: Vector) -> dict[int, Fraction]:
        return {self._col(k): Fraction(v) for k, v in vec.items() if v}

    def _reduce_row(self, row: dict[int, Fraction], combo: dict | None):
        heap = list(row)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if not v:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                continue
            for k, pv in prow.items():
                nv = row.get(k, 0) - v * pv
                if nv:
                    if k not in row:
                        heapq.heappush(heap, k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            if combo is not None:
                for lab, cv in self.combos[c].items():
                    nv = combo.get(lab, 0) - v * cv
                    if nv:
                        combo[lab] = nv
                    else:
                        combo.pop(lab, None)
        return row, combo

    def add(self, vec: Vector, label: Hashable = None) -> bool:
        """Insert a row; return True if it was independent of earlier rows."""
        row = self._to_row(vec)
        combo = {label: Fraction(1)} if self.track else None
        row, combo = self._reduce_row(row, combo)
        if not row:
            return False
        pc = min(row)
        inv = 1 / row[pc]
        row = {k: v * inv for k, v in row.items()}
        self.pivots[pc] = row
        if self.track:
            self.combos[pc] = {k: v * inv for k, v in combo.items()}
        return True

    def reduce(self, vec: Vector) -> tuple[dict[Hashable, Fraction], dict[Hashable, Fraction] | None]:
        """Remainder of ``vec`` and, if tracking, the combination subtracted."""
        row = self._to_row(vec)
        combo = {} if self.track else None
        row, combo = self._reduce_row(row, combo)
        rem = {self._cols[k]: v for k, v in row.items()}
        if combo is not None:
            combo = {k: -v for k, v in combo.items()}
        return rem, combo

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[0]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(vectors: Iterable[Vector]) -> int:
    r = RowReducer()
    for v in vectors:
        r.add(v)
    return r.rank


def solve_membership(
    target: Vector, generators: Sequence[Vector]
) -> dict[int, Fraction] | None:
    """Rational combination of ``generators`` equal to ``target`` or None."""
    r = RowReducer(track=True)
    for k, g in enumerate(generators):
        r.add(g, label=k)
    rem, combo = r.reduce(target)
    if rem:
        return None
    return {k: v for k, v in combo.items() if v}


def integer_kernel(rows: Sequence[Mapping[int, int]], ncols: int) -> list[list[int]]:
    """Z-basis of ``{x in Z^ncols : row . x = 0 for every row}``.

    Column operations are applied to the constraint rows one at a time while
    a unimodular matrix ``u`` (stored by columns) records them; after every
    row is processed, the untouched columns of ``u`` span the kernel.
    """
    # u[k] is column k of the unimodular transform; the current constraint
    # value of column k for a row r is r . u[k]
    u: list[dict[int, int]] = [{k: 1} for k in range(ncols)]
    free = list(range(ncols))
    for row in rows:
        if not row:
            continue
        vals = {}
        for k in free:
            s = 0
            for idx, a in u[k].items():
                b = row.get(idx)
                if b:
                    s += a * b
            if s:
                vals[k] = s
        if not vals:
            continue
        # Euclid on the values: combine columns until a single nonzero remains
        active = sorted(vals, key=lambda k: (abs(vals[k]), k))
        while len(active) > 1:
            p = active[0]
            pv = vals[p]
            nxt = [p]
            for k in active[1:]:
                q = vals[k] // pv
                if q:
                    _axpy(u[k], u[p], -q)
                    vals[k] -= q * pv
                if vals[k]:
                    nxt.append(k)
                else:
                    del vals[k]
            active = sorted(nxt, key=lambda k: (abs(vals[k]), k))
        free.remove(active[0])
    basis = []
    for k in free:
        vec = [0] * ncols
        for idx, a in u[k].items():
            vec[idx] = a
        basis.append(vec)
    return hnf(basis)


def _axpy(y: dict[int, int], x: dict[int, int], a: int) -> None:
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form (nonzero rows only).

    Pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)``, and pivot columns increase down the rows.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    out: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        nz = [r for r in mat if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in mat if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            new = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        mat = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        pc = next(k for k, a in enumerate(out[i]) if a)
        for j in range(i):
            q = out[j][pc] // out[i][pc]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def rational_kernel(rows: Sequence[Mapping[int, object]], ncols: int) -> list[dict[int, Fraction]]:
    """Q-basis of the kernel, one vector per free column (RREF convention)."""
    red = RowReducer(column_order={k: k for k in range(ncols)})
    for r in rows:
        red.add(r)
    # back-substitute to full RREF
    piv = sorted(red.pivots)
    rref: dict[int, dict[int, Fraction]] = {}
    for c in reversed(piv):
        row = dict(red.pivots[c])
        for k in list(row):
            if k != c and k in rref:
                v = row.pop(k)
                for kk, vv in rref[k].items():
                    if kk == k:
                        continue
                    nv = row.get(kk, 0) - v * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
        rref[c] = row
    basis = []
    pivset = set(piv)
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: Fraction(1)}
        for c, row in rref.items():
            v = row.get(f)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def primitive(vec: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    from math import gcd, lcm

    den = 1
    for v in vec.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {k: int(Fraction(v) * den) for k, v in vec.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {k: v // g for k, v in ints.items()} if g else {}


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero=0) -> list[list]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y:
                    oi[j] = oi[j] + x * y
    return out
