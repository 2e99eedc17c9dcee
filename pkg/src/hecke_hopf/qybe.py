"""Quadratic braidings and the Psi_U construction.

A quadratic braiding is a map Psi on V (x) V satisfying the braid equation on
V^{(x)3} and Psi^2 = (1 - q) Psi + q.  An H(S_3)-structure is a pair (s, D) on
U (x) U whose two-slot placements on U^{(x)3} satisfy the defining relations
of H(S_3).  Given both, ``psi_u`` builds a new quadratic braiding on U (x) V.

Matrices are sparse and exact: ``ExactMatrix`` keeps ``{(row, col): c}`` with
coefficients in a ``Ring`` (plain ints for ZZ).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .freealg import NCElement
from .rings import ZZ, Ring, RingMismatch, coerce_scalar, laurent_ring


class QYBEError(Exception):
    pass


class ShapeMismatch(QYBEError):
    pass


class ExactMatrix:
    """Sparse matrix with exact entries.  ``entries[(i, j)]`` is row i, column j."""

    __slots__ = ("nrows", "ncols", "ring", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None, ring: Ring = ZZ):
        self.nrows, self.ncols, self.ring = nrows, ncols, ring
        clean = {}
        for (i, j), c in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeMismatch(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            c = coerce_scalar(ring, c)
            if c:
                clean[(i, j)] = clean.get((i, j), 0) + c
        self.entries = {k: v for k, v in clean.items() if v}

    @classmethod
    def identity(cls, n: int, ring: Ring = ZZ) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    @classmethod
    def from_rows(cls, rows, ring: Ring = ZZ) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(i, j): c for i, r in enumerate(rows) for j, c in enumerate(r) if c}, ring)

    @classmethod
    def from_columns(cls, n: int, column: Callable[[int], Mapping[int, object]], ring: Ring = ZZ) -> "ExactMatrix":
        """Square matrix whose column j is the vector ``column(j)``."""
        return cls(n, n, {(i, j): c for j in range(n) for i, c in column(j).items()}, ring)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def change_ring(self, ring: Ring) -> "ExactMatrix":
        if ring == self.ring:
            return self
        if self.ring != ZZ:
            raise RingMismatch(f"cannot move a {self.ring.name} matrix to {ring.name}")
        return ExactMatrix(self.nrows, self.ncols, self.entries, ring)

    def _same(self, other: "ExactMatrix") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        out = dict(self.entries)
        for k, c in other.entries.items():
            out[k] = out.get(k, 0) + c
        return ExactMatrix(self.nrows, self.ncols, out, self.ring)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.nrows, self.ncols, {k: -c for k, c in self.entries.items()}, self.ring)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = coerce_scalar(self.ring, c)
        return ExactMatrix(self.nrows, self.ncols, {k: v * c for k, v in self.entries.items()}, self.ring)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (k, j), c in other.entries.items():
            by_row.setdefault(k, []).append((j, c))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return ExactMatrix(self.nrows, other.ncols, out, self.ring)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same(other)
        out = {}
        for (i, j), a in self.entries.items():
            for (k, l), b in other.entries.items():
                out[(i * other.nrows + k, j * other.ncols + l)] = a * b
        return ExactMatrix(self.nrows * other.nrows, self.ncols * other.ncols, out, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def column(self, j: int) -> dict[int, object]:
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def first_difference(self, other: "ExactMatrix"):
        """(row, col, self entry, other entry) of the first differing position, or None."""
        for k in sorted(set(self.entries) | set(other.entries)):
            a, b = self.entries.get(k, 0), other.entries.get(k, 0)
            if a != b:
                return (k[0], k[1], str(a), str(b))
        return None

    def to_rows(self) -> list[list[str]]:
        """Row-major array of coefficient strings."""
        return [[str(self.entries.get((i, j), 0)) for j in range(self.ncols)] for i in range(self.nrows)]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)}, {self.ring.name})"


def permutation_matrix(dims: tuple[int, ...], perm: tuple[int, ...], ring: Ring = ZZ) -> ExactMatrix:
    """The map sending e_{a_0} (x) ... (x) e_{a_{k-1}} to the tensor whose slot t holds a_{perm[t]}."""
    n = 1
    for d in dims:
        n *= d
    out_dims = tuple(dims[p] for p in perm)
    entries = {}
    for col in range(n):
        idx = _unravel(col, dims)
        out = tuple(idx[p] for p in perm)
        entries[(_ravel(out, out_dims), col)] = 1
    return ExactMatrix(n, n, entries, ring)


def _unravel(k: int, dims: tuple[int, ...]) -> tuple[int, ...]:
    idx = []
    for d in reversed(dims):
        idx.append(k % d)
        k //= d
    return tuple(reversed(idx))


def _ravel(idx: tuple[int, ...], dims: tuple[int, ...]) -> int:
    k = 0
    for a, d in zip(idx, dims):
        k = k * d + a
    return k


# --- braidings ----------------------------------------------------------------


@dataclass
class BraidingCandidate:
    dim: int
    psi: ExactMatrix
    ring: Ring = ZZ

    def __post_init__(self):
        if self.psi.shape != (self.dim ** 2, self.dim ** 2):
            raise ShapeMismatch(f"Psi must be {self.dim ** 2}x{self.dim ** 2}, got {self.psi.shape}")
        self.psi = self.psi.change_ring(self.ring)


@dataclass
class HS3Structure:
    dim: int
    s_mat: ExactMatrix
    d_mat: ExactMatrix
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        for mat in (self.s_mat, self.d_mat):
            if mat.shape != (self.dim ** 2, self.dim ** 2):
                raise ShapeMismatch(f"structure maps must be {self.dim ** 2}x{self.dim ** 2}")


def swap_braiding(dim: int, ring: Ring = ZZ) -> BraidingCandidate:
    """The flip e_i (x) e_j -> e_j (x) e_i (a quadratic braiding at q = 1)."""
    return BraidingCandidate(dim, permutation_matrix((dim, dim), (1, 0), ring), ring)


def hecke_braiding(dim: int = 2, ring: Ring | None = None, q=None) -> tuple[BraidingCandidate, object]:
    """Standard Hecke R-matrix with eigenvalues 1 and -q.

    Convention: e_i e_i -> e_i e_i; for i < j, e_i e_j -> e_j e_i and
    e_j e_i -> q e_i e_j + (1 - q) e_j e_i.  Returns (candidate, q); the
    convention is validated by ``check_quadratic_braiding``.
    """
    if ring is None:
        ring = laurent_ring("q")
    if q is None:
        q = ring.gen("q")
    q = coerce_scalar(ring, q)
    entries = {}
    for i in range(dim):
        for j in range(dim):
            col = i * dim + j
            if i == j:
                entries[(col, col)] = 1
            elif i < j:
                entries[(j * dim + i, col)] = 1
            else:
                entries[(j * dim + i, col)] = q
                entries[(col, col)] = 1 - q
    return BraidingCandidate(dim, ExactMatrix(dim * dim, dim * dim, entries, ring), ring), q


def _slots(mat: ExactMatrix, dim: int, ring: Ring) -> tuple[ExactMatrix, ExactMatrix]:
    eye = ExactMatrix.identity(dim, ring)
    mat = mat.change_ring(ring)
    return mat.kron(eye), eye.kron(mat)


def check_quadratic_braiding(c: BraidingCandidate, q):
    """Braid equation on V^{(x)3} and Psi^2 = (1 - q) Psi + q, exactly."""
    from .report import make_report

    start = time.perf_counter()
    q = coerce_scalar(c.ring, q)
    psi = c.psi
    failures = []
    eye2 = ExactMatrix.identity(c.dim ** 2, c.ring)
    quad = psi.scale(1 - q) + eye2.scale(q)
    sq = psi @ psi
    if sq != quad:
        failures.append({"equation": "quadratic", "entry": sq.first_difference(quad)})
    p1, p2 = _slots(psi, c.dim, c.ring)
    lhs, rhs = p1 @ p2 @ p1, p2 @ p1 @ p2
    if lhs != rhs:
        failures.append({"equation": "braid", "entry": lhs.first_difference(rhs)})
    return make_report("quadratic_braiding", f"dim={c.dim} q={q}", failures, start)


# --- H(S_3)-structures ----------------------------------------------------------


def _box_index(k: int, a: int, b: int) -> int:
    return a * (k + 1) + b


def demazure_two_variable(a: int, b: int) -> dict[tuple[int, int], int]:
    """Demazure operator (1 - s)/(1 - x1/x2) on x1^a x2^b, as {(a', b'): c}.

    For a > b the image is -sum x1^(b+i) x2^(b+1+j) over i + j = a - b - 1; for
    a < b it is +sum x1^(a+i) x2^(a+1+j) over i + j = b - a - 1; 0 when a = b.
    """
    if a > b:
        return {(b + i, a - i): -1 for i in range(a - b)}
    if a < b:
        return {(a + i, b - i): 1 for i in range(b - a)}
    return {}


def demazure_hs3(k: int) -> HS3Structure:
    """(s, D) on U (x) U for U = span{1, x, ..., x^k}.

    U (x) U is identified with span{x1^a x2^b : 0 <= a, b <= k}; s swaps the
    variables and D is the Demazure operator.  The box is D-invariant (both
    exponents of every image term stay between min(a, b) and max(a, b)),
    which is re-checked here and recorded in ``details``.
    """
    if k < 0:
        raise QYBEError("k must be nonnegative")
    n = k + 1
    s_entries, d_entries = {}, {}
    invariant = True
    for a in range(n):
        for b in range(n):
            col = _box_index(k, a, b)
            s_entries[(_box_index(k, b, a), col)] = 1
            for (a2, b2), c in demazure_two_variable(a, b).items():
                if not (0 <= a2 <= k and 0 <= b2 <= k):
                    invariant = False
                    continue
                d_entries[(_box_index(k, a2, b2), col)] = c
    if not invariant:
        raise QYBEError(f"the exponent box for k={k} is not D-invariant")
    return HS3Structure(
        n,
        ExactMatrix(n * n, n * n, s_entries),
        ExactMatrix(n * n, n * n, d_entries),
        {"carrier": f"x1^a x2^b, 0 <= a, b <= {k}", "d_invariant": invariant},
    )


def _hs3_generators(h: HS3Structure) -> list[ExactMatrix]:
    """[s1, s2, D1, D2] on U^{(x)3}, in the generator order used by the S_3 presentation."""
    s1, s2 = _slots(h.s_mat, h.dim, ZZ)
    d1, d2 = _slots(h.d_mat, h.dim, ZZ)
    return [s1, s2, d1, d2]


def evaluate_word_combination(x: NCElement, gens: list[ExactMatrix], size: int) -> ExactMatrix:
    """Sum of c * gens[w0] @ gens[w1] @ ... over the terms of x."""
    ring = gens[0].ring if gens else ZZ
    out = ExactMatrix(size, size, {}, ring)
    for w, c in x.terms.items():
        term = ExactMatrix.identity(size, ring)
        for g in w:
            term = term @ gens[g]
        out = out + term.scale(c)
    return out


def check_hs3_structure(h: HS3Structure):
    """Rank-one relations on U (x) U, then every relation of H(S_3) plus the
    cubic relation on U^{(x)3}, as exact matrix identities."""
    from .coxeter import named_system
    from .heckehopf import defining_relations, simply_laced_relations
    from .report import make_report

    start = time.perf_counter()
    n2 = h.dim ** 2
    s, d = h.s_mat, h.d_mat
    eye = ExactMatrix.identity(n2)
    failures = []
    for name, lhs, rhs in (
        ("s^2 = 1", s @ s, eye),
        ("D^2 = D", d @ d, d),
        ("sD + Ds = s - 1", s @ d + d @ s, s - eye),
    ):
        if lhs != rhs:
            failures.append({"relation": name, "entry": lhs.first_difference(rhs)})
    if not failures:
        system = named_system("A2")
        gens = _hs3_generators(h)
        size = h.dim ** 3
        for name, rel in defining_relations(system) + simply_laced_relations(system):
            val = evaluate_word_combination(rel, gens, size)
            if val.entries:
                failures.append({"relation": name, "entry": val.first_difference(ExactMatrix(size, size))})
    return make_report("hs3_structure", f"dim U={h.dim}", failures, start)


# --- the Psi_U construction ---------------------------------------------------------


def tau23(du: int, dv: int, ring: Ring = ZZ) -> ExactMatrix:
    """(U (x) V) (x) (U (x) V) -> (U (x) U) (x) (V (x) V)."""
    return permutation_matrix((du, dv, du, dv), (0, 2, 1, 3), ring)


def psi_u(h: HS3Structure, c: BraidingCandidate, q) -> BraidingCandidate:
    """tau23^-1 (s (x) Psi + (1 - q) D (x) Id) tau23 on (U (x) V)^{(x)2}."""
    if hasattr(q, "ring") and q.ring != c.ring:
        raise RingMismatch(f"q lives in {q.ring.name}, the braiding in {c.ring.name}")
    ring = c.ring
    q = coerce_scalar(ring, q)
    du, dv = h.dim, c.dim
    s = h.s_mat.change_ring(ring)
    d = h.d_mat.change_ring(ring)
    core = s.kron(c.psi) + d.kron(ExactMatrix.identity(dv * dv, ring)).scale(1 - q)
    t = tau23(du, dv, ring)
    t_inv = permutation_matrix((du, du, dv, dv), (0, 2, 1, 3), ring)
    return BraidingCandidate(du * dv, t_inv @ core @ t, ring)
