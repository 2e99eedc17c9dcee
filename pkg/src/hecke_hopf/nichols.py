"""Graded quadratic algebras D_0(W) on reflections and the operators partial_{g,h}.

For simply-laced W the algebra D_0(W) is generated by d_s (s a reflection)
with d_s^2 = 0, d_s d_s' = d_s' d_s for compatible pairs with m = 2 and
d_s d_s' = d_{ss's} d_s + d_s' d_{ss's} for compatible pairs with m = 3.
A pair (s, s') is compatible when s = w s_i w^-1, s' = w s_j w^-1 with
l(w s_i) = l(w s_j) = l(w) + 1.  Graded dimensions are computed by exact
elimination in each degree.

The second half checks the relations of the universal bialgebra B(W) in the
concrete representation d_{g,h} -> partial_{g,h} on the D-part.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coxeter import CoxeterSystem
from .freealg import NCElement, all_words
from .heckehopf import HHElement, all_partials, partial_derivative
from .linalg import RowReducer, hnf
from .report import VerificationReport, make_report
from .rings import ZZ


class NicholsError(Exception):
    pass


class NotSimplyLaced(NicholsError):
    pass


class DegreeBoundExceeded(NicholsError):
    pass


DEFAULT_DEGREE_BOUND = 6


@dataclass
class QuadraticPresentation:
    """Generators are letters 0..n-1; ``letters[k]`` is the reflection index of letter k."""

    system: CoxeterSystem
    letters: list[int]
    relations: list[NCElement]
    compatible: dict = field(default_factory=dict)
    incompatible_commuting: list = field(default_factory=list)

    @property
    def ngens(self) -> int:
        return len(self.letters)


def _order(system: CoxeterSystem, w: int) -> int:
    k, x = 1, w
    while x != 0:
        x = system.mul(x, w)
        k += 1
    return k


def compatible_pairs(system: CoxeterSystem) -> set[tuple[int, int]]:
    """Ordered pairs (r, r') of reflection indices that are compatible."""
    pairs = set()
    for w in range(system.size):
        lw = system.length[w]
        up = [i for i in range(system.rank) if system.length[system.rmul[i][w]] == lw + 1]
        winv = system.inv[w]
        for i in up:
            for j in up:
                if i == j:
                    continue
                s = system.mul(system.mul(w, system.simple(i)), winv)
                t = system.mul(system.mul(w, system.simple(j)), winv)
                pairs.add((system.refl_index[s], system.refl_index[t]))
    return pairs


def _canonical(x: NCElement) -> tuple:
    items = sorted(x.terms.items())
    if items and items[0][1] < 0:
        items = [(w, -c) for w, c in items]
    return tuple(items)


def d0_relations(system: CoxeterSystem, order: Sequence[int] | None = None) -> QuadraticPresentation:
    """The quadratic relations of D_0(W); ``order`` lists reflection indices
    in the order they become letters 0, 1, ... (default: index order)."""
    for row in system.m:
        for v in row:
            if v not in (1, 2, 3):
                raise NotSimplyLaced(f"m_ij = {v} is not allowed")
    nr = system.nrefl
    letters = list(range(nr)) if order is None else list(order)
    if sorted(letters) != list(range(nr)):
        raise NicholsError("order must be a permutation of the reflection indices")
    letter_of = {r: k for k, r in enumerate(letters)}
    names = [f"d{system.element_name(system.reflections[r])}" for r in letters]

    def word(*rs):
        return tuple(letter_of[r] for r in rs)

    def elem(terms):
        return NCElement(terms, ZZ, nr, names)

    rels: list[NCElement] = []
    seen = set()

    def emit(x: NCElement):
        key = _canonical(x)
        if key not in seen:
            seen.add(key)
            rels.append(x)

    for r in letters:
        emit(elem({word(r, r): 1}))
    pairs = compatible_pairs(system)
    compat: dict[int, list] = {2: [], 3: []}
    for r, r2 in sorted(pairs):
        s, t = system.reflections[r], system.reflections[r2]
        m = _order(system, system.mul(s, t))
        compat.setdefault(m, []).append((r, r2))
        if m == 2:
            emit(elem({word(r, r2): 1, word(r2, r): -1}))
        elif m == 3:
            u = system.refl_index[system.mul(system.mul(s, t), s)]
            emit(elem({word(r, r2): 1, word(u, r): -1, word(r2, u): -1}))
        else:
            raise NotSimplyLaced(f"compatible pair with m = {m}")
    incompatible = []
    for r in range(nr):
        for r2 in range(r + 1, nr):
            s, t = system.reflections[r], system.reflections[r2]
            if system.mul(s, t) == system.mul(t, s) and (r, r2) not in pairs and (r2, r) not in pairs:
                incompatible.append((r, r2))
    return QuadraticPresentation(system, letters, rels, compat, incompatible)


def _degree_span(pres: QuadraticPresentation, d: int) -> list[dict]:
    """All u * r * v of total degree d, as sparse vectors over words."""
    vecs = []
    n = pres.ngens
    for rel in pres.relations:
        degs = {len(w) for w in rel.terms}
        if len(degs) != 1:
            raise NicholsError("relations must be homogeneous")
        k = degs.pop()
        if k > d:
            continue
        for left_len in range(d - k + 1):
            for u in all_words(n, left_len):
                for v in all_words(n, d - k - left_len):
                    vecs.append({u + w + v: c for w, c in rel.terms.items()})
    return vecs


def graded_dimension(pres: QuadraticPresentation, d: int, bound: int = DEFAULT_DEGREE_BOUND, method: str = "rational") -> int:
    """dim of the degree-d part of T(V)/(relations): n^d minus the rank of
    the degree-d slice of the ideal.  ``method`` selects rational row
    reduction or the integer Hermite normal form."""
    if d < 0:
        raise NicholsError("degree must be nonnegative")
    if d > bound:
        raise DegreeBoundExceeded(f"degree {d} exceeds the bound {bound}")
    total = pres.ngens ** d
    vecs = _degree_span(pres, d)
    if not vecs:
        return total
    if method == "rational":
        red = RowReducer()
        for v in vecs:
            red.add(v)
        rank = red.rank
    elif method == "hnf":
        cols = {w: k for k, w in enumerate(all_words(pres.ngens, d))}
        rows = []
        for v in vecs:
            row = [0] * total
            for w, c in v.items():
                row[cols[w]] = c
            rows.append(row)
        rank = len(hnf(rows))
    else:
        raise NicholsError(f"unknown method {method!r}")
    return total - rank


def hilbert_series(pres: QuadraticPresentation, max_degree: int, bound: int = DEFAULT_DEGREE_BOUND, method: str = "rational") -> list[int]:
    """Graded dimensions in degrees 0..max_degree."""
    return [graded_dimension(pres, d, bound, method) for d in range(max_degree + 1)]


# --- operator relations via partial_{g,h} ---------------------------------------


def _alternating(i: int, j: int, length: int) -> tuple[int, ...]:
    return tuple(i if k % 2 == 0 else j for k in range(length))


def operator_relation_failures(system: CoxeterSystem, x: HHElement, all_pairs: bool | None = None) -> list[dict]:
    """Relations of B(W) evaluated on x through d_{g,h} = partial_{g,h}.

    * composition: partial_{gh,w} = sum_{w1 w2 = w} partial_{g,w1} o partial_{h,w2}
    * d_{s_i,1} d_{s_i,s_i} + d_{s_i,s_i} d_{s_i,1} = 0
    * d_{s_i,1} d_{g,g} = d_{g,g} d_{s_i',1} for g = s_j s_i ... (m_ij - 1 letters),
      s_i g = g s_i', with d_{g,g} the product of d_{s,s} along the word
    * Bruhat support: partial_{g,h}(x) != 0 only if h <= g
    """
    failures: list[dict] = []
    size = system.size
    if all_pairs is None:
        all_pairs = size <= 24
    simple = [system.simple(i) for i in range(system.rank)]
    partials = {g: all_partials(g, x) for g in range(size)}
    for g, parts in partials.items():
        for h in parts:
            if not system.bruhat_leq(h, g):
                failures.append({"identity": "bruhat support", "g": g, "h": h})
    outer = range(size) if all_pairs else simple
    for g in outer:
        for h in range(size):
            acc: dict[int, HHElement] = {}
            for w2, y in partials[h].items():
                for w1, z in all_partials(g, y).items():
                    w = system.mul(w1, w2)
                    acc[w] = acc[w] + z if w in acc else z
            acc = {w: v for w, v in acc.items() if v}
            if acc != partials[system.mul(g, h)]:
                failures.append({"identity": "composition", "g": g, "h": h})

    def dd(g, h, y):
        return partial_derivative(g, h, y)

    for i in range(system.rank):
        s = simple[i]
        val = dd(s, 0, dd(s, s, x)) + dd(s, s, dd(s, 0, x))
        if val:
            failures.append({"identity": "anticommutation", "i": i})
    for i in range(system.rank):
        for j in range(system.rank):
            if i == j:
                continue
            m = system.m[i][j]
            word = _alternating(j, i, m - 1)
            g = system.from_word(word)
            si = system.simple(i)
            ip = system.mul(system.mul(system.inv[g], si), g)
            if ip not in simple:
                failures.append({"identity": "linear braid setup", "i": i, "j": j})
                continue
            # right-hand operators act first: apply the word's d_{s,s} right to left
            def along(y):
                for k in reversed(word):
                    sk = system.simple(k)
                    y = dd(sk, sk, y)
                return y

            lhs = dd(si, 0, along(x))
            rhs = along(dd(ip, 0, x))
            if lhs != rhs:
                failures.append({"identity": "linear braid", "i": i, "j": j})
            # the factored d_{g,g} must agree with partial_{g,g} itself
            if along(x) != dd(g, g, x):
                failures.append({"identity": "diagonal factorization", "i": i, "j": j})
    return failures


def check_nichols_operator_relations(system: CoxeterSystem, samples: Iterable[HHElement], instance: str | None = None) -> VerificationReport:
    start = time.perf_counter()
    failures = []
    count = 0
    for x in samples:
        count += 1
        for f in operator_relation_failures(system, x):
            failures.append(dict(f, sample=str(x)))
    return make_report("nichols_operator_relations", instance or system.name, failures, start, samples=count)
