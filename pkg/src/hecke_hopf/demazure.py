"""Demazure-type representations of the Hecke-Hopf algebra.

Two carriers are supported:

* ``polynomial_action(n)``: Z[x_1..x_n] with S_n permuting variables and
  ``D_i = (1 - s_i) / (1 - x_i / x_{i+1})``;
* ``laurent_action(cartan)``: Z[t_1^+-1..t_n^+-1] with
  ``s_i(t_j) = t_i^(-a_ij) t_j`` and ``D_i = (1 - s_i) / (1 - t_i)``.

Both are handled uniformly: on a monomial ``t^e`` the generator ``s_i`` acts
as ``t^e -> t^e * T_i^(-k)`` for a root monomial ``T_i`` and an integer
``k = k_i(e)``, so ``D_i(t^e) = t^e (1 - T_i^-k) / (1 - T_i)`` is a finite
geometric sum.  The division route (``act_generator(..., route="divide")``)
computes the same thing by exact polynomial division and serves as an
independent check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterSystem, coxeter_from_cartan, named_system
from .freealg import NCElement
from .heckehopf import HHElement, nc_to_hh
from .report import VerificationReport, make_report
from .rings import Ring, RingElem, exact_divide

Exp = tuple[int, ...]
Poly = dict[Exp, int]


class DemazureError(Exception):
    pass


class WindowNotInvariant(DemazureError):
    pass


class CarrierMismatch(DemazureError):
    pass


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class ModuleAction:
    """Action of s_i and D_i on a Laurent or polynomial carrier."""

    def __init__(self, system: CoxeterSystem, carrier: str, nvars: int, cartan: Sequence[Sequence[int]] | None = None, prefix: str = "t"):
        self.system = system
        self.carrier = carrier
        self.nvars = nvars
        self.cartan = [list(r) for r in cartan] if cartan is not None else None
        self.ring = Ring([f"{prefix}{k + 1}" for k in range(nvars)], name=f"{carrier}[{prefix}]")
        n = system.rank
        self._roots: list[Exp] = []
        for i in range(n):
            r = [0] * nvars
            if carrier == "polynomial":
                r[i], r[i + 1] = 1, -1
            else:
                r[i] = 1
            self._roots.append(tuple(r))
        self._refl_cache: dict = {}
        self._mono_cache: dict = {}
        self._word_cache: dict = {}

    # --- monomial level ---------------------------------------------------

    def kval(self, i: int, e: Exp) -> int:
        """The integer k with s_i(t^e) = t^e * T_i^(-k)."""
        if self.carrier == "polynomial":
            return e[i] - e[i + 1]
        row = self.cartan[i]
        return sum(a * x for a, x in zip(row, e))

    def root(self, i: int) -> Exp:
        return self._roots[i]

    def reflect(self, i: int, e: Exp) -> Exp:
        k = self.kval(i, e)
        return tuple(x - k * r for x, r in zip(e, self._roots[i]))

    def s_poly(self, i: int, p: Mapping[Exp, int]) -> Poly:
        out: Poly = {}
        for e, c in p.items():
            _add(out, self.reflect(i, e), c)
        return out

    def d_poly(self, i: int, p: Mapping[Exp, int]) -> Poly:
        out: Poly = {}
        r = self._roots[i]
        for e, c in p.items():
            k = self.kval(i, e)
            if k > 0:
                # (1 - T^-k) / (1 - T) = -(T^-1 + ... + T^-k)
                for j in range(1, k + 1):
                    _add(out, tuple(x - j * y for x, y in zip(e, r)), -c)
            elif k < 0:
                # (1 - T^l) / (1 - T) = 1 + T + ... + T^(l-1), l = -k
                for j in range(-k):
                    _add(out, tuple(x + j * y for x, y in zip(e, r)), c)
        return out

    def group_poly(self, w: int, p: Mapping[Exp, int]) -> Poly:
        out = dict(p)
        for i in reversed(self.system.words[w]):
            out = self.s_poly(i, out)
        return out

    def _reflection_data(self, r: int) -> tuple[int, int]:
        """(u, i) with t_r = u s_i u^-1 and l(u s_i) > l(u), so D_t = u D_i u^-1."""
        hit = self._refl_cache.get(r)
        if hit is not None:
            return hit
        system = self.system
        t = system.reflections[r]
        for u in sorted(range(system.size), key=lambda w: system.length[w]):
            for i in range(system.rank):
                us = system.rmul[i][u]
                if system.length[us] > system.length[u] and system.mul(us, system.inv[u]) == t:
                    self._refl_cache[r] = (u, i)
                    return u, i
        raise DemazureError("reflection not conjugate to a simple one")

    def _dt_mono(self, r: int, e: Exp) -> Poly:
        key = (r, e)
        hit = self._mono_cache.get(key)
        if hit is None:
            u, i = self._reflection_data(r)
            if u == 0:
                hit = self.d_poly(i, {e: 1})
            else:
                hit = self.group_poly(u, self.d_poly(i, self.group_poly(self.system.inv[u], {e: 1})))
            self._mono_cache[key] = hit
        return hit

    def dt_poly(self, r: int, p: Mapping[Exp, int]) -> Poly:
        out: Poly = {}
        for e, c in p.items():
            for f, v in self._dt_mono(r, e).items():
                _add(out, f, c * v)
        return out

    def _word_mono(self, u: tuple[int, ...], e: Exp) -> Poly:
        """D_{u[0]} ... D_{u[-1]} applied to t^e (memoized on suffixes)."""
        if not u:
            return {e: 1}
        key = (u, e)
        hit = self._word_cache.get(key)
        if hit is None:
            hit = self.dt_poly(u[0], self._word_mono(u[1:], e))
            if len(self._word_cache) < 2_000_000:
                self._word_cache[key] = hit
        return hit

    def element_poly(self, x: HHElement, p: Mapping[Exp, int]) -> Poly:
        if x.system is not self.system:
            raise CarrierMismatch("element over a different Coxeter system")
        out: Poly = {}
        cache: dict = {}
        for (u, w), c in x.terms.items():
            if w not in cache:
                cache[w] = self.group_poly(w, p)
            for e, a in cache[w].items():
                for f, v in self._word_mono(u, e).items():
                    _add(out, f, c * a * v)
        return out

    def nc_poly(self, x: NCElement, p: Mapping[Exp, int]) -> Poly:
        """Apply a word combination in s_i (generator i) and D_i (generator rank + i)."""
        n = self.system.rank
        out: Poly = {}
        for word, c in x.terms.items():
            img = dict(p)
            for g in reversed(word):
                img = self.s_poly(g, img) if g < n else self.d_poly(g - n, img)
            for e, v in img.items():
                _add(out, e, c * v)
        return out

    def apply(self, x, p: Mapping[Exp, int]) -> Poly:
        if isinstance(x, HHElement):
            return self.element_poly(x, p)
        return self.nc_poly(x, p)

    # --- RingElem level ---------------------------------------------------

    def to_poly(self, p: RingElem) -> Poly:
        if p.ring != self.ring:
            raise CarrierMismatch(f"{p.ring.name} is not the carrier {self.ring.name}")
        return dict(p.terms)

    def from_poly(self, p: Mapping[Exp, int]) -> RingElem:
        return self.ring.from_terms(p)

    def monomial(self, e: Sequence[int]) -> RingElem:
        return self.ring.from_terms({tuple(e): 1})


def polynomial_action(n: int) -> ModuleAction:
    """Z[x_1..x_n] as a module over the algebra of S_n (type A_{n-1})."""
    if n < 2:
        raise DemazureError("need at least two variables")
    system = named_system(f"A{n - 1}")
    return ModuleAction(system, "polynomial", n, prefix="x")


def laurent_action(cartan: Sequence[Sequence[int]], system: CoxeterSystem | None = None) -> ModuleAction:
    """Laurent polynomials in t_1..t_n with the Cartan-matrix action."""
    cartan = [list(r) for r in cartan]
    if system is None:
        system = CoxeterSystem(cartan_matrix=cartan)
    elif [list(r) for r in system.m] != [list(r) for r in coxeter_from_cartan(cartan)]:
        raise CarrierMismatch("Cartan matrix does not match the Coxeter matrix of the system")
    return ModuleAction(system, "laurent", len(cartan), cartan=cartan, prefix="t")


def act_generator(action: ModuleAction, gen: str, i: int, p: RingElem, route: str = "monomial") -> RingElem:
    """Image of p under s_i or D_i.  ``route="divide"`` computes D_i(p) as the
    exact quotient (p - s_i p) / (1 - T_i)."""
    if not 0 <= i < action.system.rank:
        raise DemazureError(f"generator index {i} out of range")
    poly = action.to_poly(p)
    if gen == "s_i":
        return action.from_poly(action.s_poly(i, poly))
    if gen != "D_i":
        raise DemazureError(f"unknown generator {gen!r}")
    if route == "monomial":
        return action.from_poly(action.d_poly(i, poly))
    num = p - action.from_poly(action.s_poly(i, poly))
    den = action.ring.one - action.monomial(action.root(i))
    return exact_divide(num, den)


def act_element(action: ModuleAction, x, p: RingElem) -> RingElem:
    return action.from_poly(action.apply(x, action.to_poly(p)))


# --- windows and matrices ---------------------------------------------------


def degree_monomials(nvars: int, d: int) -> list[Exp]:
    """Exponent vectors of total degree d (non-negative), in lex-descending order."""
    out: list[Exp] = []

    def rec(prefix: list[int], left: int):
        if len(prefix) == nvars - 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k)

    if nvars == 0:
        return [()]
    rec([], d)
    return out


def saturate(action: ModuleAction, seeds: Iterable[Exp], cap: int = 20000) -> list[Exp]:
    """Smallest monomial set containing ``seeds`` and closed under the supports
    of every s_i and D_i image."""
    seen = set(seeds)
    frontier = list(seen)
    n = action.system.rank
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                for f in list(action.s_poly(i, {e: 1})) + list(action.d_poly(i, {e: 1})):
                    if f not in seen:
                        seen.add(f)
                        nxt.append(f)
        if len(seen) > cap:
            raise WindowNotInvariant(f"saturation exceeded {cap} monomials")
        frontier = nxt
    return sorted(seen)


def windows(action: ModuleAction, max_degree: int) -> list[tuple[int, list[Exp]]]:
    """Invariant windows: graded components for polynomials, saturated
    orbit closures of the monomials with |e|_1 = d for Laurent carriers."""
    out = []
    for d in range(max_degree + 1):
        if action.carrier == "polynomial":
            out.append((d, degree_monomials(action.nvars, d)))
        else:
            seeds = [e for e in _l1_sphere(action.nvars, d)]
            out.append((d, saturate(action, seeds)))
    return out


def _l1_sphere(nvars: int, d: int) -> list[Exp]:
    out = []
    for e in product(range(-d, d + 1), repeat=nvars):
        if sum(abs(x) for x in e) == d:
            out.append(e)
    return out


@dataclass
class GradedMatrix:
    degree: int
    basis: list[Exp]
    matrix: list[list[int]]

    def __mul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.basis != other.basis:
            raise WindowNotInvariant("matrices on different windows")
        n = len(self.basis)
        prod = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return GradedMatrix(self.degree, self.basis, prod)


def operator_matrix(action: ModuleAction, x, window: Sequence[Exp], degree: int = 0) -> GradedMatrix:
    """Matrix (columns = images of basis monomials) of x on an invariant window."""
    basis = list(window)
    index = {e: k for k, e in enumerate(basis)}
    n = len(basis)
    mat = [[0] * n for _ in range(n)]
    for col, e in enumerate(basis):
        for f, c in action.apply(x, {e: 1}).items():
            row = index.get(f)
            if row is None:
                raise WindowNotInvariant(f"image of {e} leaves the window at {f}")
            mat[row][col] = c
    return GradedMatrix(degree, basis, mat)


def verify_relations(
    action: ModuleAction,
    rels: Sequence[tuple[str, object]] | Sequence[object],
    degree_bound: int,
    check_name: str = "module_relations",
) -> VerificationReport:
    """Apply every relation to every monomial of every window up to the bound."""
    start = time.perf_counter()
    named = [r if isinstance(r, tuple) else (f"rel{k}", r) for k, r in enumerate(rels)]
    failures = []
    count = 0
    for d, window in windows(action, degree_bound):
        for e in window:
            for name, x in named:
                count += 1
                img = action.apply(x, {e: 1})
                if img:
                    failures.append({
                        "relation": name,
                        "monomial": list(e),
                        "image": str(action.from_poly(img)),
                    })
        if failures:
            break
    inst = f"{action.system.name} {action.carrier} deg<={degree_bound}"
    return make_report(check_name, inst, failures, start, applications=count)


def relations_as_operators(system: CoxeterSystem) -> list[tuple[str, NCElement]]:
    """Defining relations in generator form (their normal forms are all zero)."""
    from .heckehopf import defining_relations

    return defining_relations(system)


def check_normal_form_consistency(system: CoxeterSystem) -> bool:
    """Every defining relation evaluates to zero in the normal-form algebra."""
    return all(not nc_to_hh(system, r) for _, r in relations_as_operators(system))
