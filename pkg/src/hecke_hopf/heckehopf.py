"""Exact arithmetic in the Hecke-Hopf algebra of a finite Coxeter group.

Elements are stored in the normal form ``sum c * D_{t1} ... D_{tk} * w``
where ``t1 ... tk`` is a square-free word of reflections (indices into
``system.reflections``) and ``w`` is a group element id.  The only rewriting
rule needed is how a group element moves right past a reflection idempotent::

    g D_t = chi D_{t'} g + sigma (g - t' g),     t' = g t g^-1,

with ``chi = +1`` iff ``l(g t) > l(g)`` and ``sigma = (1 - chi) / 2``.  The
result of pushing ``g`` through a whole D-word is memoized per system.

On top of the product this module provides the Hopf structure, the bar and
theta symmetries, the W-action on the D-part, the s-derivations, the operators
``partial_{g,h}``, the rank-2 relation families, the Hecke embedding and a
bounded-degree ideal membership solver.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .coxeter import CoxeterSystem, GroupElement, dihedral_dk
from .freealg import Mismatch, NCElement, concat_square_free, square_free, square_free_words, word_key
from .linalg import RowReducer, integer_kernel
from .report import FAIL, PASS, VerificationReport, make_report
from .rings import QQ as _QQ
from .rings import ZZ, Ring, coerce_scalar

DWord = tuple[int, ...]
Key = tuple[DWord, int]


class HeckeHopfError(Exception):
    pass


class InvalidGenerator(HeckeHopfError):
    pass


class NotInDPart(HeckeHopfError):
    pass


class BadIndices(HeckeHopfError):
    pass


class OddMismatch(HeckeHopfError):
    pass


class OddConstraintViolation(HeckeHopfError):
    pass


class DegreeBoundExceeded(HeckeHopfError):
    pass


# --- the push table ----------------------------------------------------------


def _cache(system: CoxeterSystem, name: str) -> dict:
    store = system.__dict__.setdefault("_hh_caches", {})
    return store.setdefault(name, {})


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def push(system: CoxeterSystem, g: int, word: DWord) -> dict[Key, int]:
    """Normal form of ``g * D_word`` as ``{(dword, group): int}``."""
    cache = _cache(system, "push")
    hit = cache.get((g, word))
    if hit is not None:
        return hit
    if not word:
        res = {((), g): 1}
    else:
        t, rest = word[0], word[1:]
        t2 = system.conj[g][t]
        tail = push(system, g, rest)
        res: dict[Key, int] = {}
        if system.chi[g][t] == 1:
            for (v, h), c in tail.items():
                _add(res, (concat_square_free((t2,), v), h), c)
        else:
            for (v, h), c in tail.items():
                _add(res, (concat_square_free((t2,), v), h), -c)
                _add(res, (v, h), c)
            tg = system.mul(system.reflections[t2], g)
            for (v, h), c in push(system, tg, rest).items():
                _add(res, (v, h), -c)
    cache[(g, word)] = res
    return res


def basis_mul(system: CoxeterSystem, a: Key, b: Key) -> dict[Key, int]:
    (u1, w1), (u2, w2) = a, b
    cache = _cache(system, "mul")
    hit = cache.get((a, b))
    if hit is not None:
        return hit
    out: dict[Key, int] = {}
    for (v, h), c in push(system, w1, u2).items():
        _add(out, (concat_square_free(u1, v), system.mul(h, w2)), c)
    if len(cache) < 500000:
        cache[(a, b)] = out
    return out


# --- elements ------------------------------------------------------------------


class HHElement:
    """Immutable element of the Hecke-Hopf algebra in normal form."""

    __slots__ = ("system", "ring", "terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[Key, object] | None = None, ring: Ring = ZZ):
        self.system = system
        self.ring = ring
        clean: dict[Key, object] = {}
        nr = system.nrefl
        for (u, w), c in (terms or {}).items():
            u = square_free(u)
            if any(not 0 <= t < nr for t in u) or not 0 <= w < system.size:
                raise InvalidGenerator(f"bad term ({u}, {w})")
            c = coerce_scalar(ring, c)
            if c:
                _add(clean, (u, w), c)
        self.terms = dict(sorted(clean.items(), key=lambda kv: (word_key(kv[0][0]), kv[0][1])))

    def _like(self, terms: Mapping[Key, object]) -> "HHElement":
        return HHElement(self.system, terms, self.ring)

    def _check(self, other: "HHElement") -> None:
        if other.system is not self.system:
            raise Mismatch("elements live over different Coxeter systems")
        if other.ring != self.ring:
            raise Mismatch(f"rings differ: {self.ring.name} vs {other.ring.name}")

    def _lift(self, other) -> "HHElement":
        if isinstance(other, HHElement):
            self._check(other)
            return other
        return self._like({((), 0): other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, HHElement):
            return hh_mul(self, other)
        c = coerce_scalar(self.ring, other)
        return self._like({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = coerce_scalar(self.ring, other)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        out = self._like({((), 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HHElement):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return other.system is self.system and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(u) for u, _ in self.terms), default=-1)

    def is_d_part(self) -> bool:
        return all(w == 0 for _, w in self.terms)

    def coefficient(self, dword: Sequence[int], w: int = 0):
        return self.terms.get((tuple(dword), w), 0)

    def group_components(self) -> dict[int, "HHElement"]:
        """``{w: x_w}`` with ``self = sum x_w * w`` and each x_w in the D-part."""
        parts: dict[int, dict] = {}
        for (u, w), c in self.terms.items():
            parts.setdefault(w, {})[(u, 0)] = c
        return {w: self._like(t) for w, t in parts.items()}

    def __repr__(self) -> str:
        return format_element(self)


def format_element(x: HHElement) -> str:
    if not x.terms:
        return "0"
    system = x.system
    parts = []
    for (u, w), c in x.terms.items():
        letters = [f"D[{system.element_name(system.reflections[t])}]" for t in u]
        if w != 0 or not letters:
            letters.append(system.element_name(w))
        parts.append(f"({c})*{'*'.join(letters)}")
    return " + ".join(parts)


def hh_mul(x: HHElement, y: HHElement) -> HHElement:
    x._check(y)
    out: dict[Key, object] = {}
    system = x.system
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            cd = c * d
            for k, v in basis_mul(system, a, b).items():
                _add(out, k, cd * v)
    return x._like(out)


def _d_mul(a: Mapping[DWord, object], b: Mapping[DWord, object]) -> dict[DWord, object]:
    """Product inside the D-part, where words simply concatenate."""
    out: dict[DWord, object] = {}
    for u, c in a.items():
        for v, d in b.items():
            _add(out, concat_square_free(u, v), c * d)
    return out


def _d_terms(x: HHElement) -> dict[DWord, object]:
    if not x.is_d_part():
        raise NotInDPart("element has a nontrivial group part")
    return {u: c for (u, _), c in x.terms.items()}


def _from_d_terms(x: HHElement, terms: Mapping[DWord, object]) -> HHElement:
    return x._like({(u, 0): c for u, c in terms.items()})


# --- generators -------------------------------------------------------------


def _group_id(system: CoxeterSystem, w) -> int:
    if isinstance(w, GroupElement):
        if w.system is not system:
            raise Mismatch("group element from another system")
        return w.id
    if isinstance(w, int):
        if not 0 <= w < system.size:
            raise InvalidGenerator(f"group element id {w} out of range")
        return w
    try:
        return system.from_word(w)
    except Exception as exc:
        raise InvalidGenerator(f"bad group element {w!r}") from exc


def reflection_index(system: CoxeterSystem, s) -> int:
    """Index into ``system.reflections`` of a reflection given as a group element or word."""
    g = _group_id(system, s)
    r = system.refl_index.get(g)
    if r is None:
        raise InvalidGenerator(f"{system.element_name(g)} is not a reflection")
    return r


class HHAlgebra:
    """Convenience constructors for elements over a fixed system and ring."""

    def __init__(self, system: CoxeterSystem, ring: Ring = ZZ):
        self.system = system
        self.ring = ring

    def element(self, terms: Mapping[Key, object] | None = None) -> HHElement:
        return HHElement(self.system, terms, self.ring)

    def zero(self) -> HHElement:
        return self.element()

    def one(self) -> HHElement:
        return self.element({((), 0): 1})

    def scalar(self, c) -> HHElement:
        return self.element({((), 0): c})

    def s(self, i: int) -> HHElement:
        if not 0 <= i < self.system.rank:
            raise InvalidGenerator(f"no generator s_{i}")
        return self.element({((), self.system.simple(i)): 1})

    def D(self, i: int) -> HHElement:
        if not 0 <= i < self.system.rank:
            raise InvalidGenerator(f"no generator D_{i}")
        return self.element({((self.system.simple_reflection_index(i),), 0): 1})

    def Ds(self, s) -> HHElement:
        return self.element({((reflection_index(self.system, s),), 0): 1})

    def Dr(self, r: int) -> HHElement:
        """D_t for the reflection with index ``r``."""
        if not 0 <= r < self.system.nrefl:
            raise InvalidGenerator(f"no reflection with index {r}")
        return self.element({((r,), 0): 1})

    def group(self, w) -> HHElement:
        return self.element({((), _group_id(self.system, w)): 1})

    def dword(self, refls: Sequence[int], w: int = 0, coeff=1) -> HHElement:
        return self.element({(tuple(refls), w): coeff})


def hh_from_generator(system: CoxeterSystem, kind: str, index, ring: Ring = ZZ) -> HHElement:
    alg = HHAlgebra(system, ring)
    if kind == "s_i":
        return alg.s(index)
    if kind == "D_i":
        return alg.D(index)
    if kind == "group element":
        return alg.group(index)
    if kind == "D_s":
        return alg.Ds(index)
    raise InvalidGenerator(f"unknown generator kind {kind!r}")


# --- tensors and the Hopf structure -----------------------------------------


class HHTensor:
    """Element of a tensor power of the algebra, keyed by tuples of basis keys."""

    __slots__ = ("system", "ring", "arity", "terms")

    def __init__(self, system: CoxeterSystem, arity: int, terms: Mapping[tuple[Key, ...], object] | None = None, ring: Ring = ZZ):
        self.system = system
        self.ring = ring
        self.arity = arity
        clean: dict = {}
        for k, c in (terms or {}).items():
            if len(k) != arity:
                raise Mismatch(f"tensor key of arity {len(k)} in arity {arity}")
            c = coerce_scalar(ring, c)
            if c:
                _add(clean, tuple(k), c)
        self.terms = clean

    def __add__(self, other: "HHTensor") -> "HHTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return HHTensor(self.system, self.arity, out, self.ring)

    def __neg__(self):
        return HHTensor(self.system, self.arity, {k: -c for k, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, HHTensor) and self.arity == other.arity and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __mul__(self, other: "HHTensor") -> "HHTensor":
        if self.arity != other.arity:
            raise Mismatch("tensor arities differ")
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                parts = [basis_mul(self.system, a, b) for a, b in zip(ka, kb)]
                _expand_product(out, parts, ca * cb)
        return HHTensor(self.system, self.arity, out, self.ring)

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{k}" for k, c in self.terms.items()) or "0"


def _expand_product(out: dict, parts: list[dict], coeff) -> None:
    combos = [((), coeff)]
    for p in parts:
        combos = [(ks + (k,), c * v) for ks, c in combos for k, v in p.items()]
    for ks, c in combos:
        _add(out, ks, c)


def tensor(*xs: HHElement) -> HHTensor:
    system, ring = xs[0].system, xs[0].ring
    out: dict = {}
    combos = [((), 1)]
    for x in xs:
        combos = [(ks + (k,), c * v) for ks, c in combos for k, v in x.terms.items()]
    for ks, c in combos:
        _add(out, ks, c)
    return HHTensor(system, len(xs), out, ring)


def _coproduct_basis(system: CoxeterSystem, key: Key) -> dict[tuple[Key, Key], int]:
    cache = _cache(system, "coproduct")
    hit = cache.get(key)
    if hit is not None:
        return hit
    u, w = key
    cur: dict[tuple[Key, Key], int] = {(((), 0), ((), 0)): 1}
    for t in u:
        g = system.reflections[t]
        nxt: dict = {}
        for (a, b), c in cur.items():
            # (a (x) b) * (D_t (x) 1 + t (x) D_t)
            for k, v in basis_mul(system, a, ((t,), 0)).items():
                _add(nxt, (k, b), c * v)
            left = basis_mul(system, a, ((), g))
            right = basis_mul(system, b, ((t,), 0))
            for k1, v1 in left.items():
                for k2, v2 in right.items():
                    _add(nxt, (k1, k2), c * v1 * v2)
        cur = nxt
    res: dict = {}
    for (a, b), c in cur.items():
        for k1, v1 in basis_mul(system, a, ((), w)).items():
            for k2, v2 in basis_mul(system, b, ((), w)).items():
                _add(res, (k1, k2), c * v1 * v2)
    cache[key] = res
    return res


def hh_coproduct(x: HHElement) -> HHTensor:
    out: dict = {}
    for key, c in x.terms.items():
        for k, v in _coproduct_basis(x.system, key).items():
            _add(out, k, c * v)
    return HHTensor(x.system, 2, out, x.ring)


def hh_counit(x: HHElement):
    total = coerce_scalar(x.ring, 0)
    for (u, _), c in x.terms.items():
        if not u:
            total = total + c
    return total


def _antipode_basis(system: CoxeterSystem, key: Key) -> dict[Key, int]:
    cache = _cache(system, "antipode")
    hit = cache.get(key)
    if hit is not None:
        return hit
    u, w = key
    # S(D_{t1} ... D_{tk} w) = w^-1 (-t_k D_{t_k}) ... (-t_1 D_{t_1})
    cur = {((), system.inv[w]): 1}
    for t in reversed(u):
        g = system.reflections[t]
        nxt: dict = {}
        for a, c in cur.items():
            for k, v in basis_mul(system, a, ((), g)).items():
                for k2, v2 in basis_mul(system, k, ((t,), 0)).items():
                    _add(nxt, k2, -c * v * v2)
        cur = nxt
    cache[key] = cur
    return cur


def hh_antipode(x: HHElement) -> HHElement:
    out: dict = {}
    for key, c in x.terms.items():
        for k, v in _antipode_basis(x.system, key).items():
            _add(out, k, c * v)
    return x._like(out)


def _basis_element(x: HHElement, key: Key) -> HHElement:
    return x._like({key: 1})


def tensor_apply(t: HHTensor, maps: Sequence[Callable[[HHElement], object] | None]) -> HHTensor:
    """Apply one map per tensor slot; a map returns an HHElement or HHTensor, None means identity."""
    sample = HHElement(t.system, None, t.ring)
    out: dict = {}
    for ks, c in t.terms.items():
        pieces: list[dict] = []
        for k, f in zip(ks, maps):
            if f is None:
                pieces.append({(k,): 1})
                continue
            img = f(_basis_element(sample, k))
            if isinstance(img, HHTensor):
                pieces.append(dict(img.terms))
            else:
                pieces.append({(kk,): v for kk, v in img.terms.items()})
        combos = [((), c)]
        for p in pieces:
            combos = [(a + b, cc * v) for a, cc in combos for b, v in p.items()]
        for a, cc in combos:
            _add(out, a, cc)
    arity = len(next(iter(out))) if out else sum(1 if f is None else 1 for f in maps)
    return HHTensor(t.system, arity, out, t.ring)


def tensor_multiply(t: HHTensor) -> HHElement:
    """The multiplication map applied to a tensor of arity 2."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for k, v in basis_mul(t.system, a, b).items():
            _add(out, k, c * v)
    return HHElement(t.system, out, t.ring)


def tensor_contract_counit(t: HHTensor, slot: int) -> HHElement:
    """Apply the counit in ``slot`` of an arity-2 tensor and drop that slot."""
    out: dict = {}
    for ks, c in t.terms.items():
        k = ks[slot]
        if not k[0]:
            _add(out, ks[1 - slot], c)
    return HHElement(t.system, out, t.ring)


def hopf_axiom_failures(x: HHElement) -> list[str]:
    """Names of the Hopf axioms that fail on ``x`` (empty list if all hold)."""
    bad = []
    d = hh_coproduct(x)
    left = tensor_apply(d, [hh_coproduct, None])
    right = tensor_apply(d, [None, hh_coproduct])
    if left != right:
        bad.append("coassociativity")
    if tensor_contract_counit(d, 0) != x:
        bad.append("left counit")
    if tensor_contract_counit(d, 1) != x:
        bad.append("right counit")
    unit = x._like({((), 0): hh_counit(x)})
    if tensor_multiply(tensor_apply(d, [hh_antipode, None])) != unit:
        bad.append("left antipode")
    if tensor_multiply(tensor_apply(d, [None, hh_antipode])) != unit:
        bad.append("right antipode")
    return bad


# --- symmetries ------------------------------------------------------------


def hh_bar(x: HHElement) -> HHElement:
    """Anti-involution fixing every s_i and every D_t."""
    system = x.system
    out: dict = {}
    for (u, w), c in x.terms.items():
        for k, v in push(system, system.inv[w], tuple(reversed(u))).items():
            _add(out, k, c * v)
    return x._like(out)


def hh_theta(x: HHElement) -> HHElement:
    """Involutive automorphism with w -> (-1)^l(w) w and D_t -> 1 - D_t."""
    system = x.system
    out: dict = {}
    for (u, w), c in x.terms.items():
        cur: dict[DWord, object] = {(): -c if system.length[w] % 2 else c}
        for t in u:
            cur = _d_mul(cur, {(): 1, (t,): -1})
        for v, d in cur.items():
            _add(out, (v, w), d)
    return x._like(out)


def _action_word(system: CoxeterSystem, w: int, u: DWord) -> dict[DWord, int]:
    cache = _cache(system, "action")
    hit = cache.get((w, u))
    if hit is not None:
        return hit
    cur: dict[DWord, int] = {(): 1}
    for t in u:
        t2 = system.conj[w][t]
        img = {(t2,): 1} if system.chi[w][t] == 1 else {(): 1, (t2,): -1}
        cur = _d_mul(cur, img)
    cache[(w, u)] = cur
    return cur


def w_action(w, x: HHElement) -> HHElement:
    """The W-action on the D-part: D_t -> D_{wtw^-1} or 1 - D_{wtw^-1}."""
    system = x.system
    g = _group_id(system, w)
    terms = _d_terms(x)
    out: dict = {}
    for u, c in terms.items():
        for v, d in _action_word(system, g, u).items():
            _add(out, v, c * d)
    return _from_d_terms(x, out)


def ds_derivation(s, x: HHElement) -> HHElement:
    """The s-derivation: d_s(D_t) = delta_{s,t} with d_s(xy) = d_s(x) y + s(x) d_s(y)."""
    system = x.system
    r = reflection_index(system, s)
    g = system.reflections[r]
    out: dict = {}
    for u, c in _d_terms(x).items():
        for j, t in enumerate(u):
            if t != r:
                continue
            for v, d in _action_word(system, g, u[:j]).items():
                _add(out, concat_square_free(v, u[j + 1:]), c * d)
    return _from_d_terms(x, out)


def ds_derivation_conjugation(i: int, x: HHElement) -> HHElement:
    """d_{s_i}(x) computed as s_i(x) s_i - s_i x, which must lie in the D-part."""
    alg = HHAlgebra(x.system, x.ring)
    si = alg.s(i)
    y = w_action(x.system.simple(i), x) * si - si * x
    if not y.is_d_part():
        raise NotInDPart("s_i(x) s_i - s_i x left the D-part")
    return y


# --- partial derivatives ------------------------------------------------------


def partial_derivative(g, h, x: HHElement) -> HHElement:
    """Coefficient at ``h`` of the normal form of ``g * x``."""
    system = x.system
    gi, hi = _group_id(system, g), _group_id(system, h)
    out: dict = {}
    for u, c in _d_terms(x).items():
        for (v, k), d in push(system, gi, u).items():
            if k == hi:
                _add(out, v, c * d)
    return _from_d_terms(x, out)


def all_partials(g, x: HHElement) -> dict[int, HHElement]:
    """``{h: partial_{g,h}(x)}`` over the nonzero components."""
    system = x.system
    gi = _group_id(system, g)
    parts: dict[int, dict] = {}
    for u, c in _d_terms(x).items():
        for (v, k), d in push(system, gi, u).items():
            _add(parts.setdefault(k, {}), v, c * d)
    return {k: _from_d_terms(x, t) for k, t in parts.items() if t}


def partial_recursive(g, h, x: HHElement) -> HHElement:
    """partial_{g,h} by descent on g; never consults the push table for g != e."""
    system = x.system
    gi, hi = _group_id(system, g), _group_id(system, h)
    _d_terms(x)
    memo: dict = {}

    def rec(gg: int, hh: int) -> HHElement:
        if (gg, hh) in memo:
            return memo[(gg, hh)]
        if gg == 0:
            res = x if hh == 0 else x._like({})
        else:
            i = system.left_descents(gg)[0]
            g2 = system.lmul[i][gg]
            si = system.simple(i)
            res = w_action(si, rec(g2, system.lmul[i][hh])) - ds_derivation(si, rec(g2, hh))
        memo[(gg, hh)] = res
        return res

    return rec(gi, hi)


# --- rank-2 relations ------------------------------------------------------


def dihedral_reflections(system: CoxeterSystem, i: int = 0, j: int = 1) -> list[int]:
    """Reflection indices of D_1..D_m where D_k = D_{s_i s_j s_i ...} (2k-1 letters)."""
    if i == j or not (0 <= i < system.rank and 0 <= j < system.rank):
        raise BadIndices(f"need distinct generator indices, got {i}, {j}")
    m = system.m[i][j]
    return [system.refl_index[dihedral_dk(system, i, j, k).id] for k in range(1, m + 1)]


def parabolic_elements(system: CoxeterSystem, gens: Sequence[int]) -> list[int]:
    seen = {0}
    order = [0]
    for w in order:
        for i in gens:
            v = system.lmul[i][w]
            if v not in seen:
                seen.add(v)
                order.append(v)
    return order


def _d_element(system: CoxeterSystem, ring: Ring, terms: Mapping[DWord, object]) -> HHElement:
    return HHElement(system, {(u, 0): c for u, c in terms.items()}, ring)


def _check_divisor(m: int, n: int, r: int) -> int:
    if n < 1 or m % n:
        raise BadIndices(f"n={n} does not divide m={m}")
    if not 1 <= r <= n:
        raise BadIndices(f"r={r} outside 1..{n}")
    return m // n


def rank2_Q(system: CoxeterSystem, n: int, r: int, p: int, i: int = 0, j: int = 1, ring: Ring = ZZ) -> HHElement:
    """The quadratic-linear element Q_{ij}^{(n,r,p)}."""
    D = dihedral_reflections(system, i, j)
    M = _check_divisor(len(D), n, r)
    if not (1 <= p and 2 * p * n < len(D)):
        raise BadIndices(f"p={p} outside 1 <= p < m/2n")

    def d(k):
        return D[r + k * n - 1]

    terms: dict[DWord, int] = {}
    for a in range(M):
        for b in range(a + 1, M):
            if b - a == M - p:
                _add(terms, (d(b), d(a)), 1)
            if b - a == p:
                _add(terms, (d(a), d(b)), -1)
    for c in range(p, M - p):
        _add(terms, (d(c),), 1)
    return _d_element(system, ring, terms)


def rank2_R(system: CoxeterSystem, n: int, r: int, t: int, i: int = 0, j: int = 1, ring: Ring = ZZ) -> HHElement:
    """The ordered-product element R_{ij}^{(n,r,t)}."""
    D = dihedral_reflections(system, i, j)
    M = _check_divisor(len(D), n, r)
    if not 0 <= t <= M:
        raise BadIndices(f"t={t} outside 0..{M}")

    def d(k):
        return D[r + k * n - 1]

    def one_minus(k):
        return {(): 1, (d(k),): -1}

    left: dict[DWord, int] = {(): 1}
    for a in range(t, M):
        left = _d_mul(left, one_minus(a))
    for b in range(t):
        left = _d_mul(left, {(d(b),): 1})
    right: dict[DWord, int] = {(): 1}
    for b in reversed(range(t)):
        right = _d_mul(right, {(d(b),): 1})
    for a in reversed(range(t, M)):
        right = _d_mul(right, one_minus(a))
    for k, c in right.items():
        _add(left, k, -c)
    return _d_element(system, ring, left)


def rank2_legal_indices(m: int) -> tuple[list[tuple[int, int, int]], list[tuple[int, int, int]]]:
    """All legal (n, r, p) for Q and (n, r, t) for R."""
    qs, rs = [], []
    for n in range(1, m + 1):
        if m % n:
            continue
        for r in range(1, n + 1):
            qs.extend((n, r, p) for p in range(1, m) if 2 * p * n < m)
            rs.extend((n, r, t) for t in range(m // n + 1))
    return qs, rs


def rank2_conjugation_failures(system: CoxeterSystem, i: int = 0, j: int = 1) -> list[str]:
    """Check how s_i and s_j permute the Q and R families (up to sign).

    Conjugation by s_i shifts r down by one and conjugation by s_j shifts it
    up, landing in the family with i and j exchanged; at the ends of the
    range the R family also shifts t.  Returns a label per failing identity.
    """
    m = system.m[i][j]
    qs, rs = rank2_legal_indices(m)
    si, sj = system.simple(i), system.simple(j)
    failures = []

    def check(label, lhs, rhs):
        if lhs != rhs:
            failures.append(label)

    for n, r, p in qs:
        q = rank2_Q(system, n, r, p, i, j)
        down = rank2_Q(system, n, r - 1 if r > 1 else n, p, j, i)
        up = rank2_Q(system, n, r + 1 if r < n else 1, p, j, i)
        check(f"s_i Q{(n, r, p)} s_i", conjugate(si, q), down)
        check(f"s_j Q{(n, r, p)} s_j", conjugate(sj, q), up)
    for n, r, t in rs:
        M = m // n
        x = rank2_R(system, n, r, t, i, j)
        if r > 1:
            down = rank2_R(system, n, r - 1, t, j, i)
        elif t >= 1:
            down = rank2_R(system, n, n, t - 1, j, i)
        else:
            down = -rank2_R(system, n, 1, 1, i, j)
        if r < n:
            up = rank2_R(system, n, r + 1, t, j, i)
        elif t < M:
            up = rank2_R(system, n, 1, t + 1, j, i)
        else:
            up = -rank2_R(system, n, n, M - 1, i, j)
        check(f"s_i R{(n, r, t)} s_i", conjugate(si, x), down)
        check(f"s_j R{(n, r, t)} s_j", conjugate(sj, x), up)
    return failures


def kij_m2_element(system: CoxeterSystem, i: int = 0, j: int = 1, ring: Ring = ZZ) -> HHElement:
    """D_i D_j - D_j D_i."""
    alg = HHAlgebra(system, ring)
    return alg.D(i) * alg.D(j) - alg.D(j) * alg.D(i)


def kij_m3_spanning(system: CoxeterSystem, i: int = 0, j: int = 1, ring: Ring = ZZ, literal: bool = False) -> list[HHElement]:
    """Five elements spanning K_ij over Z when m_ij = 3.

    With D_ij = s_i D_j s_i, K_ij = D_i D_j - D_j D_ij - D_ij D_i + D_ij and
    K_ji likewise.  The list is K_ij, K_ji, K_ij D_i - D_i K_ji,
    K_ji D_i - D_i K_ij, D_j K_ji - K_ij D_j.  ``literal=True`` puts
    K_ji D_i - D_i K_ji in the fourth slot instead, which is not in K_ij.
    """
    if system.m[i][j] != 3:
        raise BadIndices("this spanning set is for m_ij = 3")
    alg = HHAlgebra(system, ring)
    Di, Dj = alg.D(i), alg.D(j)
    Dij = alg.s(i) * Dj * alg.s(i)
    Kij = Di * Dj - Dj * Dij - Dij * Di + Dij
    Kji = Dj * Di - Di * Dij - Dij * Dj + Dij
    fourth = Kji * Di - Di * (Kji if literal else Kij)
    return [Kij, Kji, Kij * Di - Di * Kji, fourth, Dj * Kji - Kij * Dj]


def same_integer_span(xs: Sequence[HHElement], ys: Sequence[HHElement]) -> bool:
    """Equal Z-spans, decided by comparing Hermite normal forms."""
    from .linalg import hnf

    keys = sorted({k for x in list(xs) + list(ys) for k in x.terms}, key=lambda k: (word_key(k[0]), k[1]))

    def rows(zs):
        return hnf([[int(z.terms.get(k, 0)) for k in keys] for z in zs])

    return rows(xs) == rows(ys)


def qij4_element(system: CoxeterSystem, i: int = 0, j: int = 1, ring: Ring = ZZ) -> HHElement:
    """The degree-4 element attached to m_ij = 5 (both sides of the identity subtracted)."""
    D = dihedral_reflections(system, i, j)
    if len(D) != 5:
        raise BadIndices("this element is defined for m_ij = 5")
    D1, D2, D3, D4, D5 = D
    lhs: dict[DWord, int] = {(D1, D2, D3, D4): 1}
    mid = {(D1, D2, D4): 1, (D2, D3, D4): 1, (D2, D4): -1}
    for k, c in _d_mul(mid, {(D5,): 1, (): -1}).items():
        _add(lhs, k, c)
    for k, c in {(D5, D4, D3, D1): 1, (D5, D3, D2, D1): 1, (D5, D3, D1): -1}.items():
        _add(lhs, k, -c)
    return _d_element(system, ring, lhs)


def delta_ij(system: CoxeterSystem, c_i, c_j, i: int = 0, j: int = 1, ring: Ring = ZZ) -> HHElement:
    """(1 - c D_1)...(1 - c D_m) - (1 - c D_m)...(1 - c D_1) with alternating c_i, c_j."""
    D = dihedral_reflections(system, i, j)
    m = len(D)
    c_i, c_j = coerce_scalar(ring, c_i), coerce_scalar(ring, c_j)
    if m % 2 and c_i != c_j:
        raise OddMismatch("c_i must equal c_j when m_ij is odd")
    factors = [{(): 1, (D[k],): -(c_i if k % 2 == 0 else c_j)} for k in range(m)]
    fwd: dict = {(): 1}
    for f in factors:
        fwd = _d_mul(fwd, f)
    bwd: dict = {(): 1}
    for f in reversed(factors):
        bwd = _d_mul(bwd, f)
    for k, c in bwd.items():
        _add(fwd, k, -c)
    return _d_element(system, ring, fwd)


# --- coideals K_ij -----------------------------------------------------------


def conjugate(w, x: HHElement) -> HHElement:
    """w x w^-1 in normal form."""
    system = x.system
    g = _group_id(system, w)
    ginv = system.inv[g]
    out: dict = {}
    for (u, v), c in x.terms.items():
        for (u2, h), d in push(system, g, u).items():
            _add(out, (u2, system.mul(system.mul(h, v), ginv)), c * d)
    return x._like(out)


def in_coideal(x: HHElement, group: Iterable[int] | None = None) -> bool:
    """True iff x is in the D-part, has zero counit, and every conjugate
    w x w^-1 (w in ``group``, default all of W) stays in the D-part."""
    system = x.system
    try:
        terms = _d_terms(x)
    except NotInDPart:
        return False
    if terms.get((), 0):
        return False
    elements = range(system.size) if group is None else group
    for u in elements:
        acc: dict = {}
        for w, c in terms.items():
            for (v, h), d in push(system, u, w).items():
                if h != u:
                    _add(acc, (v, h), c * d)
        if acc:
            return False
    return True


def in_kij(x: HHElement, i: int = 0, j: int = 1) -> bool:
    """Membership in K_ij: the degree bound m_ij plus conjugation stability under W_ij."""
    if x.degree() > x.system.m[i][j]:
        return False
    return in_coideal(x, parabolic_elements(x.system, [i, j]))


def kij_nullspace(system: CoxeterSystem, i: int = 0, j: int = 1, bound: int = 4) -> list[HHElement]:
    """Integer basis (Hermite normal form) of K_ij: D-part elements of degree
    <= m_ij in D_1..D_m with zero counit whose W_ij-conjugates stay in the D-part."""
    D = dihedral_reflections(system, i, j)
    m = len(D)
    if m > bound:
        raise DegreeBoundExceeded(f"m_ij = {m} exceeds the configured bound {bound}")
    monos: list[DWord] = []
    for deg in range(1, m + 1):
        for w in square_free_words(m, deg):
            monos.append(tuple(D[k] for k in w))
    group = parabolic_elements(system, [i, j])
    rows: dict = {}
    for col, u in enumerate(monos):
        for g in group:
            for (v, h), c in push(system, g, u).items():
                if h != g:
                    rows.setdefault((g, v, h), {})[col] = c
    basis = integer_kernel(list(rows.values()), len(monos))
    return [
        HHElement(system, {(monos[k], 0): c for k, c in enumerate(vec) if c}, ZZ)
        for vec in basis
    ]


# --- ideal membership --------------------------------------------------------


@dataclass
class RelationSet:
    generators: list[HHElement]
    label: str = ""

    def __post_init__(self):
        for r in self.generators:
            if hh_counit(r):
                raise HeckeHopfError(f"relation with nonzero counit in {self.label!r}")


@dataclass
class Member:
    """Certificate entries ``(exponent, coeff, left, rel_index, right)``.

    For each ring monomial ``q^exponent`` of x, the part of x at that monomial
    equals the sum of ``coeff * left * rels[rel_index] * right`` over the
    entries carrying that exponent (the empty tuple for scalar rings).
    """

    certificate: list[tuple[tuple, Fraction, HHElement, int, HHElement]] = field(default_factory=list)
    degree_bound: int = 0

    found = True


@dataclass
class NotFoundUpTo:
    degree_bound: int

    found = False


def _scalar_parts(x: HHElement) -> dict[tuple, HHElement]:
    """Split x = sum_e q^e x_e with integer/rational x_e (keys are ring exponents)."""
    if x.ring.nvars == 0:
        return {(): x}
    parts: dict[tuple, dict] = {}
    for k, c in x.terms.items():
        for e, v in c.terms.items():
            parts.setdefault(e, {})[k] = v
    return {e: HHElement(x.system, t, ZZ if all(isinstance(v, int) for v in t.values()) else _QQ) for e, t in parts.items()}


def _to_rational(x: HHElement) -> HHElement:
    if x.ring.nvars == 0:
        return x if x.ring == _QQ else HHElement(x.system, x.terms, _QQ)
    terms = {}
    for k, c in x.terms.items():
        if not c.is_constant():
            raise HeckeHopfError("relations must have scalar coefficients")
        terms[k] = c.constant()
    return HHElement(x.system, terms, _QQ)


def _d_words_up_to(nrefl: int, deg: int) -> list[DWord]:
    out: list[DWord] = []
    for d in range(deg + 1):
        out.extend(square_free_words(nrefl, d))
    return out


class IdealSolver:
    """Bounded-degree span of the two-sided ideal generated by ``rels``.

    The span of {a * r * b : deg a + deg r + deg b <= degree_bound} (a, b
    normal-form basis monomials) is row-reduced once; ``member`` then answers
    queries by exact elimination over Q.
    """

    def __init__(self, system: CoxeterSystem, rels: RelationSet, degree_bound: int):
        self.system = system
        self.rels = rels
        self.degree_bound = degree_bound
        rel_list = [_to_rational(r) for r in rels.generators]
        # conjugation-closed span of the relations; if it sits in the D-part the
        # ideal factors as (ideal of the D-part) * W and x is tested per group component
        conjugates: list[tuple[HHElement, int, int]] = []
        seen_keys: set = set()
        for idx, r in enumerate(rel_list):
            for g in range(system.size):
                y = conjugate(g, r)
                if y:
                    conjugates.append((y, idx, g))
                    seen_keys.update(y.terms)
        self.d_part = all(y.is_d_part() for y, _, _ in conjugates)
        # echelon form with higher-degree columns first: every basis row then has
        # the degree of its pivot, so low-degree members of the span are visible
        order = sorted(seen_keys, key=lambda k: (-len(k[0]), word_key(k[0]), k[1]))
        conj_red = RowReducer(track=True, column_order={k: n for n, k in enumerate(order)})
        for y, idx, g in conjugates:
            conj_red.add(dict(y.terms), (idx, g))
        self.conj_basis: list[tuple[HHElement, dict]] = []
        for pc in sorted(conj_red.pivots):
            row = conj_red.pivots[pc]
            y = HHElement(system, {order[k]: v for k, v in row.items()}, _QQ)
            self.conj_basis.append((y, conj_red.combos[pc]))

        by_deg: dict[int, list[DWord]] = {}
        for w in _d_words_up_to(system.nrefl, degree_bound):
            by_deg.setdefault(len(w), []).append(w)
        self.red = RowReducer(track=True)
        self.products: list[tuple[DWord, int, DWord, int]] = []
        right_groups = [0] if self.d_part else list(range(system.size))
        for bidx, (y, _) in enumerate(self.conj_basis):
            room = degree_bound - y.degree()
            if room < 0:
                continue
            yd = _d_terms(y) if self.d_part else None
            for da in range(room + 1):
                for a in by_deg.get(da, []):
                    if self.d_part:
                        left_terms = _d_mul({a: 1}, yd)
                    else:
                        left = HHElement(system, {(a, 0): 1}, _QQ) * y
                    for db in range(room - da + 1):
                        for b in by_deg.get(db, []):
                            for g in right_groups:
                                if self.d_part:
                                    vec = {(u, 0): c for u, c in _d_mul(left_terms, {b: 1}).items()}
                                else:
                                    vec = dict((left * HHElement(system, {(b, g): 1}, _QQ)).terms)
                                label = len(self.products)
                                self.products.append((a, bidx, b, g))
                                self.red.add(vec, label)

    @property
    def dimension(self) -> int:
        return self.red.rank

    def member(self, x: HHElement) -> "Member | NotFoundUpTo":
        system = self.system
        if not x:
            return Member([], self.degree_bound)
        certificate = []
        for e, part in _scalar_parts(x).items():
            comps = part.group_components() if self.d_part else {0: part}
            for w, comp in comps.items():
                rem, combo = self.red.reduce(dict(_to_rational(comp).terms))
                if rem:
                    return NotFoundUpTo(self.degree_bound)
                for label, c in combo.items():
                    a, bidx, b, g = self.products[label]
                    right_group = w if self.d_part else g
                    for (idx, conj_g), cc in self.conj_basis[bidx][1].items():
                        left = HHElement(system, {(a, conj_g): 1}, _QQ)
                        right = HHElement(system, {((), system.inv[conj_g]): 1}, _QQ) * HHElement(
                            system, {(b, right_group): 1}, _QQ
                        )
                        certificate.append((e, c * cc, left, idx, right))
        return Member(certificate, self.degree_bound)


def ideal_member(x: HHElement, rels: RelationSet, degree_bound: int) -> Member | NotFoundUpTo:
    """Decide whether x lies in the span of {a * r * b : r in rels, D-degree <= bound}.

    ``a`` and ``b`` run over normal-form basis monomials.  Coefficients of x in
    a Laurent ring are split by monomial, each part must lie in the ideal over
    Q (the relations carry scalar coefficients).  A negative answer is only a
    statement about the given bound.
    """
    if not x:
        return Member([], degree_bound)
    return IdealSolver(x.system, rels, degree_bound).member(x)


def ideal_member_escalating(x: HHElement, rels: RelationSet, degree: int | None = None, steps: int = 3):
    """Try bounds deg, deg+1, ... (``steps`` values); first Member wins."""
    start = max(x.degree(), 0) if degree is None else degree
    res: Member | NotFoundUpTo = NotFoundUpTo(start)
    for b in range(start, start + steps):
        res = ideal_member(x, rels, b)
        if isinstance(res, Member):
            return res
    return res


def check_certificate(x: HHElement, rels: RelationSet, member: Member) -> bool:
    """Recombine a certificate and compare with x, monomial by monomial."""
    rel_list = [_to_rational(r) for r in rels.generators]
    zero = HHElement(x.system, None, _QQ)
    got: dict[tuple, HHElement] = {}
    for e, c, left, idx, right in member.certificate:
        got[e] = got.get(e, zero) + (left * rel_list[idx] * right) * c
    want = {e: _to_rational(p) for e, p in _scalar_parts(x).items()}
    return all(got.get(e, zero) == want.get(e, zero) for e in set(got) | set(want))


def kij_relation_set(system: CoxeterSystem, bound: int = 4) -> RelationSet:
    """K_ij bases for every pair i < j with m_ij <= bound, as one relation set."""
    gens: list[HHElement] = []
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            if system.m[i][j] <= bound:
                gens.extend(kij_nullspace(system, i, j, bound=bound))
    return RelationSet(gens, f"K_ij {system.name}")


# --- the Hecke embedding -----------------------------------------------------


def _q_for(q, i: int):
    if isinstance(q, Mapping):
        return q[i]
    return q


def hecke_T(system: CoxeterSystem, i: int, q_i, ring: Ring = ZZ) -> HHElement:
    """T_i = s_i + (1 - q_i) D_i."""
    alg = HHAlgebra(system, ring)
    return alg.s(i) + alg.D(i) * (1 - coerce_scalar(ring, q_i))


def _check_q(system: CoxeterSystem, q, ring: Ring) -> None:
    if not isinstance(q, Mapping):
        return
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            if system.m[i][j] % 2 and coerce_scalar(ring, q[i]) != coerce_scalar(ring, q[j]):
                raise OddConstraintViolation(f"q_{i} != q_{j} although m_ij is odd")


def hecke_Tw(system: CoxeterSystem, word: Sequence[int], q, ring: Ring = ZZ) -> HHElement:
    _check_q(system, q, ring)
    out = HHAlgebra(system, ring).one()
    for i in word:
        out = out * hecke_T(system, i, _q_for(q, i), ring)
    return out


def tw_triangularity(system: CoxeterSystem, w, q, ring: Ring = ZZ) -> VerificationReport:
    """Check T_w = w + (terms whose group part is strictly below w in Bruhat order)."""
    import time

    start = time.perf_counter()
    g = _group_id(system, w)
    x = hecke_Tw(system, system.words[g], q, ring)
    failures = []
    if x.terms.get(((), g), 0) != coerce_scalar(ring, 1):
        failures.append({"term": [[], list(system.words[g])], "reason": "leading coefficient is not 1"})
    for (u, h), c in x.terms.items():
        if h == g:
            if u:
                failures.append({"term": serialize_key(system, (u, h)), "reason": "extra term at w"})
        elif not system.bruhat_leq(h, g):
            failures.append({"term": serialize_key(system, (u, h)), "reason": "group part not below w"})
    return make_report("tw_triangularity", f"{system.name} w={system.element_name(g)}", failures, start)


# --- serialization and random elements --------------------------------------


def serialize_key(system: CoxeterSystem, key: Key) -> list:
    u, w = key
    return [[list(system.words[system.reflections[t]]) for t in u], list(system.words[w])]


def to_records(x: HHElement) -> list[dict]:
    system = x.system
    out = []
    for (u, w), c in x.terms.items():
        out.append({
            "d_word": [list(system.words[system.reflections[t]]) for t in u],
            "group": list(system.words[w]),
            "coeff": str(c),
        })
    return out


def from_records(system: CoxeterSystem, records: Iterable[Mapping], ring: Ring = ZZ) -> HHElement:
    terms: dict = {}
    for rec in records:
        u = tuple(reflection_index(system, tuple(word)) for word in rec["d_word"])
        w = system.from_word(rec["group"])
        c = coerce_scalar(ring, ring.parse(rec["coeff"]))
        _add(terms, (square_free(u), w), c)
    return HHElement(system, terms, ring)


def random_element(
    system: CoxeterSystem,
    rng: random.Random,
    ring: Ring = ZZ,
    max_degree: int = 3,
    max_terms: int = 4,
    d_part: bool = False,
) -> HHElement:
    """Random element with D-degree <= max_degree and coefficients in -2..2."""
    nr = system.nrefl
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        u: list[int] = []
        while len(u) < deg:
            t = rng.randrange(nr)
            if not u or u[-1] != t:
                u.append(t)
        w = 0 if d_part else rng.randrange(system.size)
        c = rng.choice([-2, -1, 1, 2])
        _add(terms, (tuple(u), w), c)
    return HHElement(system, terms, ring)



# --- relations as words in the generators s_i, D_i -----------------------------
#
# Generator g < rank stands for s_g, generator rank + g for D_g.


def generator_names(system: CoxeterSystem) -> list[str]:
    n = system.rank
    return [f"s{i + 1}" for i in range(n)] + [f"D{i + 1}" for i in range(n)]


def _nc(system: CoxeterSystem, terms: Mapping[tuple[int, ...], int]) -> NCElement:
    return NCElement(terms, ZZ, 2 * system.rank, generator_names(system))


def defining_relations(system: CoxeterSystem) -> list[tuple[str, NCElement]]:
    """The presentation of the algebra: rank-1, Coxeter and linear braid
    relations, each as ``lhs - rhs`` in the free algebra on s_i, D_i."""
    n = system.rank
    rels: list[tuple[str, NCElement]] = []
    for i in range(n):
        s, d = i, n + i
        rels.append((f"s{i + 1}^2 = 1", _nc(system, {(s, s): 1, (): -1})))
        rels.append((f"D{i + 1}^2 = D{i + 1}", _nc(system, {(d, d): 1, (d,): -1})))
        rels.append((
            f"s{i + 1}D{i + 1} + D{i + 1}s{i + 1} = s{i + 1} - 1",
            _nc(system, {(s, d): 1, (d, s): 1, (s,): -1, (): 1}),
        ))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = system.m[i][j]
            if i < j:
                rels.append((f"(s{i + 1}s{j + 1})^{m} = 1", _nc(system, {(i, j) * m: 1, (): -1})))
            # D_i s_j s_i ... (m letters) = s_j ... s_j' D_i'
            ss = tuple(j if k % 2 == 0 else i for k in range(m - 1))
            ip = i if m % 2 == 0 else j
            rels.append((
                f"linear braid D{i + 1} / D{ip + 1} (m={m})",
                _nc(system, {(n + i,) + ss: 1, ss + (n + ip,): -1}),
            ))
    return rels


def simply_laced_relations(system: CoxeterSystem) -> list[tuple[str, NCElement]]:
    """Extra relations of the quotient algebra for simply-laced W (m_ij in {2, 3})."""
    n = system.rank
    rels: list[tuple[str, NCElement]] = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = system.m[i][j]
            si, sj, di, dj = i, j, n + i, n + j
            if m == 2 and i < j:
                rels.append((f"D{j + 1}D{i + 1} = D{i + 1}D{j + 1}", _nc(system, {(dj, di): 1, (di, dj): -1})))
            elif m == 3:
                rels.append((
                    f"D{j + 1}s{i + 1}D{j + 1} = s{i + 1}D{j + 1}D{i + 1} + D{i + 1}D{j + 1}s{i + 1} + s{i + 1}D{j + 1}s{i + 1}",
                    _nc(system, {(dj, si, dj): 1, (si, dj, di): -1, (di, dj, si): -1, (si, dj, si): -1}),
                ))
            elif m not in (2, 3):
                raise HeckeHopfError("simply-laced relations need m_ij in {2, 3}")
    return rels


def nc_to_hh(system: CoxeterSystem, x: NCElement, ring: Ring = ZZ) -> HHElement:
    """Evaluate a word combination in s_i, D_i inside the algebra."""
    alg = HHAlgebra(system, ring)
    n = system.rank
    gens = [alg.s(i) for i in range(n)] + [alg.D(i) for i in range(n)]
    out = alg.zero()
    for w, c in x.terms.items():
        term = alg.scalar(c)
        for g in w:
            term = term * gens[g]
        out = out + term
    return out
