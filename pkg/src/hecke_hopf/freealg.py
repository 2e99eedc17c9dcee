"""Sparse elements of free associative algebras.

Words are tuples of generator indices; the empty tuple is the unit.  Words
iterate in graded lexicographic order.  The only rewriting ever applied is
the optional idempotent contraction ``g g -> g`` (``nc_reduce_idempotent``).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .rings import ZZ, Ring, coerce_scalar

Word = tuple[int, ...]


class Mismatch(Exception):
    pass


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def square_free(w: Sequence[int]) -> Word:
    """Contract adjacent repeats to a fixpoint."""
    out: list[int] = []
    for g in w:
        if not out or out[-1] != g:
            out.append(g)
    return tuple(out)


def concat_square_free(u: Word, v: Word) -> Word:
    """Concatenate two square-free words; only the junction can repeat."""
    if u and v and u[-1] == v[0]:
        return u + v[1:]
    return u + v


def square_free_words(ngens: int, length: int) -> Iterator[Word]:
    """All square-free words of the given length in lexicographic order."""
    if length == 0:
        yield ()
        return

    def rec(prefix: list[int]):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for g in range(ngens):
            if prefix and prefix[-1] == g:
                continue
            prefix.append(g)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def all_words(ngens: int, length: int) -> Iterator[Word]:
    if length == 0:
        yield ()
        return
    for w in all_words(ngens, length - 1):
        for g in range(ngens):
            yield w + (g,)


class NCElement:
    """Immutable linear combination of words with coefficients in a ring."""

    __slots__ = ("ring", "ngens", "terms", "names")

    def __init__(
        self,
        terms: Mapping[Word, object] | None = None,
        ring: Ring = ZZ,
        ngens: int | None = None,
        names: Sequence[str] | None = None,
    ):
        self.ring = ring
        self.names = tuple(names) if names is not None else None
        if ngens is None:
            ngens = len(self.names) if self.names is not None else None
        self.ngens = ngens
        clean: dict[Word, object] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if ngens is not None and any(not 0 <= g < ngens for g in w):
                raise Mismatch(f"word {w} uses a generator outside 0..{ngens - 1}")
            c = coerce_scalar(ring, c)
            if c:
                v = clean.get(w, 0) + c
                if v:
                    clean[w] = v
                else:
                    clean.pop(w, None)
        self.terms = dict(sorted(clean.items(), key=lambda kv: word_key(kv[0])))

    def _like(self, terms: Mapping[Word, object]) -> "NCElement":
        return NCElement(terms, self.ring, self.ngens, self.names)

    @classmethod
    def gen(cls, g: int, ring: Ring = ZZ, ngens: int | None = None, names=None) -> "NCElement":
        return cls({(g,): 1}, ring, ngens, names)

    @classmethod
    def scalar(cls, c, ring: Ring = ZZ, ngens: int | None = None, names=None) -> "NCElement":
        return cls({(): c}, ring, ngens, names)

    def _check(self, other: "NCElement") -> None:
        if self.ring != other.ring:
            raise Mismatch(f"rings differ: {self.ring.name} vs {other.ring.name}")
        if self.ngens is not None and other.ngens is not None and self.ngens != other.ngens:
            raise Mismatch("generator sets differ")

    def _lift(self, other) -> "NCElement":
        if isinstance(other, NCElement):
            self._check(other)
            return other
        return self._like({(): other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCElement):
            c = coerce_scalar(self.ring, other)
            return self._like({w: v * c for w, v in self.terms.items()})
        return nc_mul(self, other)

    def __rmul__(self, other):
        c = coerce_scalar(self.ring, other)
        return self._like({w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int):
        out = self._like({(): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCElement):
            other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, w: Sequence[int]):
        return self.terms.get(tuple(w), 0)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            if self.names:
                mono = "*".join(self.names[g] for g in w) or "1"
            else:
                mono = "*".join(f"g{g}" for g in w) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def nc_mul(a: NCElement, b: NCElement) -> NCElement:
    a._check(b)
    out: dict[Word, object] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            out[w] = out.get(w, 0) + c * d
    return a._like(out)


def nc_reduce_idempotent(a: NCElement) -> NCElement:
    out: dict[Word, object] = {}
    for w, c in a.terms.items():
        r = square_free(w)
        out[r] = out.get(r, 0) + c
    return a._like(out)


def count_square_free(ngens: int, length: int) -> int:
    if length == 0:
        return 1
    return ngens * (ngens - 1) ** (length - 1)


def linear_combination(pairs: Iterable[tuple[object, NCElement]], like: NCElement) -> NCElement:
    out = like._like({})
    for c, x in pairs:
        out = out + x * c
    return out
