"""Exact coefficient rings.

Every ring here is a quotient of a Laurent polynomial ring
``Z[x_1^{+-1}, ..., x_k^{+-1}]`` (or the same over Q) by monic univariate
moduli attached to some of the variables.  This one family covers the
integers, the rationals, ``Z[q, q^-1]``, cyclotomic rings ``Z[a]/Phi_n(a)``,
the golden ratio ring ``Z[x]/(x^2 - x - 1)`` and mixed rings such as
``(Z[a]/Phi_n)[b]``.

Elements are immutable and stored canonically as a sparse map from exponent
vectors to nonzero ``int`` (or ``Fraction``) coefficients.  Arithmetic with
plain Python integers and fractions is supported on both sides, so generic
code can treat ``int`` coefficients and ``RingElem`` coefficients uniformly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class RingError(Exception):
    pass


class RingMismatch(RingError):
    pass


class NonUnitSubstitution(RingError):
    pass


class NonExactDivision(RingError):
    pass


class InvalidModulus(RingError):
    pass


class Ring:
    """Descriptor of an exact commutative ring.

    ``moduli`` maps a variable name to the coefficient list (low degree
    first) of a monic polynomial; exponents of that variable are kept in
    ``[0, deg)``.  Variables without a modulus are Laurent variables.
    """

    def __init__(
        self,
        variables: Sequence[str] = (),
        moduli: Mapping[str, Sequence[int]] | None = None,
        rational: bool = False,
        name: str | None = None,
    ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise RingError(f"repeated variable names in {self.variables}")
        self.rational = rational
        mods: dict[int, tuple[int, ...]] = {}
        for var, coeffs in (moduli or {}).items():
            if var not in self.variables:
                raise InvalidModulus(f"modulus for unknown variable {var!r}")
            coeffs = tuple(int(c) for c in coeffs)
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            if len(coeffs) < 2 or coeffs[-1] != 1:
                raise InvalidModulus(f"modulus for {var!r} must be monic of degree >= 1")
            mods[self.variables.index(var)] = coeffs
        self.moduli = mods
        self._key = (self.variables, tuple(sorted(mods.items())), rational)
        self.name = name or self._default_name()
        self.zero = RingElem(self, {})
        self.one = RingElem(self, {(0,) * len(self.variables): 1})

    def _default_name(self) -> str:
        base = "QQ" if self.rational else "ZZ"
        if not self.variables:
            return base
        parts = []
        for k, v in enumerate(self.variables):
            if k in self.moduli:
                parts.append(f"{v} mod {_poly_str(self.moduli[k], v)}")
            else:
                parts.append(f"{v}^+-1")
        return f"{base}[{', '.join(parts)}]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Ring({self.name})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def gen(self, name: str) -> "RingElem":
        k = self.variables.index(name)
        e = [0] * self.nvars
        e[k] = 1
        return self.from_terms({tuple(e): 1})

    def gens(self) -> tuple["RingElem", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def from_terms(self, terms: Mapping[tuple[int, ...], Scalar]) -> "RingElem":
        out: dict[tuple[int, ...], Scalar] = {}
        for e, c in terms.items():
            if len(e) != self.nvars:
                raise RingError(f"exponent {e} has wrong length for {self.name}")
            c = self._scalar(c)
            if c:
                out[e] = out.get(e, 0) + c
        return RingElem(self, self._reduce(out))

    def _scalar(self, c: Scalar) -> Scalar:
        if isinstance(c, Fraction):
            if c.denominator == 1:
                return int(c.numerator)
            if not self.rational:
                raise RingError(f"non-integer coefficient {c} in {self.name}")
            return c
        if isinstance(c, int):
            return int(c)
        raise RingError(f"unsupported scalar {c!r}")

    def __call__(self, value) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatch(f"{value.ring.name} vs {self.name}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.from_terms({(0,) * self.nvars: value})

    def _reduce(self, terms: dict[tuple[int, ...], Scalar]) -> dict[tuple[int, ...], Scalar]:
        terms = {e: c for e, c in terms.items() if c}
        for k, mod in self.moduli.items():
            d = len(mod) - 1
            while True:
                high = [e for e in terms if e[k] >= d or e[k] < 0]
                if not high:
                    break
                for e in high:
                    if e[k] < 0:
                        raise RingError(
                            f"negative power of quotient variable {self.variables[k]!r}"
                        )
                e = max(high, key=lambda x: x[k])
                c = terms.pop(e)
                for j, mc in enumerate(mod[:-1]):
                    if mc:
                        f = e[:k] + (e[k] - d + j,) + e[k + 1:]
                        v = terms.get(f, 0) - c * mc
                        if v:
                            terms[f] = v
                        else:
                            terms.pop(f, None)
        return terms

    def reduce(self, x: "RingElem") -> "RingElem":
        return RingElem(self, self._reduce(dict(x.terms)))

    def parse(self, text: str) -> "RingElem":
        return _parse(self, text)

    def monomial(self, exps: Mapping[str, int], coeff: Scalar = 1) -> "RingElem":
        e = [0] * self.nvars
        for v, k in exps.items():
            e[self.variables.index(v)] = k
        return self.from_terms({tuple(e): coeff})


class RingElem:
    """Immutable canonical element of a ``Ring``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict[tuple[int, ...], Scalar]):
        self.ring = ring
        self.terms = dict(sorted(terms.items()))
        self._hash = None

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return RingElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring._scalar(other)
            if not other:
                return self.ring.zero
            return RingElem(self.ring, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RingElem(self.ring, self.ring._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = self.inverse_monomial()
            return inv ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse_monomial(self) -> "RingElem":
        """Inverse of a unit monomial ``+-x^e`` in the Laurent variables."""
        if len(self.terms) != 1:
            raise NonUnitSubstitution(f"{self} is not a monomial unit")
        (e, c), = self.terms.items()
        if c not in (1, -1) and not self.ring.rational:
            raise NonUnitSubstitution(f"{self} is not a unit")
        for k in self.ring.moduli:
            if e[k]:
                raise NonUnitSubstitution(f"{self} involves a quotient variable")
        return RingElem(self.ring, {tuple(-a for a in e): Fraction(1, 1) / c if self.ring.rational else c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash((self.ring, tuple(self.terms.items())))
        return self._hash

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def __repr__(self) -> str:
        return str(self)

    def __str__(self) -> str:
        return format_terms(self.terms, self.ring.variables)

    def substitute(self, assignment: Mapping[str, "RingElem | Scalar"], target: Ring | None = None) -> "RingElem":
        return laurent_substitute(self, assignment, target)

    def degree(self, var: str) -> int:
        k = self.ring.variables.index(var)
        return max((e[k] for e in self.terms), default=-1)

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.ring.nvars
        return tuple(min(col) for col in zip(*self.terms))


def coerce_scalar(ring: Ring, value):
    """Bring ``value`` into ``ring``, keeping bare scalars bare for ZZ/QQ."""
    if ring.nvars == 0:
        if isinstance(value, RingElem):
            return value.constant()
        return ring._scalar(value)
    return ring(value)


def ring_add(a: RingElem, b: RingElem) -> RingElem:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.name} vs {b.ring.name}")
    return a + b


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.name} vs {b.ring.name}")
    return a * b


def laurent_substitute(
    p: RingElem, assignment: Mapping[str, "RingElem | Scalar"], target: Ring | None = None
) -> RingElem:
    """Evaluate ``p`` at ``var -> image``; negative powers need unit images."""
    ring = p.ring
    missing = [v for v in ring.variables if v not in assignment]
    if missing:
        raise RingError(f"assignment does not cover {missing}")
    if target is None:
        imgs = [v for v in assignment.values() if isinstance(v, RingElem)]
        target = imgs[0].ring if imgs else ring
    images = [target(assignment[v]) if not isinstance(assignment[v], RingElem) else assignment[v] for v in ring.variables]
    inverses: dict[int, RingElem] = {}
    result = target.zero
    for e, c in p.terms.items():
        term = target(c)
        for k, a in enumerate(e):
            if a > 0:
                term = term * images[k] ** a
            elif a < 0:
                if k not in inverses:
                    inverses[k] = images[k].inverse_monomial()
                term = term * inverses[k] ** (-a)
        result = result + term
    return result


def exact_divide(p: RingElem, d: RingElem) -> RingElem:
    """Exact quotient ``p / d`` in a Laurent ring without moduli.

    Both arguments are shifted to ordinary polynomials, then divided with
    respect to lex order; any remainder raises ``NonExactDivision``.
    """
    ring = p.ring
    if d.ring != ring:
        raise RingMismatch(f"{p.ring.name} vs {d.ring.name}")
    if ring.moduli:
        raise NonExactDivision("exact division is only defined without moduli")
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return ring.zero
    pm, dm = p.min_exponents(), d.min_exponents()
    pt = {tuple(a - b for a, b in zip(e, pm)): c for e, c in p.terms.items()}
    dt = {tuple(a - b for a, b in zip(e, dm)): c for e, c in d.terms.items()}
    lead = max(dt)
    lc = dt[lead]
    quot: dict[tuple[int, ...], Scalar] = {}
    rem = dict(pt)
    while rem:
        top = max(rem)
        if any(a < b for a, b in zip(top, lead)):
            raise NonExactDivision(f"{p} is not divisible by {d}")
        c = rem[top]
        if ring.rational:
            qc = Fraction(c) / lc
        else:
            if c % lc:
                raise NonExactDivision(f"{p} is not divisible by {d}")
            qc = c // lc
        shift = tuple(a - b for a, b in zip(top, lead))
        quot[shift] = quot.get(shift, 0) + qc
        for e, dc in dt.items():
            f = tuple(a + b for a, b in zip(e, shift))
            v = rem.get(f, 0) - qc * dc
            if v:
                rem[f] = v
            else:
                rem.pop(f, None)
    offset = tuple(a - b for a, b in zip(pm, dm))
    return ring.from_terms({tuple(a + b for a, b in zip(e, offset)): c for e, c in quot.items()})


# --- printing and parsing ------------------------------------------------

def _poly_str(coeffs: Sequence[int], var: str) -> str:
    return format_terms({(k,): c for k, c in enumerate(coeffs) if c}, (var,))


def format_terms(terms: Mapping[tuple[int, ...], Scalar], variables: Sequence[str]) -> str:
    if not terms:
        return "0"
    pieces = []
    for e, c in sorted(terms.items()):
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _parse(ring: Ring, text: str) -> RingElem:
    s = text.replace(" ", "")
    if not s:
        raise RingError("empty coefficient string")
    # split on + / - that are not part of an exponent
    chunks: list[tuple[int, str]] = []
    sign, cur = 1, ""
    for i, ch in enumerate(s):
        if ch in "+-" and not (i > 0 and s[i - 1] == "^"):
            if cur:
                chunks.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        else:
            cur += ch
    if cur:
        chunks.append((sign, cur))
    terms: dict[tuple[int, ...], Scalar] = {}
    for sgn, chunk in chunks:
        coeff: Scalar = 1
        e = [0] * ring.nvars
        for factor in chunk.split("*"):
            if not factor:
                raise RingError(f"malformed term {chunk!r}")
            if factor[0].isdigit():
                coeff = coeff * (Fraction(factor) if "/" in factor else int(factor))
                continue
            name, _, power = factor.partition("^")
            if name not in ring.variables:
                raise RingError(f"unknown variable {name!r} for {ring.name}")
            e[ring.variables.index(name)] += int(power) if power else 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sgn * coeff
    return ring.from_terms(terms)


def format_scalar(c) -> str:
    return str(c)


def parse_scalar(ring: Ring, text: str):
    return coerce_scalar(ring, ring.parse(text))


def sum_elems(items: Iterable, start=0):
    return reduce(lambda a, b: a + b, items, start)


# --- standard rings ------------------------------------------------------

ZZ = Ring(name="ZZ")
QQ = Ring(rational=True, name="QQ")


def laurent_ring(*names: str, rational: bool = False) -> Ring:
    return Ring(names, rational=rational)


def quotient_ring(modulus: Sequence[int], var: str = "x", extra: Sequence[str] = ()) -> Ring:
    """``Z[var]/(modulus)``, optionally with further Laurent variables."""
    return Ring((var, *extra), moduli={var: modulus})


def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 = prod_{d | n} Phi_d, so divide out the proper divisors
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _div_exact_univariate(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _div_exact_univariate(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        q[k] = c
        for j, dc in enumerate(den):
            num[k + j] -= c * dc
    if any(num):
        raise NonExactDivision("univariate division left a remainder")
    return q


def cyclotomic_ring(n: int, var: str = "a", extra: Sequence[str] = ()) -> Ring:
    return quotient_ring(cyclotomic_poly(n), var, extra)


GOLDEN = quotient_ring((-1, -1, 1), "x")
