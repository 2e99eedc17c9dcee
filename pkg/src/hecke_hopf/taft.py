"""Cyclic Hecke-Hopf algebras and generalized Taft algebras.

``H_f`` is generated by s and D with s^n = 1 (n = deg f) and the functional
relation f(ts + D) = f(t) for a central variable t.  The generalized Taft
algebra ``H_n(a, b)`` takes f = x(x - b)(x - b(1 + a))... and adds
s D s^-1 = aD + b(1 - s).  When a is a primitive n-th root of unity it is a
free module with basis D^i s^j (0 <= i, j < n) and D satisfies the single
monic relation D(aD + b)(a^2 D + b(1 + a))... = 0.

The coefficient ring is (Z[a]/Phi_n(a))[b] with b formal, or Z[a]/Phi_n(a)
with b fixed to an integer.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Iterable, Sequence

from .freealg import NCElement
from .report import VerificationReport, make_report
from .rings import Ring, RingElem, coerce_scalar, cyclotomic_ring, exact_divide, laurent_ring

S, D = 0, 1
NAMES = ("s", "D")


class TaftError(Exception):
    pass


class OutOfRange(TaftError):
    pass


def _q_ring(q) -> tuple[Ring, object]:
    if q is None:
        ring = laurent_ring("q")
        return ring, ring.gen("q")
    if isinstance(q, RingElem):
        return q.ring, q
    return laurent_ring("q"), q


def q_integer(i: int, q) -> object:
    """[i]_q = 1 + q + ... + q^(i-1)."""
    out = 0 * q
    term = 1 + 0 * q
    for _ in range(i):
        out = out + term
        term = term * q
    return out


def qbinom(n: int, k: int, q=None):
    """Gaussian binomial coefficient via the q-Pascal rule
    [n, k] = [n-1, k-1] + q^k [n-1, k]."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    _, q = _q_ring(q)
    one = 1 + 0 * q
    row = [one]
    for m in range(1, n + 1):
        new = [one] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1] + q ** j * row[j]
        row = new
    return row[k]


def qbinom_by_product(n: int, k: int):
    """The same coefficient as prod (q^(n+1-i) - 1) / (q^i - 1), by exact
    polynomial division in Z[q]."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    ring = laurent_ring("q")
    q = ring.gen("q")
    num, den = ring.one, ring.one
    for i in range(1, k + 1):
        num = num * (q ** (n + 1 - i) - 1)
        den = den * (q ** i - 1)
    return exact_divide(num, den)


# --- polynomials with ring coefficients (lists, low degree first) ------------------


def _poly_mul(f: Sequence, g: Sequence) -> list:
    out = [0 * f[0]] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def f_nab(n: int, ring: Ring | None = None) -> list:
    """Coefficients of x (x - b) (x - b(1+a)) ... (x - b(1 + ... + a^(n-2))).

    ``ring`` must contain variables a and b (default Z[a, b]); the roots are
    b [k]_a for k = 0..n-1.
    """
    if n < 1:
        raise OutOfRange("n must be at least 1")
    if ring is None:
        ring = laurent_ring("a", "b")
    a, b = ring.gen("a"), ring.gen("b")
    f = [ring.one]
    for k in range(n):
        f = _poly_mul(f, [-b * q_integer(k, a), ring.one])
    return f


def functional_coeffs(f: Sequence, ring: Ring) -> list[NCElement]:
    """y_0..y_n with f(ts + D) = sum y_k t^k, t central, in the free algebra on s, D."""
    f = [coerce_scalar(ring, c) for c in f]
    while len(f) > 1 and not f[-1]:
        f = f[:-1]
    n = len(f) - 1
    zero = NCElement({}, ring, 2, NAMES)
    one = NCElement({(): 1}, ring, 2, NAMES)
    ts = NCElement({(S,): 1}, ring, 2, NAMES)
    dd = NCElement({(D,): 1}, ring, 2, NAMES)
    # power[k] = coefficient of t^k in (ts + D)^i
    power = [one]
    ys = [zero] * (n + 1)
    for i in range(n + 1):
        if f[i]:
            for k, c in enumerate(power):
                ys[k] = ys[k] + c * f[i]
        nxt = [zero] * (len(power) + 1)
        for k, c in enumerate(power):
            nxt[k] = nxt[k] + c * dd
            nxt[k + 1] = nxt[k + 1] + c * ts
        power = nxt
    return ys


def functional_relations(f: Sequence, ring: Ring) -> list[NCElement]:
    """Defining relations of H_f: y_k - f_k for k < n, then s^n - 1.
    A constant f gives no relations."""
    f = [coerce_scalar(ring, c) for c in f]
    while len(f) > 1 and not f[-1]:
        f = f[:-1]
    n = len(f) - 1
    if n == 0:
        return []
    ys = functional_coeffs(f, ring)
    rels = [ys[k] - NCElement({(): f[k]}, ring, 2, NAMES) for k in range(n)]
    rels.append(NCElement({(S,) * n: 1, (): -1}, ring, 2, NAMES))
    return rels


# --- the generalized binomial identity -----------------------------------------------


def generalized_f(n: int, t, x, p, q):
    """prod_{i<n} (t + q^i x + p [i]_q), with the empty product equal to 1."""
    out = 1 + 0 * q
    for i in range(n):
        out = out * (t + q ** i * x + p * q_integer(i, q))
    return out


def generalized_binomial_check(n: int, bound: int = 12) -> VerificationReport:
    """f_n(t, x) = sum_k [n, k]_q f_k(0, x) f_{n-k}(t, 0) in Z[t, x, p, q]."""
    if not 0 <= n <= bound:
        raise OutOfRange(f"n={n} outside 0..{bound}")
    start = time.perf_counter()
    ring = laurent_ring("t", "x", "p", "q")
    t, x, p, q = ring.gens()
    lhs = generalized_f(n, t, x, p, q)
    rhs = ring.zero
    for k in range(n + 1):
        rhs = rhs + qbinom(n, k, q) * generalized_f(k, 0, x, p, q) * generalized_f(n - k, t, 0, p, q)
    failures = [] if lhs == rhs else [{"difference": str(lhs - rhs)}]
    return make_report("generalized_binomial", f"n={n}", failures, start)


# --- generalized Taft algebras ------------------------------------------------------


class TaftAlgebra:
    """H_n(a, b) over Z[a]/Phi_n(a), with b formal (``b=None``) or an integer.

    Elements are dicts {(i, j): c} meaning sum c D^i s^j.
    """

    def __init__(self, n: int, b: int | None = None):
        if n < 1:
            raise OutOfRange("n must be at least 1")
        self.n = n
        if b is None:
            self.ring = cyclotomic_ring(n, "a", extra=("b",))
            self.b = self.ring.gen("b")
        else:
            self.ring = cyclotomic_ring(n, "a")
            self.b = self.ring(b)
        self.a = self.ring.gen("a")
        self.basis = [(i, j) for i in range(n) for j in range(n)]
        # [j]_a for the conjugation s^j D s^-j = a^j D + b [j]_a (1 - s)
        self._qint = [q_integer(j, self.a) for j in range(n + 1)]
        self.d_relation = self._monic_relation()

    def __repr__(self) -> str:
        return f"TaftAlgebra(n={self.n}, {self.ring.name})"

    def _monic_relation(self) -> list:
        """Coefficients of D^n in terms of lower powers: D^n = sum c_k D^k."""
        rel = [self.ring.one]
        for k in range(self.n):
            rel = _poly_mul(rel, [self.b * self._qint[k], self.a ** k])
        # the leading coefficient a^(n(n-1)/2) is a unit since a^n = 1
        lead_inv = self.a ** ((-(self.n * (self.n - 1) // 2)) % self.n)
        rel = [c * lead_inv for c in rel]
        if rel[-1] != self.ring.one:
            raise TaftError("the D-relation did not normalize to a monic polynomial")
        return [-c for c in rel[:-1]]

    # element constructors
    def element(self, terms) -> dict:
        out = {}
        for (i, j), c in dict(terms).items():
            c = self.ring(c)
            if c:
                out[(i, j % self.n)] = out.get((i, j % self.n), self.ring.zero) + c
        return self._reduce(out)

    def one(self) -> dict:
        return {(0, 0): self.ring.one}

    def s(self) -> dict:
        return self.element({(0, 1): 1})

    def D(self) -> dict:
        return self.element({(1, 0): 1})

    def _reduce(self, terms: dict) -> dict:
        """Clear zeros and rewrite D^i for i >= n using the monic relation."""
        terms = {k: c for k, c in terms.items() if c}
        n = self.n
        while True:
            high = [k for k in terms if k[0] >= n]
            if not high:
                return terms
            i, j = max(high)
            c = terms.pop((i, j))
            for k, rc in enumerate(self.d_relation):
                if rc:
                    key = (i - n + k, j)
                    v = terms.get(key, self.ring.zero) + c * rc
                    if v:
                        terms[key] = v
                    else:
                        terms.pop(key, None)

    def _right_s(self, x: dict) -> dict:
        return {(i, (j + 1) % self.n): c for (i, j), c in x.items()}

    def _right_d(self, x: dict) -> dict:
        # D^i s^j D = a^j D^(i+1) s^j + b [j]_a D^i s^j - b [j]_a D^i s^(j+1)
        out: dict = {}
        n = self.n

        def add(key, v):
            v = out.get(key, self.ring.zero) + v
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        for (i, j), c in x.items():
            add((i + 1, j), c * self.a ** j)
            shift = self.b * self._qint[j]
            if shift:
                add((i, j), c * shift)
                add((i, (j + 1) % n), -c * shift)
        return self._reduce(out)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (k, l), c in y.items():
            part = x
            for _ in range(k):
                part = self._right_d(part)
            for _ in range(l):
                part = self._right_s(part)
            for key, v in part.items():
                w = out.get(key, self.ring.zero) + v * c
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def add(self, x: dict, y: dict) -> dict:
        out = dict(x)
        for k, c in y.items():
            v = out.get(k, self.ring.zero) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def scale(self, x: dict, c) -> dict:
        c = self.ring(c)
        return {k: v * c for k, v in x.items() if v * c}

    def power(self, x: dict, e: int) -> dict:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, x)
        return out

    def evaluate(self, w: NCElement) -> dict:
        """Image of a combination of words in s (generator 0) and D (generator 1)."""
        gens = [self.s(), self.D()]
        out: dict = {}
        for word, c in w.terms.items():
            term = self.one()
            for g in word:
                term = self.mul(term, gens[g])
            out = self.add(out, self.scale(term, c))
        return out

    def random_element(self, rng: random.Random, nterms: int = 4) -> dict:
        out: dict = {}
        for _ in range(nterms):
            key = (rng.randrange(self.n), rng.randrange(self.n))
            c = rng.choice([-2, -1, 1, 2]) * self.a ** rng.randrange(self.n)
            if self.ring.nvars > 1:
                c = c * self.b ** rng.randrange(2)
            out = self.add(out, {key: c})
        return out

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for (i, j), c in sorted(x.items()):
            mono = "*".join(p for p in (f"D^{i}" if i else "", f"s^{j}" if j else "") if p) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def taft_mul(alg: TaftAlgebra, x: dict, y: dict) -> dict:
    return alg.mul(x, y)


def generalized_taft_relations(alg: TaftAlgebra) -> list[tuple[int, dict]]:
    """[n, k]_a D (aD + b) ... (a^(k-1) D + b [k-1]_a) for k = 1..n, as elements."""
    out = []
    prod = alg.one()
    dd = alg.D()
    for k in range(1, alg.n + 1):
        i = k - 1
        factor = alg.add(alg.scale(dd, alg.a ** i), alg.scale(alg.one(), alg.b * q_integer(i, alg.a)))
        prod = alg.mul(prod, factor)
        out.append((k, alg.scale(prod, qbinom(alg.n, k, alg.a))))
    return out


def check_taft(alg: TaftAlgebra, samples: int = 200, seed: int = 0) -> list[VerificationReport]:
    """Freeness (regular representation), associativity on random triples,
    the generalized relations and the functional relations of f_n^{a,b}."""
    reports = []
    n = alg.n
    inst = f"n={n} {alg.ring.name}"

    # the right-multiplication operators must satisfy the defining relations,
    # then the n^2 words D^i s^j applied to 1 give n^2 distinct basis vectors
    start = time.perf_counter()
    failures = []
    for key in alg.basis:
        x = {key: alg.ring.one}
        checks = {
            "s^n = 1": (alg.mul(x, alg.power(alg.s(), n)), x),
            "s D s^-1 = aD + b(1-s)": (
                alg.mul(alg.mul(alg.mul(x, alg.s()), alg.D()), alg.power(alg.s(), n - 1)),
                alg.mul(x, alg.add(alg.scale(alg.D(), alg.a), alg.scale(alg.add(alg.one(), alg.scale(alg.s(), -1)), alg.b))),
            ),
        }
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                failures.append({"relation": name, "basis": list(key)})
    images = {tuple(sorted(alg.mul(alg.one(), {key: alg.ring.one}).items())) for key in alg.basis}
    if len(images) != n * n:
        failures.append({"relation": "basis images", "distinct": len(images)})
    reports.append(make_report("taft_free_basis", inst, failures, start, rank=len(images)))

    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        x, y, z = (alg.random_element(rng) for _ in range(3))
        if alg.mul(alg.mul(x, y), z) != alg.mul(x, alg.mul(y, z)):
            failures.append({"x": alg.format(x), "y": alg.format(y), "z": alg.format(z)})
    reports.append(make_report("taft_associativity", inst, failures, start, samples=samples))

    start = time.perf_counter()
    failures = [{"k": k, "value": alg.format(v)} for k, v in generalized_taft_relations(alg) if v]
    reports.append(make_report("taft_generalized_relations", inst, failures, start))

    start = time.perf_counter()
    failures = []
    for idx, rel in enumerate(functional_relations(f_nab(n, alg.ring), alg.ring)):
        val = alg.evaluate(rel)
        if val:
            failures.append({"relation": idx, "value": alg.format(val)})
    reports.append(make_report("taft_functional_relations", inst, failures, start))
    return reports


def coaction_image_rank(alg: TaftAlgebra, c=1) -> int:
    """Rank of span{(cs + D)^k : k < n} in H_n(a, b).

    (cs + D)^k has D-degree exactly k with coefficient 1 at D^k s^0, so the
    powers are triangular with unit pivots; the rank is the number of k for
    which that pivot is confirmed.
    """
    x = alg.add(alg.scale(alg.s(), c), alg.D())
    rank = 0
    for k in range(alg.n):
        p = alg.power(x, k)
        top = max(i for i, _ in p) if p else -1
        if top == k and p.get((k, 0)) == alg.ring.one:
            rank += 1
    return rank


def parameter_diagnostic(n: int, a) -> dict:
    """Classify a rational parameter a.  Over a field the k = 1 relation
    [n]_a D = 0 forces D = 0 whenever [n]_a != 0, which happens exactly when
    a is not a nontrivial n-th root of unity."""
    a = Fraction(a)
    qn = sum(a ** i for i in range(n))
    return {
        "n": n,
        "a": str(a),
        "nth_root_of_unity": a ** n == 1,
        "q_integer": str(qn),
        "forces_D_zero": qn != 0,
    }
