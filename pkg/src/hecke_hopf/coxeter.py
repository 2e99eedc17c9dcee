"""Finite Coxeter systems with exact length bookkeeping.

Group elements are enumerated once by a breadth-first search over the
Cayley graph.  Elements are told apart by an exact faithful representation:
permutations for type A, rotation/reflection pairs for dihedral groups, the
integral root representation when a Cartan matrix is available and otherwise
the geometric representation over a cyclotomic (or golden ratio) ring.

After enumeration each element is identified with an integer id; ids follow
the ShortLex order of the elements' ShortLex-minimal reduced words, so the
identity is ``0`` and the simple reflections are ``1..rank``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from .rings import GOLDEN, Ring, cyclotomic_ring

DEFAULT_CAP = 50_000


class CoxeterError(Exception):
    pass


class InvalidMatrix(CoxeterError):
    pass


class InfiniteGroup(CoxeterError):
    pass


class SystemMismatch(CoxeterError):
    pass


class OutOfRange(CoxeterError):
    pass


def _check_coxeter_matrix(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(m)
    if n == 0:
        raise InvalidMatrix("empty Coxeter matrix")
    rows = tuple(tuple(int(x) for x in row) for row in m)
    for row in rows:
        if len(row) != n:
            raise InvalidMatrix("Coxeter matrix must be square")
    for i in range(n):
        if rows[i][i] != 1:
            raise InvalidMatrix(f"m_{i}{i} must be 1")
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                raise InvalidMatrix("Coxeter matrix must be symmetric")
            if i != j and rows[i][j] < 2:
                # m_ij = 0 (infinite order) is deliberately unsupported
                raise InvalidMatrix(f"m_{i}{j} = {rows[i][j]} is not a finite order >= 2")
    return rows


def coxeter_from_cartan(a: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if len(a[i]) != n:
                raise InvalidMatrix("Cartan matrix must be square")
            if i == j:
                if a[i][i] != 2:
                    raise InvalidMatrix("Cartan diagonal must be 2")
                row.append(1)
                continue
            if a[i][j] > 0:
                raise InvalidMatrix("off-diagonal Cartan entries must be <= 0")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise InvalidMatrix("a_ij = 0 must imply a_ji = 0")
            p = a[i][j] * a[j][i]
            if p > 3:
                raise InvalidMatrix(f"a_ij*a_ji = {p} gives an infinite dihedral group")
            row.append(2 + p if p <= 2 else 6)
        out.append(tuple(row))
    return tuple(out)


def _type_a_order(m: tuple[tuple[int, ...], ...]) -> list[int] | None:
    """Generators listed along the Dynkin path if the system is of type A."""
    n = len(m)
    nbrs = {i: [j for j in range(n) if j != i and m[i][j] != 2] for i in range(n)}
    for i in range(n):
        for j in nbrs[i]:
            if m[i][j] != 3:
                return None
    if any(len(v) > 2 for v in nbrs.values()):
        return None
    ends = [i for i in range(n) if len(nbrs[i]) <= 1]
    if n == 1:
        return [0]
    if sum(len(v) for v in nbrs.values()) != 2 * (n - 1) or not ends:
        return None
    order, prev, cur = [], None, ends[0]
    while cur is not None:
        order.append(cur)
        nxt = [j for j in nbrs[cur] if j != prev]
        prev, cur = cur, (nxt[0] if nxt else None)
    return order if len(order) == n else None


class _Rep:
    """Left action of the simple generators on hashable keys."""

    def __init__(self, identity, actions):
        self.identity = identity
        self.actions = actions


def _perm_rep(order: list[int]) -> _Rep:
    n = len(order)
    pos = {g: p for p, g in enumerate(order)}

    def act(i):
        p = pos[i]

        def f(key):
            # left multiplication s_i * w: relabel values p <-> p+1
            return tuple(p + 1 if v == p else p if v == p + 1 else v for v in key)

        return f

    return _Rep(tuple(range(n + 1)), [act(i) for i in range(n)])


def _dihedral_rep(m: int) -> _Rep:
    # (k, e) stands for r^k s_1^e with r = s_1 s_2
    def s1(key):
        k, e = key
        return ((-k) % m, 1 - e)

    def s2(key):
        k, e = key
        return ((-k - 1) % m, 1 - e)

    return _Rep((0, 0), [s1, s2])


def _matrix_rep(images: list[list[list]], zero, one) -> _Rep:
    """Geometric action given by ``images[i][j]`` = coordinates of s_i(alpha_j)."""
    n = len(images)

    def act(i):
        mat = images[i]

        def f(key):
            # key is the tuple of columns w(alpha_j); apply s_i to each column
            cols = []
            for col in key:
                new = [zero] * n
                for j, c in enumerate(col):
                    if c:
                        for k, a in enumerate(mat[j]):
                            if a:
                                new[k] = new[k] + a * c
                cols.append(tuple(new))
            return tuple(cols)

        return f

    ident = tuple(tuple(one if k == j else zero for k in range(n)) for j in range(n))
    return _Rep(ident, [act(i) for i in range(n)])


def _cartan_rep(a: Sequence[Sequence[int]]) -> _Rep:
    n = len(a)
    images = [
        [[(1 if k == j else 0) - (a[i][j] if k == i else 0) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return _matrix_rep(images, 0, 1)


def _geometric_rep(m: tuple[tuple[int, ...], ...]) -> _Rep:
    n = len(m)
    orders = {m[i][j] for i in range(n) for j in range(n) if i != j}
    if orders <= {2, 3}:
        ring = None
        c = {2: 0, 3: 1}
    elif orders <= {2, 3, 5}:
        ring = GOLDEN
        x = ring.gen("x")
        c = {2: ring.zero, 3: ring.one, 5: x}
    else:
        big = lcm(*orders)
        ring = cyclotomic_ring(2 * big, "z")
        z = ring.gen("z")
        # 2 cos(pi/k) = z^(M/k) + z^(2M - M/k) with z a primitive 2M-th root
        c = {k: z ** (big // k) + z ** (2 * big - big // k) for k in orders}
    zero = 0 if ring is None else ring.zero
    one = 1 if ring is None else ring.one
    images = []
    for i in range(n):
        rows = []
        for j in range(n):
            col = [zero] * n
            col[j] = one
            if i == j:
                col[i] = -one
            else:
                col[i] = col[i] + c[m[i][j]]
            rows.append(col)
        images.append(rows)
    return _matrix_rep(images, zero, one)


@dataclass(frozen=True)
class GroupElement:
    system: "CoxeterSystem"
    id: int

    @property
    def length(self) -> int:
        return self.system.length[self.id]

    @property
    def word(self) -> tuple[int, ...]:
        return self.system.words[self.id]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.system, self.system.inv[self.id])

    def __repr__(self) -> str:
        return self.system.element_name(self.id)

    def __hash__(self) -> int:
        return hash((id(self.system), self.id))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.system is self.system
            and other.id == self.id
        )


class CoxeterSystem:
    """A finite Coxeter group with enumerated elements and tables."""

    def __init__(
        self,
        coxeter_matrix: Sequence[Sequence[int]] | None = None,
        cartan_matrix: Sequence[Sequence[int]] | None = None,
        cap: int = DEFAULT_CAP,
        name: str | None = None,
    ):
        if coxeter_matrix is None and cartan_matrix is None:
            raise InvalidMatrix("need a Coxeter or a Cartan matrix")
        if cartan_matrix is not None:
            cartan = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
            derived = coxeter_from_cartan(cartan)
            if coxeter_matrix is not None and _check_coxeter_matrix(coxeter_matrix) != derived:
                raise InvalidMatrix("Cartan matrix does not match the Coxeter matrix")
            coxeter_matrix = derived
        else:
            cartan = None
        self.m = _check_coxeter_matrix(coxeter_matrix)
        self.cartan = cartan
        self.rank = len(self.m)
        self.name = name or f"W{list(map(list, self.m))}"
        self._enumerate(cap)
        self._build_reflections()

    # --- enumeration ------------------------------------------------------

    def _representation(self) -> _Rep:
        order = _type_a_order(self.m)
        if order is not None:
            return _perm_rep(order)
        if self.rank == 2:
            return _dihedral_rep(self.m[0][1])
        if self.cartan is not None:
            return _cartan_rep(self.cartan)
        return _geometric_rep(self.m)

    def _enumerate(self, cap: int) -> None:
        rep = self._representation()
        n = self.rank
        keys = [rep.identity]
        index = {rep.identity: 0}
        lengths = [0]
        words: list[tuple[int, ...]] = [()]
        frontier = [0]
        while frontier:
            # frontier holds the previous layer in ShortLex order of words
            new: dict = {}
            for w in frontier:
                for i in range(n):
                    key = rep.actions[i](keys[w])
                    if key in index:
                        continue
                    word = (i,) + words[w]
                    if key not in new or word < new[key]:
                        new[key] = word
            layer = sorted(new.items(), key=lambda kv: kv[1])
            frontier = []
            for key, word in layer:
                index[key] = len(keys)
                keys.append(key)
                words.append(word)
                lengths.append(len(word))
                frontier.append(index[key])
                if len(keys) > cap:
                    raise InfiniteGroup(f"more than {cap} elements; group treated as infinite")
        # Within a layer the candidate words are minimal over left descents,
        # which makes them the ShortLex-minimal reduced words.
        self.size = len(keys)
        self.length = lengths
        self.words = words
        lmul = [[0] * self.size for _ in range(n)]
        for w in range(self.size):
            for i in range(n):
                lmul[i][w] = index[rep.actions[i](keys[w])]
        self.lmul = lmul
        inv = [0] * self.size
        for w in range(self.size):
            x = 0
            for i in words[w]:
                x = lmul[i][x]
            inv[w] = x
        self.inv = inv
        self.rmul = [[inv[lmul[i][inv[w]]] for w in range(self.size)] for i in range(n)]
        self._mul_rows: dict[int, list[int]] = {}
        self._word_index = {w: k for k, w in enumerate(words)}

    # --- basic queries ----------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def simple(self, i: int) -> int:
        if not 0 <= i < self.rank:
            raise OutOfRange(f"generator index {i} out of range")
        return self.lmul[i][0]

    def element(self, w: int) -> GroupElement:
        return GroupElement(self, w)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, w) for w in range(self.size)]

    def from_word(self, word: Iterable[int]) -> int:
        x = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise OutOfRange(f"generator index {i} out of range")
            x = self.rmul[i][x]
        return x

    def element_by_reduced_word(self, word: Sequence[int]) -> int:
        return self.from_word(word)

    def mul(self, w: int, v: int) -> int:
        row = self._mul_rows.get(w)
        if row is None:
            if self.size <= 4096:
                row = self._full_row(w)
                self._mul_rows[w] = row
            else:
                x = w
                for i in self.words[v]:
                    x = self.rmul[i][x]
                return x
        return row[v]

    def _full_row(self, w: int) -> list[int]:
        row = [0] * self.size
        row[0] = w
        for v in range(1, self.size):
            word = self.words[v]
            # words[v] = (i,) + words[u] with u shorter; use w*v = (w*s_i)*u
            prefix = self._word_index[word[:-1]]
            row[v] = self.rmul[word[-1]][row[prefix]]
        return row

    def element_name(self, w: int) -> str:
        word = self.words[w]
        if not word:
            return "e"
        return "".join(f"s{i + 1}" for i in word)

    def left_descents(self, w: int) -> list[int]:
        return [i for i in range(self.rank) if self.length[self.lmul[i][w]] < self.length[w]]

    def right_descents(self, w: int) -> list[int]:
        return [i for i in range(self.rank) if self.length[self.rmul[i][w]] < self.length[w]]

    def longest_element(self) -> int:
        return max(range(self.size), key=lambda w: self.length[w])

    # --- reflections and cocycles -------------------------------------------

    def _build_reflections(self) -> None:
        refl = set()
        for w in range(self.size):
            for i in range(self.rank):
                refl.add(self.mul(self.mul(w, self.simple(i)), self.inv[w]))
        self.reflections = sorted(refl, key=lambda t: (self.length[t], t))
        self.refl_index = {t: k for k, t in enumerate(self.reflections)}
        nr = len(self.reflections)
        conj = [[0] * nr for _ in range(self.size)]
        chi = [[1] * nr for _ in range(self.size)]
        for w in range(self.size):
            winv = self.inv[w]
            lw = self.length[w]
            for r, t in enumerate(self.reflections):
                t2 = self.mul(self.mul(w, t), winv)
                r2 = self.refl_index[t2]
                conj[w][r] = r2
                chi_by_length = 1 if self.length[self.mul(w, t)] > lw else -1
                c = chi_by_length
                chi[w][r] = c
        self.conj = conj
        self.chi = chi

    def chi_parity_formula(self, w: int, r: int) -> int:
        """``(-1)^(l(w) + (l(wsw^-1) - l(s))/2)`` for the reflection with index r.

        This closed form agrees with the descent criterion used for ``chi``
        when every m_ij is odd, but not in general (I2(4), or commuting
        generators in A3, give opposite signs), so it is exposed for
        comparison only.
        """
        t = self.reflections[r]
        t2 = self.reflections[self.conj[w][r]]
        half = (self.length[t2] - self.length[t]) // 2
        return -1 if (self.length[w] + half) % 2 else 1

    @property
    def nrefl(self) -> int:
        return len(self.reflections)

    def simple_reflection_index(self, i: int) -> int:
        return self.refl_index[self.simple(i)]

    def bruhat_leq(self, v: int, w: int) -> bool:
        return _bruhat(self, v, w)

    def reduced_words(self, w: int) -> list[tuple[int, ...]]:
        """All reduced words of ``w`` (exhaustive; for oracles and tests)."""
        return _reduced_words(self, w)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name}, |W|={self.size})"


def _reduced_words(system: CoxeterSystem, w: int) -> list[tuple[int, ...]]:
    memo: dict[int, list[tuple[int, ...]]] = {0: [()]}

    def go(x: int) -> list[tuple[int, ...]]:
        if x in memo:
            return memo[x]
        out = []
        for i in system.left_descents(x):
            for rest in go(system.lmul[i][x]):
                out.append((i,) + rest)
        memo[x] = sorted(out)
        return memo[x]

    return go(w)


def _bruhat(system: CoxeterSystem, v: int, w: int) -> bool:
    cache = system.__dict__.setdefault("_bruhat_cache", {})
    key = (v, w)
    if key in cache:
        return cache[key]
    lv, lw = system.length[v], system.length[w]
    if lv > lw:
        res = False
    elif v == 0:
        res = True
    elif lv == lw:
        res = v == w
    else:
        i = system.left_descents(w)[0]
        sw = system.lmul[i][w]
        sv = system.lmul[i][v]
        if system.length[sv] < lv:
            res = _bruhat(system, sv, sw)
        else:
            res = _bruhat(system, v, sw)
    cache[key] = res
    return res


# --- functional API ---------------------------------------------------------

def build_system(
    coxeter_matrix: Sequence[Sequence[int]] | None = None,
    cartan_matrix: Sequence[Sequence[int]] | None = None,
    cap: int = DEFAULT_CAP,
    name: str | None = None,
) -> CoxeterSystem:
    return CoxeterSystem(coxeter_matrix, cartan_matrix, cap=cap, name=name)


def multiply(w: GroupElement, v: GroupElement) -> GroupElement:
    if w.system is not v.system:
        raise SystemMismatch("elements belong to different systems")
    return GroupElement(w.system, w.system.mul(w.id, v.id))


def conjugate_reflection(w: GroupElement, s: GroupElement) -> tuple[GroupElement, int, int]:
    """Return ``(w s w^-1, chi_{w,s}, sigma_{w,s})``."""
    if w.system is not s.system:
        raise SystemMismatch("elements belong to different systems")
    sys = w.system
    if s.id not in sys.refl_index:
        raise CoxeterError(f"{s} is not a reflection")
    r = sys.refl_index[s.id]
    t = sys.reflections[sys.conj[w.id][r]]
    chi = sys.chi[w.id][r]
    return GroupElement(sys, t), chi, (1 - chi) // 2


def bruhat_leq(v: GroupElement, w: GroupElement) -> bool:
    if w.system is not v.system:
        raise SystemMismatch("elements belong to different systems")
    return w.system.bruhat_leq(v.id, w.id)


def reflections(system: CoxeterSystem) -> list[GroupElement]:
    return [GroupElement(system, t) for t in system.reflections]


def alternating_word(i: int, j: int, length: int) -> tuple[int, ...]:
    return tuple(i if k % 2 == 0 else j for k in range(length))


def dihedral_dk(system: CoxeterSystem, i: int, j: int, k: int) -> GroupElement:
    """The reflection ``s_i s_j s_i ...`` with ``2k-1`` letters."""
    if i == j:
        raise OutOfRange("need two distinct generators")
    m = system.m[i][j]
    if not 1 <= k <= m:
        raise OutOfRange(f"k={k} outside 1..{m}")
    return GroupElement(system, system.from_word(alternating_word(i, j, 2 * k - 1)))


def subword_bruhat_oracle(system: CoxeterSystem, v: int, w: int) -> bool:
    """Bruhat comparison by scanning subwords of every reduced word of w."""
    target_words = set(system.reduced_words(v))
    for word in system.reduced_words(w):
        n = len(word)
        for mask in range(1 << n):
            sub = tuple(word[k] for k in range(n) if mask >> k & 1)
            if sub in target_words:
                return True
    return False


# --- named systems ----------------------------------------------------------

def _path_matrix(labels: Sequence[int]) -> list[list[int]]:
    n = len(labels) + 1
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for k, lab in enumerate(labels):
        m[k][k + 1] = m[k + 1][k] = lab
    return m


def dihedral(m: int) -> CoxeterSystem:
    return CoxeterSystem([[1, m], [m, 1]], name=f"I2({m})")


CARTAN = {
    "B2": [[2, -1], [-2, 2]],
    "C2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
    "G2t": [[2, -3], [-1, 2]],
}


def named_system(name: str) -> CoxeterSystem:
    """Systems by name: ``A<n>``, ``B<n>``, ``D<n>``, ``H3``, ``I2(m)``,
    ``A1xA1``, and Cartan-typed ``B2``/``C2``/``G2``/``G2t``."""
    key = name.replace(" ", "")
    if key in CARTAN:
        return CoxeterSystem(cartan_matrix=CARTAN[key], name=key)
    if key.startswith("I2(") and key.endswith(")"):
        return dihedral(int(key[3:-1]))
    if key == "A1xA1":
        return CoxeterSystem([[1, 2], [2, 1]], name=key)
    kind, rest = key[0], key[1:]
    if not rest.isdigit():
        raise InvalidMatrix(f"unknown system name {name!r}")
    n = int(rest)
    if kind == "A" and n >= 1:
        if n == 1:
            return CoxeterSystem([[1]], name=key)
        return CoxeterSystem(_path_matrix([3] * (n - 1)), name=key)
    if kind == "B" and n >= 2:
        return CoxeterSystem(_path_matrix([3] * (n - 2) + [4]), name=key)
    if kind == "D" and n >= 4:
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for k in range(n - 2):
            m[k][k + 1] = m[k + 1][k] = 3
        m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        return CoxeterSystem(m, name=key)
    if kind == "H" and n == 3:
        return CoxeterSystem(_path_matrix([5, 3]), name=key)
    raise InvalidMatrix(f"unknown system name {name!r}")
