from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_hopf.freealg import NCElement, count_square_free, nc_reduce_idempotent, square_free, square_free_words
from hecke_hopf.linalg import RowReducer, hnf, integer_kernel, rational_kernel

words = st.lists(st.integers(0, 2), max_size=4).map(tuple)
nc = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(lambda d: NCElement(d, ngens=3))


@given(nc, nc, nc)
@settings(max_examples=50, deadline=None)
def test_free_algebra_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(words)
def test_square_free_is_idempotent(w):
    u = square_free(w)
    assert square_free(u) == u
    assert all(x != y for x, y in zip(u, u[1:]))


def test_square_free_counts():
    for n in range(1, 4):
        for d in range(4):
            assert len(list(square_free_words(n, d))) == count_square_free(n, d)
    assert count_square_free(3, 3) == 12


def test_idempotent_contraction():
    x = NCElement({(0, 0, 1): 2, (1,): 1}, ngens=2)
    assert nc_reduce_idempotent(x) == NCElement({(0, 1): 2, (1,): 1}, ngens=2)


def test_hnf_small():
    assert hnf([[2, 4], [1, 3]]) == [[1, 1], [0, 2]]
    assert hnf([[2, 4], [1, 2]]) == [[1, 2]]


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_kernels_annihilate(rows):
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    for vec in integer_kernel(sparse, 4):
        assert all(sum(r[j] * vec[j] for j in range(4)) == 0 for r in rows)
    kern = rational_kernel(sparse, 4)
    red = RowReducer()
    for r in sparse:
        red.add(r)
    assert len(kern) + red.rank == 4
    for vec in kern:
        assert all(sum(Fraction(r[j]) * vec.get(j, 0) for j in range(4)) == 0 for r in rows)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_hnf_rank_matches_rational_rank(rows):
    red = RowReducer()
    for r in rows:
        red.add({j: v for j, v in enumerate(r) if v})
    assert len(hnf(rows)) == red.rank


def test_row_reducer_membership_with_certificate():
    red = RowReducer(track=True)
    red.add({"a": 1, "b": 1}, label="x")
    red.add({"b": 1, "c": 1}, label="y")
    assert red.contains({"a": 1, "c": -1})
    assert not red.contains({"a": 1})
