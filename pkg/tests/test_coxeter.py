from __future__ import annotations

import pytest

from hecke_hopf.coxeter import (
    CARTAN,
    CoxeterSystem,
    InfiniteGroup,
    InvalidMatrix,
    coxeter_from_cartan,
    dihedral,
    named_system,
    subword_bruhat_oracle,
)

ORDERS = {
    "A1": (2, 1), "A2": (6, 3), "A3": (24, 6), "B3": (48, 9), "D4": (192, 12),
    "H3": (120, 15), "I2(5)": (10, 5), "B2": (8, 4), "G2": (12, 6), "A1xA1": (4, 2),
}


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_group_order_and_reflections(name):
    S = named_system(name)
    size, nrefl = ORDERS[name]
    assert S.size == size
    assert S.nrefl == nrefl
    # the longest element has length equal to the number of reflections
    assert S.length[S.longest_element()] == nrefl


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "I2(7)"])
def test_multiplication_tables(name):
    S = named_system(name)
    for w in range(S.size):
        assert S.mul(w, S.inv[w]) == 0
        for i in range(S.rank):
            assert S.rmul[i][w] == S.mul(w, S.simple(i))
            assert S.lmul[i][w] == S.mul(S.simple(i), w)
            assert abs(S.length[S.rmul[i][w]] - S.length[w]) == 1


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2", "I2(5)"])
def test_bruhat_agrees_with_subword_oracle(name):
    S = named_system(name)
    for v in range(S.size):
        for w in range(S.size):
            assert S.bruhat_leq(v, w) == subword_bruhat_oracle(S, v, w)


def test_chi_is_the_descent_sign():
    S = named_system("A3")
    for w in range(S.size):
        for r, t in enumerate(S.reflections):
            want = 1 if S.length[S.mul(w, t)] > S.length[w] else -1
            assert S.chi[w][r] == want


@pytest.mark.parametrize("m", [3, 5, 7])
def test_chi_parity_formula_for_odd_m(m):
    S = dihedral(m)
    for w in range(S.size):
        for r in range(S.nrefl):
            assert S.chi[w][r] == S.chi_parity_formula(w, r)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_chi_parity_formula_fails_for_even_m(m):
    S = dihedral(m)
    assert any(S.chi[w][r] != S.chi_parity_formula(w, r) for w in range(S.size) for r in range(S.nrefl))


def test_chi_parity_formula_differs_on_a3():
    S = named_system("A3")
    assert any(S.chi[w][r] != S.chi_parity_formula(w, r) for w in range(S.size) for r in range(S.nrefl))


def test_reflection_order_is_by_length():
    S = named_system("A3")
    lengths = [S.length[t] for t in S.reflections]
    assert lengths == sorted(lengths)


@pytest.mark.parametrize("name", sorted(CARTAN))
def test_cartan_systems(name):
    m = coxeter_from_cartan(CARTAN[name])
    assert m[0][1] in (4, 6)


def test_bad_matrices():
    with pytest.raises(InvalidMatrix):
        CoxeterSystem([[1, 3], [3, 1], [1]])
    with pytest.raises(InvalidMatrix):
        CoxeterSystem([[1, 3], [2, 1]])
    with pytest.raises(InfiniteGroup):
        CoxeterSystem([[1, 7, 2], [7, 1, 3], [2, 3, 1]], cap=500)


def test_words_and_names():
    S = named_system("A2")
    w0 = S.longest_element()
    assert S.element_name(w0) in ("s1s2s1", "s2s1s2")
    assert S.from_word((0, 1, 0)) == S.from_word((1, 0, 1)) == w0
    assert len(S.reduced_words(w0)) == 2
