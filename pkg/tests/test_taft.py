from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_hopf.rings import laurent_ring
from hecke_hopf.taft import (
    OutOfRange,
    TaftAlgebra,
    check_taft,
    coaction_image_rank,
    f_nab,
    functional_coeffs,
    functional_relations,
    generalized_binomial_check,
    parameter_diagnostic,
    qbinom,
    qbinom_by_product,
)

Q = laurent_ring("q")
q = Q.gen("q")


def test_qbinom_4_2():
    assert qbinom(4, 2) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4


@given(st.integers(0, 9), st.integers(0, 9))
@settings(max_examples=40, deadline=None)
def test_qbinom_pascal_matches_product(n, k):
    if k > n:
        return
    assert qbinom(n, k) == qbinom_by_product(n, k)
    assert qbinom(n, k, 1) == comb(n, k)


def test_f_nab_small():
    R = TaftAlgebra(3).ring
    a, b = R.gen("a"), R.gen("b")
    assert f_nab(1, R) == [0, 1]
    f3 = f_nab(3, R)
    # x (x - b)(x - b - a b), expanded low degree first
    assert f3 == [0, b ** 2 + a * b ** 2, -2 * b - a * b, 1]


def test_functional_coefficients_quadratic():
    R = laurent_ring("b")
    b = R.gen("b")
    y0, y1, y2 = functional_coeffs([0, -b, 1], R)
    s, D = y2.gen(0, R, 2, y2.names), y2.gen(1, R, 2, y2.names)
    assert y0 == D * D - b * D
    assert y1 == s * D + D * s - b * s
    assert y2 == s * s


def test_functional_relations_quadratic():
    R = laurent_ring("b")
    b = R.gen("b")
    rels = functional_relations([0, -b, 1], R)
    assert len(rels) == 3
    assert str(rels[-1]) == "(-1)*1 + (1)*s*s"
    assert functional_relations([R.one], R) == []


def test_taft_n2_b1_commutation():
    T = TaftAlgebra(2, 1)
    sD = T.mul(T.s(), T.D())
    want = T.add(T.add(T.scale(T.one(), -1), T.s()), T.scale(T.mul(T.D(), T.s()), -1))
    assert sD == want


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_taft_defining_relations(n):
    T = TaftAlgebra(n)
    s, D = T.s(), T.D()
    assert T.power(s, n) == T.one()
    s_inv = T.power(s, n - 1)
    lhs = T.mul(T.mul(s, D), s_inv)
    rhs = T.add(T.scale(D, T.a), T.scale(T.add(T.one(), T.scale(s, -1)), T.b))
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_check_taft_passes(n):
    reports = check_taft(TaftAlgebra(n), samples=30, seed=n)
    assert [r.check_name for r in reports] == [
        "taft_free_basis", "taft_associativity", "taft_generalized_relations", "taft_functional_relations",
    ]
    assert all(r.ok for r in reports), [r.witness for r in reports if not r.ok]


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_taft_associativity_random(seed):
    T = TaftAlgebra(3)
    rng = random.Random(seed)
    x, y, z = (T.random_element(rng) for _ in range(3))
    assert T.mul(T.mul(x, y), z) == T.mul(x, T.mul(y, z))


@pytest.mark.parametrize("n", range(7))
def test_generalized_binomial(n):
    assert generalized_binomial_check(n).ok


def test_binomial_range():
    with pytest.raises(OutOfRange):
        generalized_binomial_check(13)
    with pytest.raises(OutOfRange):
        TaftAlgebra(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coaction_rank(n):
    assert coaction_image_rank(TaftAlgebra(n)) == n


def test_parameter_diagnostic():
    assert parameter_diagnostic(3, 2)["forces_D_zero"]
    assert not parameter_diagnostic(2, -1)["forces_D_zero"]
