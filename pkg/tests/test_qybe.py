from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_hopf.demazure import act_generator, polynomial_action
from hecke_hopf.qybe import (
    BraidingCandidate,
    ExactMatrix,
    HS3Structure,
    QYBEError,
    ShapeMismatch,
    check_hs3_structure,
    check_quadratic_braiding,
    demazure_hs3,
    demazure_two_variable,
    hecke_braiding,
    permutation_matrix,
    psi_u,
    swap_braiding,
)
from hecke_hopf.rings import RingMismatch, laurent_ring

small = st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2).map(ExactMatrix.from_rows)


@given(small, small, small, small)
@settings(max_examples=40, deadline=None)
def test_kron_mixed_product(a, b, c, d):
    assert (a @ b).kron(c @ d) == a.kron(c) @ b.kron(d)


def test_permutation_matrix_composes():
    p = permutation_matrix((2, 3, 2), (1, 2, 0))
    q = permutation_matrix((3, 2, 2), (1, 2, 0))
    r = permutation_matrix((2, 2, 3), (1, 2, 0))
    # three cyclic shifts return every factor to its slot
    assert r @ q @ p == ExactMatrix.identity(12)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        BraidingCandidate(2, ExactMatrix.identity(3))
    with pytest.raises(ShapeMismatch):
        HS3Structure(2, ExactMatrix.identity(4), ExactMatrix.identity(3))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_demazure_matrix_matches_polynomial_action(k):
    P = polynomial_action(2)
    x1, x2 = P.ring.gens()
    h = demazure_hs3(k)
    n = k + 1
    for a in range(n):
        for b in range(n):
            want = act_generator(P, "D_i", 0, x1 ** a * x2 ** b)
            col = h.d_mat.column(a * n + b)
            got = sum((c * x1 ** (i // n) * x2 ** (i % n) for i, c in col.items()), P.ring.zero)
            assert got == want
            assert demazure_two_variable(a, b) == {e: c for e, c in P.to_poly(want).items()}


def test_demazure_hs3_k1_values():
    h = demazure_hs3(1)
    # basis order 1, x2, x1, x1x2
    assert h.d_mat.column(2) == {1: -1}
    assert h.d_mat.column(1) == {1: 1}
    assert h.d_mat.column(3) == {}
    assert h.details["d_invariant"]


def test_negative_k_rejected():
    with pytest.raises(QYBEError):
        demazure_hs3(-1)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_demazure_hs3_passes(k):
    assert check_hs3_structure(demazure_hs3(k)).ok


def test_swap_with_zero_d_is_not_an_hs3_structure():
    h = HS3Structure(2, permutation_matrix((2, 2), (1, 0)), ExactMatrix(4, 4))
    rep = check_hs3_structure(h)
    assert not rep.ok
    assert rep.witness["relation"] == "sD + Ds = s - 1"


@pytest.mark.parametrize("du,dv", [(1, 2), (2, 2), (2, 3)])
def test_psi_u_of_trivial_structure_is_the_swap(du, dv):
    # with s the flip on U (x) U and D = 0, Psi_U is the flip of the two U (x) V factors
    h = HS3Structure(du, permutation_matrix((du, du), (1, 0)), ExactMatrix(du * du, du * du))
    got = psi_u(h, swap_braiding(dv), 1)
    assert got.psi == swap_braiding(du * dv).psi


def test_seeds():
    assert check_quadratic_braiding(swap_braiding(2), 1).ok
    c, q = hecke_braiding(3)
    assert check_quadratic_braiding(c, q).ok


def test_swap_with_generic_q_fails_quadratic():
    ring = laurent_ring("q")
    rep = check_quadratic_braiding(swap_braiding(2, ring), ring.gen("q"))
    assert not rep.ok
    assert rep.witness["equation"] == "quadratic"


@pytest.mark.parametrize("k", [1, 2])
def test_psi_u_is_a_quadratic_braiding(k):
    h = demazure_hs3(k)
    assert check_quadratic_braiding(psi_u(h, swap_braiding(2), 1), 1).ok
    c, q = hecke_braiding(2)
    assert check_quadratic_braiding(psi_u(h, c, q), q).ok


def test_psi_u_ring_mismatch():
    c, _ = hecke_braiding(2)
    other = laurent_ring("t")
    with pytest.raises(RingMismatch):
        psi_u(demazure_hs3(1), c, other.gen("t"))
