from __future__ import annotations

import pytest
from hypothesis import given, settings

from hecke_hopf.coxeter import dihedral, named_system
from hecke_hopf.heckehopf import (
    HHAlgebra,
    Member,
    NotFoundUpTo,
    OddConstraintViolation,
    all_partials,
    check_certificate,
    defining_relations,
    delta_ij,
    ds_derivation,
    ds_derivation_conjugation,
    from_records,
    hecke_T,
    hecke_Tw,
    hh_antipode,
    hh_bar,
    hh_counit,
    hh_theta,
    hopf_axiom_failures,
    ideal_member,
    in_kij,
    kij_m2_element,
    kij_m3_spanning,
    kij_nullspace,
    kij_relation_set,
    nc_to_hh,
    partial_derivative,
    partial_recursive,
    qij4_element,
    rank2_conjugation_failures,
    rank2_legal_indices,
    rank2_Q,
    rank2_R,
    same_integer_span,
    simply_laced_relations,
    to_records,
    tw_triangularity,
    w_action,
)
from hecke_hopf.rings import laurent_ring

from tests.strategies import hh_elements

A2 = named_system("A2")
I24 = dihedral(4)
FAST = settings(max_examples=25, deadline=None)


@given(hh_elements(A2), hh_elements(A2), hh_elements(A2))
@FAST
def test_product_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(hh_elements(A2, max_degree=2))
@FAST
def test_hopf_axioms_a2(x):
    assert hopf_axiom_failures(x) == []


@given(hh_elements(I24, max_degree=2))
@FAST
def test_hopf_axioms_i24(x):
    assert hopf_axiom_failures(x) == []


@given(hh_elements(A2, max_degree=2), hh_elements(A2, max_degree=2))
@FAST
def test_counit_and_antipode_versus_products(x, y):
    assert hh_counit(x * y) == hh_counit(x) * hh_counit(y)
    assert hh_antipode(x * y) == hh_antipode(y) * hh_antipode(x)


@given(hh_elements(A2, max_degree=2), hh_elements(A2, max_degree=2))
@FAST
def test_bar_and_theta(x, y):
    assert hh_bar(hh_bar(x)) == x
    assert hh_bar(x * y) == hh_bar(y) * hh_bar(x)
    assert hh_theta(hh_theta(x)) == x
    assert hh_theta(x * y) == hh_theta(x) * hh_theta(y)


def test_generator_relations_small():
    alg = HHAlgebra(A2)
    s1, D1 = alg.s(0), alg.D(0)
    assert D1 * D1 == D1
    assert s1 * s1 == alg.one()
    # s_i D_i = 1 - s_i + ... pushes to the normal form with the opposite D
    assert s1 * D1 == -alg.one() + s1 - D1 * s1


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2", "I2(5)"])
def test_presentation_holds_in_normal_form(name):
    S = named_system(name)
    for label, r in defining_relations(S):
        assert not nc_to_hh(S, r), label


@pytest.mark.parametrize("name", ["A2", "A1xA1"])
def test_quotient_relations_lie_in_the_kij_ideal(name):
    S = named_system(name)
    rels = kij_relation_set(S)
    for label, r in simply_laced_relations(S):
        x = nc_to_hh(S, r)
        assert x, label
        res = ideal_member(x, rels, 3)
        assert isinstance(res, Member), label
        assert check_certificate(x, rels, res)


@given(hh_elements(A2, d_part=True), hh_elements(A2, max_degree=2, d_part=True))
@FAST
def test_w_action_is_an_algebra_action(x, y):
    for w in range(A2.size):
        assert w_action(w, x * y) == w_action(w, x) * w_action(w, y)
        for v in range(A2.size):
            assert w_action(A2.mul(w, v), x) == w_action(w, w_action(v, x))


@given(hh_elements(A2, d_part=True), hh_elements(A2, max_degree=2, d_part=True))
@FAST
def test_ds_derivation_two_routes_and_leibniz(x, y):
    for i in range(A2.rank):
        s = A2.simple(i)
        assert ds_derivation(s, x) == ds_derivation_conjugation(i, x)
        assert ds_derivation(s, x * y) == ds_derivation(s, x) * y + w_action(s, x) * ds_derivation(s, y)


@pytest.mark.parametrize("system", [A2, I24], ids=["A2", "I2(4)"])
def test_partials_direct_vs_recursive(system):
    import random

    from hecke_hopf.heckehopf import random_element

    rng = random.Random(7)
    for _ in range(15):
        x = random_element(system, rng, max_degree=3, d_part=True)
        for g in range(system.size):
            for h in range(system.size):
                assert partial_derivative(g, h, x) == partial_recursive(g, h, x)


@given(hh_elements(A2, max_degree=2, d_part=True), hh_elements(A2, max_degree=2, d_part=True))
@FAST
def test_partials_product_rule(x, y):
    for g in range(A2.size):
        want: dict = {}
        for w, a in all_partials(g, x).items():
            for h, b in all_partials(w, y).items():
                want[h] = want[h] + a * b if h in want else a * b
        assert {h: v for h, v in want.items() if v} == all_partials(g, x * y)


# --- coideals K_ij and the rank-two families ---------------------------------------


def test_kij_m2_is_rank_one():
    basis = kij_nullspace(dihedral(2))
    assert len(basis) == 1
    assert same_integer_span(basis, [kij_m2_element(dihedral(2))])


def test_kij_m3_is_rank_five_and_matches_spanning_set():
    S = dihedral(3)
    basis = kij_nullspace(S)
    assert len(basis) == 5
    spanning = kij_m3_spanning(S)
    assert all(in_kij(x) for x in spanning)
    assert same_integer_span(basis, spanning)


def test_kij_m3_literal_fourth_element_is_not_in_k():
    literal = kij_m3_spanning(dihedral(3), literal=True)
    assert [in_kij(x) for x in literal] == [True, True, True, False, True]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_delta_in_k(m):
    S = dihedral(m)
    assert in_kij(delta_ij(S, 1, 1))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_rank2_families_in_k(m):
    S = dihedral(m)
    qs, rs = rank2_legal_indices(m)
    for n, r, p in qs:
        assert in_kij(rank2_Q(S, n, r, p))
    for n, r, t in rs:
        assert in_kij(rank2_R(S, n, r, t))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_rank2_conjugation_identities(m):
    assert rank2_conjugation_failures(dihedral(m)) == []


def test_qij4_in_k_for_m5():
    assert in_kij(qij4_element(dihedral(5)))


def test_generic_element_is_not_in_k():
    alg = HHAlgebra(dihedral(3))
    assert not in_kij(alg.D(0))


# --- ideal membership ----------------------------------------------------------------


def test_ideal_membership_certificate():
    alg = HHAlgebra(A2)
    rels = kij_relation_set(A2)
    k = kij_m3_spanning(A2)
    x = k[0] * alg.D(0) + alg.s(1) * k[1]
    res = ideal_member(x, rels, 3)
    assert isinstance(res, Member)
    assert check_certificate(x, rels, res)


def test_ideal_non_members_are_bounded_answers():
    alg = HHAlgebra(A2)
    rels = kij_relation_set(A2)
    assert isinstance(ideal_member(alg.D(0), rels, 3), NotFoundUpTo)
    assert isinstance(ideal_member(alg.one(), rels, 3), NotFoundUpTo)


# --- Hecke algebra ------------------------------------------------------------------


def test_hecke_quadratic_relation():
    ring = laurent_ring("q")
    q = ring.gen("q")
    for i in range(A2.rank):
        t = hecke_T(A2, i, q, ring)
        assert t * t == t * (1 - q) + q


def test_hecke_odd_parameters_must_agree():
    with pytest.raises(OddConstraintViolation):
        hecke_Tw(A2, [0, 1], {0: 2, 1: 3})


def test_hecke_unequal_parameters_for_even_m():
    ring = laurent_ring("q", "r")
    q = {0: ring.gen("q"), 1: ring.gen("r")}
    for w in range(I24.size):
        assert tw_triangularity(I24, w, q, ring).ok


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_tw_triangularity(name):
    S = named_system(name)
    ring = laurent_ring("q")
    for w in range(S.size):
        assert tw_triangularity(S, w, ring.gen("q"), ring).ok


@given(hh_elements(A2))
@FAST
def test_records_round_trip(x):
    assert from_records(A2, to_records(x)) == x


def test_hopf_check_detects_a_wrong_antipode(monkeypatch):
    import random

    import hecke_hopf.heckehopf as hh

    monkeypatch.setattr(hh, "hh_antipode", lambda x: x)
    rng = random.Random(0)
    xs = [hh.random_element(A2, rng) for _ in range(20)]
    assert any("left antipode" in hh.hopf_axiom_failures(x) for x in xs)
