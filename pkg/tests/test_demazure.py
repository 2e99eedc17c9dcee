from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_hopf.coxeter import CARTAN
from hecke_hopf.demazure import (
    CarrierMismatch,
    act_element,
    act_generator,
    check_normal_form_consistency,
    laurent_action,
    polynomial_action,
    verify_relations,
    windows,
)
from hecke_hopf.heckehopf import HHAlgebra, defining_relations, kij_nullspace, rank2_legal_indices, rank2_Q, rank2_R
from hecke_hopf.coxeter import named_system

P3 = polynomial_action(3)
B2 = laurent_action(CARTAN["B2"])


def poly_strategy(action, lo=0, hi=2):
    n = action.nvars
    mono = st.tuples(*[st.integers(lo, hi)] * n)
    return st.dictionaries(mono, st.integers(-3, 3), max_size=4).map(action.from_poly)


@given(poly_strategy(P3))
@settings(max_examples=40, deadline=None)
def test_polynomial_routes_agree(p):
    for i in range(P3.system.rank):
        assert act_generator(P3, "D_i", i, p) == act_generator(P3, "D_i", i, p, route="divide")


@given(poly_strategy(B2, -2, 2))
@settings(max_examples=40, deadline=None)
def test_laurent_routes_agree(p):
    for i in range(2):
        assert act_generator(B2, "D_i", i, p) == act_generator(B2, "D_i", i, p, route="divide")


@given(poly_strategy(P3))
@settings(max_examples=40, deadline=None)
def test_rank_one_relations_pointwise(p):
    for i in range(P3.system.rank):
        s = lambda y: act_generator(P3, "s_i", i, y)
        d = lambda y: act_generator(P3, "D_i", i, y)
        assert s(s(p)) == p
        assert d(d(p)) == d(p)
        assert s(d(p)) + d(s(p)) == s(p) - p


def test_two_variable_values():
    P = polynomial_action(2)
    x1, x2 = P.ring.gens()
    assert act_generator(P, "D_i", 0, x1) == -x2
    assert act_generator(P, "D_i", 0, x2) == x2
    assert act_generator(P, "D_i", 0, x1 * x2) == 0
    assert act_generator(P, "D_i", 0, P.ring.one) == 0


def test_element_action_matches_generator():
    alg = HHAlgebra(P3.system)
    x1 = P3.ring.gens()[0]
    assert act_element(P3, alg.D(0), x1 ** 2) == act_generator(P3, "D_i", 0, x1 ** 2)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_defining_relations_act_as_zero(name):
    action = laurent_action(CARTAN.get(name, [[2, -1], [-1, 2]]))
    assert verify_relations(action, defining_relations(action.system), 3).ok


def test_kij_acts_as_zero_on_a2():
    action = laurent_action([[2, -1], [-1, 2]])
    assert verify_relations(action, kij_nullspace(action.system), 4).ok


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_rank2_families_act_as_zero(name):
    action = laurent_action(CARTAN[name])
    m = action.system.m[0][1]
    qs, rs = rank2_legal_indices(m)
    rels = [rank2_Q(action.system, *a) for a in qs] + [rank2_R(action.system, *a) for a in rs]
    assert verify_relations(action, rels, 3).ok


def test_corrupted_relation_is_caught_with_witness():
    rels = defining_relations(B2.system)
    name, r = rels[0]
    from hecke_hopf.freealg import NCElement

    bump = NCElement({(B2.system.rank,): 1}, ngens=r.ngens)
    rep = verify_relations(B2, [(name, r + bump)], 2)
    assert not rep.ok
    assert rep.witness["relation"] == name
    assert "image" in rep.witness


def test_windows_are_invariant():
    for d, window in windows(B2, 3):
        ws = set(window)
        for e in window:
            for i in range(2):
                assert B2.reflect(i, e) in ws


def test_cartan_must_match_system():
    with pytest.raises(CarrierMismatch):
        laurent_action(CARTAN["B2"], named_system("A2"))


def test_normal_form_consistency():
    assert check_normal_form_consistency(named_system("A2"))
