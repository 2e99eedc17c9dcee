from __future__ import annotations

import random

import pytest

from hecke_hopf.coxeter import dihedral, named_system
from hecke_hopf.heckehopf import HHAlgebra, random_element
from hecke_hopf.nichols import (
    DegreeBoundExceeded,
    NicholsError,
    NotSimplyLaced,
    check_nichols_operator_relations,
    compatible_pairs,
    d0_relations,
    graded_dimension,
    hilbert_series,
)


def test_a2_dimensions():
    pres = d0_relations(named_system("A2"))
    assert pres.ngens == 3
    assert len(pres.relations) == 5
    dims = hilbert_series(pres, 5)
    assert dims == [1, 3, 4, 3, 1, 0]
    assert sum(dims) == 12


def test_a1xa1_dimensions():
    pres = d0_relations(named_system("A1xA1"))
    assert hilbert_series(pres, 3) == [1, 2, 1, 0]


@pytest.mark.parametrize("name", ["A2", "A1xA1"])
def test_two_routes_agree(name):
    pres = d0_relations(named_system(name))
    assert hilbert_series(pres, 4, method="rational") == hilbert_series(pres, 4, method="hnf")


def test_generator_order_does_not_matter():
    S = named_system("A2")
    base = hilbert_series(d0_relations(S), 4)
    for order in ([2, 1, 0], [1, 2, 0]):
        assert hilbert_series(d0_relations(S, order=order), 4) == base


def test_a3_low_degrees():
    pres = d0_relations(named_system("A3"))
    assert len(pres.relations) == 17
    # ordered pairs: 3 commuting pairs both ways, 8 braided pairs
    assert len(pres.compatible[2]) == 6
    assert len(pres.compatible[3]) == 8
    assert pres.incompatible_commuting == []
    assert hilbert_series(pres, 3) == [1, 6, 19, 42]


def test_compatible_pairs_are_symmetric():
    pairs = compatible_pairs(named_system("A3"))
    assert all((b, a) in pairs for a, b in pairs)


def test_errors():
    with pytest.raises(NotSimplyLaced):
        d0_relations(named_system("B2"))
    pres = d0_relations(named_system("A2"))
    with pytest.raises(DegreeBoundExceeded):
        graded_dimension(pres, 7)
    with pytest.raises(NicholsError):
        graded_dimension(pres, 2, method="sparse")
    with pytest.raises(NicholsError):
        d0_relations(named_system("A2"), order=[0, 0, 1])


@pytest.mark.parametrize("system", [named_system("A2"), dihedral(4)], ids=["A2", "I2(4)"])
def test_operator_relations(system):
    alg = HHAlgebra(system)
    rng = random.Random(3)
    samples = [alg.one()] + [alg.Dr(r) for r in range(system.nrefl)]
    samples += [random_element(system, rng, max_degree=3, d_part=True) for _ in range(10)]
    rep = check_nichols_operator_relations(system, samples)
    assert rep.ok, rep.witness
