"""Hypothesis strategies for normal-form elements."""

from __future__ import annotations

from hypothesis import strategies as st

from hecke_hopf.heckehopf import HHElement


def d_words(nrefl: int, max_degree: int):
    return st.lists(st.integers(0, nrefl - 1), max_size=max_degree).map(tuple)


def hh_elements(system, max_degree: int = 3, max_terms: int = 4, d_part: bool = False):
    group = st.just(0) if d_part else st.integers(0, system.size - 1)
    term = st.tuples(d_words(system.nrefl, max_degree), group, st.integers(-3, 3))

    def build(terms):
        acc: dict = {}
        for u, w, c in terms:
            acc[(u, w)] = acc.get((u, w), 0) + c
        return HHElement(system, acc)

    return st.lists(term, min_size=1, max_size=max_terms).map(build)
