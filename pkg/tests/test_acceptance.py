"""Acceptance battery: one test per criterion, each printing a pass/fail line.

Run alone with ``pytest tests/test_acceptance.py -v`` (the lines appear in
the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import pytest

from hecke_hopf import cli
from hecke_hopf.coxeter import dihedral
from hecke_hopf.heckehopf import kij_m2_element, kij_nullspace, same_integer_span

try:
    from tests.conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 0


def _run(number: int, title: str, budget_s: float, body) -> None:
    start = time.perf_counter()
    failures: list = []
    try:
        body(failures)
    except Exception as exc:
        failures.append({"error": f"{type(exc).__name__}: {exc}"})
    elapsed = time.perf_counter() - start
    if elapsed > budget_s:
        failures.append({"runtime_s": round(elapsed, 1), "budget_s": budget_s})
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{title}]: {status} ({elapsed:.1f}s, budget {budget_s:.0f}s)"
    if failures:
        line += f" first failure: {str(failures[0])[:300]}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not failures, line


def _collect(failures: list, reports) -> None:
    for r in reports:
        if not r.ok:
            failures.append({"check": r.check_name, "instance": r.instance, "witness": r.witness})


def test_criterion_1_hopf_axioms():
    def body(failures):
        for name in ("A2", "A3", "I2(4)", "I2(5)", "I2(6)"):
            reports = cli.suite_hopf_axioms(name, samples=100, seed=SEED)
            _collect(failures, reports)
            if reports[1].details.get("samples") != 100:
                failures.append({"instance": name, "samples": reports[1].details})

    _run(1, "Hopf axioms", 60, body)


def test_criterion_2_kij_structure():
    def body(failures):
        S2, S3 = dihedral(2), dihedral(3)
        b2, b3 = kij_nullspace(S2), kij_nullspace(S3)
        if len(b2) != 1 or not same_integer_span(b2, [kij_m2_element(S2)]):
            failures.append({"m": 2, "basis": [str(x) for x in b2]})
        if len(b3) != 5:
            failures.append({"m": 3, "rank": len(b3)})
        # mutual membership with the five spanning elements is checked by the suite
        _collect(failures, cli.suite_kij(2) + cli.suite_kij(3))

    _run(2, "K_ij structure", 10, body)


def test_criterion_3_rank2_relations():
    def body(failures):
        for m in (2, 3, 4, 5, 6):
            reports = cli.suite_rank2(m)
            _collect(failures, reports)
            names = {r.check_name for r in reports}
            if m == 5 and "qij4_membership" not in names:
                failures.append({"m": 5, "missing": "qij4_membership"})

    _run(3, "rank-2 relations", 120, body)


def test_criterion_4_hecke_embedding():
    def body(failures):
        for name in ("A2", "A3", "B2"):
            reports = cli.suite_hecke_embed(name)
            _collect(failures, reports)
            if {r.check_name for r in reports} != {"hecke_quadratic", "hecke_braid_membership", "hecke_triangularity"}:
                failures.append({"instance": name, "checks": [r.check_name for r in reports]})

    _run(4, "Hecke embedding", 120, body)


def test_criterion_5_demazure_module():
    def body(failures):
        for name in ("A2", "A3", "B2", "G2"):
            reports = cli.suite_demazure(name, cli.cartan_for(name), maxdeg=5)
            _collect(failures, reports)
            if "demazure_rank2_annihilation" not in {r.check_name for r in reports}:
                failures.append({"instance": name, "missing": "demazure_rank2_annihilation"})

    _run(5, "Demazure module", 180, body)


def test_criterion_6_qybe():
    def body(failures):
        for k in (1, 2, 3):
            reports = cli.suite_qybe(k)
            _collect(failures, reports)
            got = {r.check_name for r in reports}
            if not {"psi_u_braiding_swap", "psi_u_braiding_hecke"} <= got:
                failures.append({"k": k, "checks": sorted(got)})

    _run(6, "QYBE factory", 120, body)


def test_criterion_7_taft():
    def body(failures):
        _collect(failures, cli.suite_taft_binomial(6))
        for n in (2, 3, 4):
            reports = cli.suite_taft(n, samples=200, seed=SEED)
            _collect(failures, reports)
            basis = [r for r in reports if r.check_name == "taft_free_basis"]
            if not basis or basis[0].details.get("rank") != n * n:
                failures.append({"n": n, "free_basis": [r.details for r in basis]})

    _run(7, "generalized Taft algebras", 60, body)


def test_criterion_8_partial_derivatives():
    def body(failures):
        for name in ("A2", "I2(4)"):
            _collect(failures, cli.suite_partials(name, samples=200, seed=SEED))

    _run(8, "partial derivatives", 60, body)


def test_criterion_9_fk_dimensions():
    want = {"A2": [1, 3, 4, 3, 1, 0], "A1xA1": [1, 2, 1, 0, 0, 0]}

    def body(failures):
        for name, dims in want.items():
            (rep,) = cli.suite_fk_dims(name, maxdeg=5)
            _collect(failures, [rep])
            if rep.details["dims"] != dims:
                failures.append({"instance": name, "dims": rep.details["dims"]})
        a2 = cli.suite_fk_dims("A2", maxdeg=5)[0]
        if a2.details["total"] != 12:
            failures.append({"instance": "A2", "total": a2.details["total"]})

    _run(9, "FK graded dimensions", 30, body)


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
