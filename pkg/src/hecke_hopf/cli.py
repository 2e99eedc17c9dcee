"""Command-line verification driver.

Every subcommand runs a family of checks and prints one JSON record per
check (NDJSON).  Exit status: 0 if nothing failed, 1 if some check failed,
2 for a bad invocation or configuration.

    hecke-hopf hopf-axioms --type A2
    hecke-hopf kij --m 3
    hecke-hopf rank2 --m 5
    hecke-hopf hecke-embed --type B2
    hecke-hopf demazure --cartan cartan.json --maxdeg 5
    hecke-hopf qybe --k 2
    hecke-hopf taft --n 3
    hecke-hopf fk-dims --type A2 --maxdeg 5
    hecke-hopf partials --type "I2(4)"
    hecke-hopf all --desk
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .coxeter import CARTAN, CoxeterSystem, dihedral, named_system
from .report import FAIL, PASS, VerificationReport, make_report

SYSTEM_KEYS = ("coxeter_matrix", "cartan", "name")

DEFAULT_CONFIG = {
    "seed": 0,
    "samples": 100,
    "partial_samples": 200,
    "taft_samples": 200,
    "demazure_maxdeg": 5,
    "fk_maxdeg": 5,
    "workers": min(4, os.cpu_count() or 1),
}


class ConfigError(Exception):
    pass


def load_config(path: str | None) -> dict:
    cfg = dict(DEFAULT_CONFIG)
    if path is None:
        return cfg
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - set(DEFAULT_CONFIG) - set(SYSTEM_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for k in SYSTEM_KEYS:
        if k in data:
            cfg[k] = data.pop(k)
    for k, v in data.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ConfigError(f"config value {k} must be a nonnegative integer")
    cfg.update(data)
    return cfg


def cartan_for(name: str) -> list[list[int]]:
    """Cartan matrices for the named crystallographic systems used here."""
    if name in CARTAN:
        return [list(r) for r in CARTAN[name]]
    if name == "A1xA1":
        return [[2, 0], [0, 2]]
    if name.startswith("A") and name[1:].isdigit():
        n = int(name[1:])
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    raise ConfigError(f"no Cartan matrix known for {name!r}")


def _matrix(data, what: str) -> list[list[int]]:
    if not (isinstance(data, list) and data and all(isinstance(r, list) and len(r) == len(data) for r in data)):
        raise ConfigError(f"{what} must be a square list of lists")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in data for x in r):
        raise ConfigError(f"{what} entries must be integers")
    return [list(r) for r in data]


def system_document(data) -> dict:
    """Normalize {"coxeter_matrix" | "cartan": [[...]], "name"?: str} (a bare
    matrix is read as a Cartan matrix)."""
    if isinstance(data, list):
        data = {"cartan": data}
    if not isinstance(data, dict) or not ("cartan" in data or "coxeter_matrix" in data):
        raise ConfigError("system document needs a coxeter_matrix or a cartan entry")
    doc = {}
    if "cartan" in data:
        doc["cartan"] = _matrix(data["cartan"], "Cartan matrix")
    if "coxeter_matrix" in data:
        doc["coxeter_matrix"] = _matrix(data["coxeter_matrix"], "Coxeter matrix")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ConfigError("name must be a string")
    doc["name"] = name or (f"cartan{doc['cartan']}" if "cartan" in doc else f"coxeter{doc['coxeter_matrix']}")
    return doc


def load_cartan(path: str) -> tuple[str, list[list[int]]]:
    """Read a system document from ``path``; Demazure actions need its Cartan matrix."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read Cartan file {path}: {exc}") from exc
    doc = system_document(data)
    if "cartan" not in doc:
        raise ConfigError("the Demazure action needs a cartan entry")
    _system(doc)
    return doc["name"], doc["cartan"]


def _system(system_ref) -> CoxeterSystem:
    """A system from a name such as "A2" or "I2(5)", or from a system document."""
    try:
        if isinstance(system_ref, dict):
            return CoxeterSystem(system_ref.get("coxeter_matrix"), system_ref.get("cartan"), name=system_ref["name"])
        return named_system(system_ref)
    except Exception as exc:
        raise ConfigError(f"bad system {system_ref!r}: {exc}") from exc


def _label(system_ref) -> str:
    return system_ref["name"] if isinstance(system_ref, dict) else system_ref


def _rename(reports: list[VerificationReport], instance: str) -> list[VerificationReport]:
    for r in reports:
        r.instance = instance if not r.instance else f"{instance}: {r.instance}"
    return reports


# --- suites ---------------------------------------------------------------------


def suite_hopf_axioms(type_name: str, samples: int = 100, seed: int = 0) -> list[VerificationReport]:
    from .heckehopf import HHAlgebra, hopf_axiom_failures, random_element

    system = _system(type_name)
    label = _label(type_name)
    alg = HHAlgebra(system)
    out = []
    start = time.perf_counter()
    gens = [("s", i, alg.s(i)) for i in range(system.rank)] + [("D", r, alg.Dr(r)) for r in range(system.nrefl)]
    failures = []
    for kind, idx, x in gens:
        for axiom in hopf_axiom_failures(x):
            failures.append({"generator": f"{kind}{idx}", "axiom": axiom})
    out.append(make_report("hopf_axioms_generators", label, failures, start, generators=len(gens)))
    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        x = random_element(system, rng, max_degree=3)
        for axiom in hopf_axiom_failures(x):
            failures.append({"element": str(x), "axiom": axiom})
    out.append(make_report("hopf_axioms_random", label, failures, start, samples=samples, seed=seed))
    return out


def suite_kij(m: int) -> list[VerificationReport]:
    from .heckehopf import (
        delta_ij,
        in_kij,
        kij_m2_element,
        kij_m3_spanning,
        kij_nullspace,
        same_integer_span,
    )

    system = dihedral(m)
    inst = f"I2({m})"
    out = []
    if m <= 4:
        start = time.perf_counter()
        basis = kij_nullspace(system)
        failures = [{"element": str(x)} for x in basis if not in_kij(x)]
        details = {"rank": len(basis), "basis": [str(x) for x in basis] if len(basis) <= 6 else None}
        expected = None
        if m == 2:
            expected = [kij_m2_element(system)]
        elif m == 3:
            expected = kij_m3_spanning(system)
        if expected is not None and not same_integer_span(basis, expected):
            failures.append({"expected_span": [str(x) for x in expected]})
        out.append(make_report("kij_nullspace", inst, failures, start, **details))
    start = time.perf_counter()
    c = 1
    d = delta_ij(system, c, c)
    failures = [] if in_kij(d) else [{"element": str(d)}]
    out.append(make_report("kij_delta_membership", inst, failures, start))
    return out


def suite_rank2(m: int) -> list[VerificationReport]:
    from .heckehopf import (
        in_kij,
        kij_nullspace,
        qij4_element,
        rank2_Q,
        rank2_R,
        rank2_conjugation_failures,
        rank2_legal_indices,
    )
    from .linalg import RowReducer

    system = dihedral(m)
    inst = f"I2({m})"
    out = []
    qs, rs = rank2_legal_indices(m)
    elems = [(f"Q{a}", rank2_Q(system, *a)) for a in qs] + [(f"R{a}", rank2_R(system, *a)) for a in rs]
    start = time.perf_counter()
    failures = [{"element": name} for name, x in elems if not in_kij(x)]
    route = "conjugation"
    if m <= 4:
        # second route: membership in the span of the computed nullspace
        red = RowReducer()
        for b in kij_nullspace(system):
            red.add(dict(b.terms))
        failures += [{"element": name, "route": "nullspace"} for name, x in elems if not red.contains(dict(x.terms))]
        route = "conjugation+nullspace"
    out.append(make_report("rank2_membership", inst, failures, start, elements=len(elems), route=route))
    start = time.perf_counter()
    failures = [{"identity": f} for f in rank2_conjugation_failures(system)]
    out.append(make_report("rank2_conjugation", inst, failures, start))
    if m == 5:
        start = time.perf_counter()
        x = qij4_element(system)
        out.append(make_report("qij4_membership", inst, [] if in_kij(x) else [{"element": str(x)}], start))
    return out


def suite_hecke_embed(type_name: str) -> list[VerificationReport]:
    from .heckehopf import (
        IdealSolver,
        Member,
        check_certificate,
        hecke_T,
        hecke_Tw,
        kij_relation_set,
        tw_triangularity,
    )
    from .rings import laurent_ring

    system = _system(type_name)
    label = _label(type_name)
    ring = laurent_ring("q")
    q = ring.gen("q")
    out = []
    start = time.perf_counter()
    failures = []
    for i in range(system.rank):
        t = hecke_T(system, i, q, ring)
        if t * t != t * (1 - q) + q:
            failures.append({"i": i})
    out.append(make_report("hecke_quadratic", label, failures, start))

    start = time.perf_counter()
    failures = []
    bound = max(system.m[i][j] for i in range(system.rank) for j in range(system.rank) if i != j) if system.rank > 1 else 1
    rels = kij_relation_set(system)
    solvers: dict[int, IdealSolver] = {}
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            m = system.m[i][j]
            lhs = hecke_Tw(system, [i if k % 2 == 0 else j for k in range(m)], q, ring)
            rhs = hecke_Tw(system, [j if k % 2 == 0 else i for k in range(m)], q, ring)
            diff = lhs - rhs
            if m not in solvers:
                solvers[m] = IdealSolver(system, rels, m)
            res = solvers[m].member(diff)
            if not isinstance(res, Member):
                failures.append({"pair": [i, j], "result": f"not found up to degree {m}"})
            elif not check_certificate(diff, rels, res):
                failures.append({"pair": [i, j], "result": "certificate does not recombine"})
    out.append(make_report("hecke_braid_membership", label, failures, start, max_bound=bound))

    start = time.perf_counter()
    failures = []
    for w in range(system.size):
        r = tw_triangularity(system, w, q, ring)
        if not r.ok:
            failures.append({"w": system.element_name(w), "witness": r.witness})
    out.append(make_report("hecke_triangularity", label, failures, start, elements=system.size))
    return out


def _rank2_pairs(system: CoxeterSystem):
    for i in range(system.rank):
        for j in range(i + 1, system.rank):
            yield i, j, system.m[i][j]


def suite_demazure(name: str, cartan: Sequence[Sequence[int]], maxdeg: int = 5) -> list[VerificationReport]:
    from .demazure import act_generator, laurent_action, verify_relations, windows
    from .heckehopf import defining_relations, kij_nullspace, rank2_legal_indices, rank2_Q, rank2_R

    action = laurent_action(cartan, CoxeterSystem(cartan_matrix=cartan, name=name))
    system = action.system
    out = [verify_relations(action, defining_relations(system), maxdeg, "demazure_defining_relations")]

    start = time.perf_counter()
    failures = []
    for d, window in windows(action, min(maxdeg, 2)):
        for e in window:
            p = action.monomial(e)
            for i in range(system.rank):
                a = act_generator(action, "D_i", i, p, route="monomial")
                b = act_generator(action, "D_i", i, p, route="divide")
                if a != b:
                    failures.append({"generator": f"D{i + 1}", "monomial": list(e)})
    out.append(make_report("demazure_routes", f"{name} laurent deg<={min(maxdeg, 2)}", failures, start))

    rels = []
    for i, j, m in _rank2_pairs(system):
        if m in (2, 3):
            rels += [(f"K{i + 1}{j + 1}[{k}]", x) for k, x in enumerate(kij_nullspace(system, i, j))]
        if m in (4, 6):
            qs, rs = rank2_legal_indices(m)
            rels += [(f"Q{i + 1}{j + 1}{a}", rank2_Q(system, *a, i=i, j=j)) for a in qs]
            rels += [(f"R{i + 1}{j + 1}{a}", rank2_R(system, *a, i=i, j=j)) for a in rs]
    if rels:
        out.append(verify_relations(action, rels, maxdeg, "demazure_rank2_annihilation"))
    return out


def suite_qybe(k: int) -> list[VerificationReport]:
    from .qybe import check_hs3_structure, check_quadratic_braiding, demazure_hs3, hecke_braiding, psi_u, swap_braiding

    h = demazure_hs3(k)
    out = [check_hs3_structure(h)]
    hecke, q = hecke_braiding(2)
    seeds = [("swap", swap_braiding(2), 1), ("hecke", hecke, q)]
    for label, c, qq in seeds:
        r = check_quadratic_braiding(c, qq)
        r.check_name = f"seed_braiding_{label}"
        out.append(r)
        r = check_quadratic_braiding(psi_u(h, c, qq), qq)
        r.check_name = f"psi_u_braiding_{label}"
        out.append(r)
    return _rename(out, f"k={k}")


def suite_taft(n: int, samples: int = 200, seed: int = 0) -> list[VerificationReport]:
    from .taft import TaftAlgebra, check_taft, generalized_binomial_check

    out = [generalized_binomial_check(k) for k in range(n + 1)]
    if n >= 1:
        out += check_taft(TaftAlgebra(n), samples=samples, seed=seed)
    return out


def suite_fk_dims(type_name: str, maxdeg: int = 5) -> list[VerificationReport]:
    from .nichols import d0_relations, hilbert_series

    system = _system(type_name)
    label = _label(type_name)
    start = time.perf_counter()
    pres = d0_relations(system)
    dims = hilbert_series(pres, maxdeg)
    failures = []
    alt = hilbert_series(pres, maxdeg, method="hnf")
    if alt != dims:
        failures.append({"route": "hnf", "dims": alt})
    rev = hilbert_series(d0_relations(system, order=list(reversed(range(system.nrefl)))), maxdeg)
    if rev != dims:
        failures.append({"route": "reordered", "dims": rev})
    return [make_report(
        "fk_dims", label, failures, start,
        dims=dims, total=sum(dims),
        incompatible_commuting_pairs=[list(p) for p in pres.incompatible_commuting],
    )]


def monomials_up_to(system: CoxeterSystem, degree: int):
    from .freealg import square_free_words

    for d in range(degree + 1):
        yield from square_free_words(system.nrefl, d)


def suite_partials(type_name: str, samples: int = 200, seed: int = 0) -> list[VerificationReport]:
    from .heckehopf import HHElement, all_partials, partial_derivative, partial_recursive, random_element
    from .nichols import check_nichols_operator_relations

    system = _system(type_name)
    label = _label(type_name)
    out = []
    start = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        x = random_element(system, rng, max_degree=3, d_part=True)
        for g in range(system.size):
            for h in range(system.size):
                if partial_derivative(g, h, x) != partial_recursive(g, h, x):
                    failures.append({"g": g, "h": h, "x": str(x)})
    out.append(make_report("partials_direct_vs_recursive", label, failures, start, samples=samples, seed=seed))

    monos = [HHElement(system, {(u, 0): 1}) for u in monomials_up_to(system, 3)]
    start = time.perf_counter()
    failures = []
    for x in monos:
        for g in range(system.size):
            for h in all_partials(g, x):
                if not system.bruhat_leq(h, g):
                    failures.append({"g": g, "h": h, "x": str(x)})
    out.append(make_report("partials_bruhat_support", label, failures, start, monomials=len(monos)))

    start = time.perf_counter()
    failures = []
    pairs = 0
    for x in monos:
        for y in monos:
            pairs += 1
            xy = x * y
            for g in range(system.size):
                px = all_partials(g, x)
                want: dict = {}
                for w, a in px.items():
                    for h, b in all_partials(w, y).items():
                        want[h] = want[h] + a * b if h in want else a * b
                want = {h: v for h, v in want.items() if v}
                if want != all_partials(g, xy):
                    failures.append({"g": g, "x": str(x), "y": str(y)})
    out.append(make_report("partials_product_rule", label, failures, start, pairs=pairs))

    rng = random.Random(seed + 1)
    samples_nichols = monos[: 1 + system.nrefl] + [random_element(system, rng, max_degree=3, d_part=True) for _ in range(20)]
    out.append(check_nichols_operator_relations(system, samples_nichols, label))
    return out


DESK_PLAN: list[tuple[str, tuple]] = (
    [("suite_hopf_axioms", (t,)) for t in ("A2", "A3", "I2(4)", "I2(5)", "I2(6)")]
    + [("suite_kij", (m,)) for m in (2, 3, 4, 5, 6)]
    + [("suite_rank2", (m,)) for m in (2, 3, 4, 5, 6)]
    + [("suite_hecke_embed", (t,)) for t in ("A2", "A3", "B2")]
    + [("suite_demazure", (t, cartan_for(t))) for t in ("A2", "A3", "A1xA1", "B2", "G2")]
    + [("suite_qybe", (k,)) for k in (1, 2, 3)]
    + [("suite_taft", (n,)) for n in (2, 3, 4)]
    + [("suite_taft_binomial", (6,))]
    + [("suite_fk_dims", (t,)) for t in ("A2", "A1xA1")]
    + [("suite_partials", (t,)) for t in ("A2", "I2(4)")]
)


def suite_taft_binomial(n: int) -> list[VerificationReport]:
    from .taft import generalized_binomial_check

    return [generalized_binomial_check(k) for k in range(n + 1)]


def _run_named(name: str, args: tuple, cfg: dict) -> list[dict]:
    fn: Callable = globals()[name]
    kwargs = {}
    if name in ("suite_hopf_axioms",):
        kwargs = {"samples": cfg["samples"], "seed": cfg["seed"]}
    elif name == "suite_partials":
        kwargs = {"samples": cfg["partial_samples"], "seed": cfg["seed"]}
    elif name == "suite_taft":
        kwargs = {"samples": cfg["taft_samples"], "seed": cfg["seed"]}
    elif name == "suite_demazure":
        kwargs = {"maxdeg": cfg["demazure_maxdeg"]}
    elif name == "suite_fk_dims":
        kwargs = {"maxdeg": cfg["fk_maxdeg"]}
    return [r.to_record() for r in _guarded(fn, args, kwargs, name)]


def _guarded(fn: Callable, args: tuple, kwargs: dict, name: str) -> list[VerificationReport]:
    """Run a suite; any module error becomes a failing record."""
    start = time.perf_counter()
    try:
        return fn(*args, **kwargs)
    except ConfigError:
        raise
    except Exception as exc:
        ms = round((time.perf_counter() - start) * 1000, 3)
        return [VerificationReport(name.removeprefix("suite_"), " ".join(map(str, args)), FAIL,
                                   {"error": type(exc).__name__, "message": str(exc)}, ms)]


def run_plan(plan: Sequence[tuple[str, tuple]], cfg: dict) -> list[dict]:
    workers = max(1, cfg.get("workers", 1))
    if workers == 1:
        return [rec for name, args in plan for rec in _run_named(name, args, cfg)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_named, name, args, cfg) for name, args in plan]
        return [rec for f in futures for rec in f.result()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke-hopf", description="Exact verification of Hecke-Hopf algebra identities.")
    p.add_argument("--config", help="JSON file with seed, samples, degree bounds and workers")
    p.add_argument("--seed", type=int, help="override the configured seed")
    p.add_argument("--workers", type=int, help="number of worker processes")
    p.add_argument("--no-timing", action="store_true", help="report timing_ms as 0 for reproducible output")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("hopf-axioms", help="coassociativity, counit and antipode identities")
    s.add_argument("--type", help="system name; defaults to the system in --config")
    s = sub.add_parser("kij", help="the coideal K_ij of a dihedral group")
    s.add_argument("--m", type=int, required=True)
    s = sub.add_parser("rank2", help="the Q and R relation families")
    s.add_argument("--m", type=int, required=True)
    s = sub.add_parser("hecke-embed", help="Hecke algebra inside the Hecke-Hopf algebra")
    s.add_argument("--type", help="system name; defaults to the system in --config")
    s = sub.add_parser("demazure", help="relations acting on the Laurent polynomial module")
    s.add_argument("--cartan", help="JSON system document with a Cartan matrix; defaults to --config")
    s.add_argument("--maxdeg", type=int)
    s = sub.add_parser("qybe", help="Psi_U braidings from the Demazure H(S_3)-structure")
    s.add_argument("--k", type=int, required=True)
    s = sub.add_parser("taft", help="generalized Taft algebras")
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("fk-dims", help="graded dimensions of D_0(W)")
    s.add_argument("--type", help="system name; defaults to the system in --config")
    s.add_argument("--maxdeg", type=int)
    s = sub.add_parser("partials", help="the operators partial_{g,h}")
    s.add_argument("--type", help="system name; defaults to the system in --config")
    s = sub.add_parser("all", help="the full acceptance battery")
    s.add_argument("--desk", action="store_true", help="desk-scale parameters (the only supported scale)")
    return p


def _config_system(cfg: dict) -> dict:
    if not any(k in cfg for k in ("coxeter_matrix", "cartan")):
        raise ConfigError("no system given: pass --type or put a matrix in --config")
    return system_document({k: cfg[k] for k in SYSTEM_KEYS if k in cfg})


def _type_arg(args, cfg: dict):
    system_ref = args.type if args.type is not None else _config_system(cfg)
    _system(system_ref)
    return system_ref


def _plan_for(args, cfg: dict) -> list[tuple[str, tuple]]:
    cmd = args.command
    if cmd in ("hopf-axioms", "hecke-embed", "fk-dims", "partials"):
        system_ref = _type_arg(args, cfg)
    if cmd == "hopf-axioms":
        return [("suite_hopf_axioms", (system_ref,))]
    if cmd == "kij":
        if args.m < 2:
            raise ConfigError("m must be at least 2")
        return [("suite_kij", (args.m,))]
    if cmd == "rank2":
        if args.m < 2:
            raise ConfigError("m must be at least 2")
        return [("suite_rank2", (args.m,))]
    if cmd == "hecke-embed":
        return [("suite_hecke_embed", (system_ref,))]
    if cmd == "demazure":
        if args.cartan is not None:
            name, cartan = load_cartan(args.cartan)
        else:
            doc = _config_system(cfg)
            if "cartan" not in doc:
                raise ConfigError("the Demazure action needs a cartan entry")
            name, cartan = doc["name"], doc["cartan"]
            _system(doc)
        if args.maxdeg is not None:
            cfg["demazure_maxdeg"] = args.maxdeg
        return [("suite_demazure", (name, cartan))]
    if cmd == "qybe":
        if args.k < 0:
            raise ConfigError("k must be nonnegative")
        return [("suite_qybe", (args.k,))]
    if cmd == "taft":
        if args.n < 1:
            raise ConfigError("n must be at least 1")
        return [("suite_taft", (args.n,))]
    if cmd == "fk-dims":
        if args.maxdeg is not None:
            cfg["fk_maxdeg"] = args.maxdeg
        return [("suite_fk_dims", (system_ref,))]
    if cmd == "partials":
        return [("suite_partials", (system_ref,))]
    if cmd == "all":
        return list(DESK_PLAN)
    raise ConfigError(f"unknown command {cmd}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.workers is not None:
            cfg["workers"] = args.workers
        plan = _plan_for(args, cfg)
        records = run_plan(plan, cfg)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    failed = False
    for rec in records:
        if args.no_timing:
            rec["timing_ms"] = 0
        failed = failed or rec["status"] == FAIL
        print(json.dumps(rec, sort_keys=True, default=str))
    return 1 if failed else 0


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
