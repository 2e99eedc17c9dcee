from __future__ import annotations

import json

import pytest

from hecke_hopf import cli


def run(capsys, *argv):
    code = cli.main(["--no-timing", *argv])
    out = capsys.readouterr()
    records = [json.loads(line) for line in out.out.splitlines() if line.strip()]
    return code, records, out.err


def test_kij_m3(capsys):
    code, recs, _ = run(capsys, "kij", "--m", "3")
    assert code == 0
    null = [r for r in recs if r["check_name"] == "kij_nullspace"][0]
    assert null["details"]["rank"] == 5
    assert all(r["status"] == "pass" for r in recs)


def test_hopf_axioms_a2(capsys):
    code, recs, _ = run(capsys, "--seed", "3", "hopf-axioms", "--type", "A2")
    assert code == 0
    assert {r["check_name"] for r in recs} == {"hopf_axioms_generators", "hopf_axioms_random"}


def test_rank2_m5_has_qij4(capsys):
    code, recs, _ = run(capsys, "rank2", "--m", "5")
    assert code == 0
    assert "qij4_membership" in {r["check_name"] for r in recs}


def test_output_is_deterministic(capsys):
    first = run(capsys, "taft", "--n", "2")
    second = run(capsys, "taft", "--n", "2")
    assert first == second


def test_module_error_becomes_fail_record(capsys):
    code, recs, _ = run(capsys, "fk-dims", "--type", "B2")
    assert code == 1
    assert recs[0]["status"] == "fail"
    assert recs[0]["witness"]["error"] == "NotSimplyLaced"


def test_unknown_system_is_a_config_error(capsys):
    code, recs, err = run(capsys, "partials", "--type", "Q7")
    assert code == 2
    assert recs == []
    assert json.loads(err)["error"] == "config"


def test_bad_config_file(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": "zero"}))
    code, _, _ = run(capsys, "--config", str(path), "kij", "--m", "2")
    assert code == 2
    path.write_text(json.dumps({"colour": 1}))
    code, _, _ = run(capsys, "--config", str(path), "kij", "--m", "2")
    assert code == 2


def test_system_from_config(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"coxeter_matrix": [[1, 4], [4, 1]], "name": "dihedral8", "samples": 3}))
    code, recs, _ = run(capsys, "--config", str(path), "hopf-axioms")
    assert code == 0
    assert recs[0]["instance"] == "dihedral8"


def test_demazure_cartan_file(tmp_path, capsys):
    path = tmp_path / "b2.json"
    path.write_text(json.dumps({"name": "B2", "cartan": [[2, -1], [-2, 2]]}))
    code, recs, _ = run(capsys, "demazure", "--cartan", str(path), "--maxdeg", "2")
    assert code == 0
    names = [r["check_name"] for r in recs]
    assert names == ["demazure_defining_relations", "demazure_routes", "demazure_rank2_annihilation"]


def test_demazure_needs_a_cartan_matrix(tmp_path, capsys):
    path = tmp_path / "cox.json"
    path.write_text(json.dumps({"coxeter_matrix": [[1, 3], [3, 1]]}))
    code, _, _ = run(capsys, "demazure", "--cartan", str(path))
    assert code == 2
    path.write_text(json.dumps({"cartan": [[2, -1], [-1]]}))
    code, _, _ = run(capsys, "demazure", "--cartan", str(path))
    assert code == 2


@pytest.mark.parametrize("argv", [["kij", "--m", "1"], ["taft", "--n", "0"], ["qybe", "--k", "-1"], []])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_workers_keep_order(capsys):
    cfg = {"samples": 2, "partial_samples": 2, "taft_samples": 5, "workers": 2}
    plan = [("suite_kij", (2,)), ("suite_taft_binomial", (2,)), ("suite_kij", (3,))]
    recs = cli.run_plan(plan, cfg)
    serial = cli.run_plan(plan, dict(cfg, workers=1))
    strip = lambda rs: [(r["check_name"], r["instance"], r["status"]) for r in rs]
    assert strip(recs) == strip(serial)
