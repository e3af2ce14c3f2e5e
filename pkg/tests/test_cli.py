import json
import subprocess
import sys

import pytest

from galbrauer.cli import EXIT_INVALID, EXIT_OK, EXIT_REFUSED, export_corpus_task, main


def write(tmp_path, doc, name="task.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def task(kind, payload):
    return {"version": "1", "task": kind, "payload": payload}


SIGN = {"rank": 1, "action": {"1": [[-1]]}, "generators": [1]}


def test_snf(tmp_path, capsys):
    f = write(tmp_path, task("snf", {"matrix": [[2, 4], [6, 8]]}))
    assert main(["--json", "snf", f]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "ok" and out["result"]["diagonal"] == [2, 4]


def test_groupcoh_sign_module(tmp_path, capsys):
    f = write(tmp_path, task("groupcoh", {"group": {"cyclic": 2}, "module": SIGN, "degree": 1, "oracle": True}))
    assert main(["--json", "groupcoh", f]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)["result"]["cohomology"][0]
    assert row["torsion"] == [2] and row["free_rank"] == 0 and row["oracle_agrees"]


def test_oracle_on_non_cyclic_group(tmp_path, capsys):
    f = write(tmp_path, task("groupcoh", {"group": {"permutations": [[1, 0, 3, 2], [2, 3, 0, 1]]}, "module": {"rank": 1}, "oracle": True}))
    assert main(["groupcoh", f]) == EXIT_INVALID
    assert "/payload/oracle" in capsys.readouterr().err


def test_hypercoh_complex_and_chain_map(tmp_path, capsys):
    C = {"terms": {"0": {"rank": 1}, "1": {"rank": 1}}, "differentials": {"0": [[2]]}}
    f = write(tmp_path, task("hypercoh", {"group": {"cyclic": 2}, "complex": C, "degrees": [0, 1, 2]}))
    assert main(["--json", "hypercoh", f]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["result"]["hypercohomology"]
    assert [r["torsion"] for r in rows] == [[], [2], [2]]
    fmap = {"source": C, "target": C, "components": {"0": [[1]], "1": [[1]]}}
    f = write(tmp_path, task("hypercoh", {"group": {"cyclic": 2}, "chain_map": fmap, "degrees": [0, 1]}))
    assert main(["--json", "hypercoh", f]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["les"]["exact"]


def test_brauer_sl2_mod_torus(tmp_path, capsys):
    f = write(tmp_path, task("brauer", {"corpus": "sl2_mod_torus", "flags": ["X_has_rational_point"]}))
    assert main(["brauer", f]) == EXIT_OK
    assert "Pic" in capsys.readouterr().out
    assert main(["--json", "brauer", f]) == EXIT_OK
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["Pic_X"] == {"free_rank": 1, "torsion": []}
    assert res["Br_a_X_G"] == {"free_rank": 0, "torsion": []}


def test_selftest_quick(capsys):
    assert main(["selftest", "--quick"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("PASS") >= 10


def test_malformed_json(tmp_path, capsys):
    f = write(tmp_path, '{"version": "1", "task": ')
    assert main(["snf", f]) == EXIT_INVALID
    assert "malformed JSON" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["snf", str(tmp_path / "nope.json")]) == EXIT_INVALID
    assert "cannot read" in capsys.readouterr().err


def test_unknown_field_strict_and_lenient(tmp_path, capsys):
    f = write(tmp_path, task("snf", {"matrix": [[1]], "extra": 3}))
    assert main(["snf", f]) == EXIT_INVALID
    assert "error: /payload" in capsys.readouterr().err
    assert main(["--lenient", "snf", f]) == EXIT_OK
    assert "warning: unknown field /payload/extra" in capsys.readouterr().err


def test_task_kind_mismatch(tmp_path, capsys):
    f = write(tmp_path, task("snf", {"matrix": [[1]]}))
    assert main(["groupcoh", f]) == EXIT_INVALID
    assert "/task" in capsys.readouterr().err
    assert main(["run", f]) == EXIT_OK


def test_conditional_request_refused(tmp_path, capsys):
    f = write(tmp_path, task("brauer", {"corpus": "norm_one_torus:z2", "flags": []}))
    assert main(["brauer", f]) == EXIT_REFUSED
    captured = capsys.readouterr()
    assert "refused:" in captured.err and "refused:" in captured.out
    f = write(tmp_path, task("brauer", {"corpus": "norm_one_torus:z2", "flags": [], "allow_conditional": True}))
    assert main(["brauer", f]) == EXIT_OK


def test_inconsistent_flags(tmp_path, capsys):
    f = write(tmp_path, task("brauer", {"corpus": "pgl2", "presentation": "bar"}))
    assert main(["brauer", f]) == EXIT_INVALID
    assert "/payload/flags" in capsys.readouterr().err


def test_nonzero_ns_refused(tmp_path, capsys):
    f = write(tmp_path, task("brauer", {"corpus": "sl2", "ns": {"rank": 1}}))
    assert main(["brauer", f]) == EXIT_REFUSED
    out = capsys.readouterr().out
    assert "Neron-Severi" in out


def test_json_output_is_deterministic(tmp_path, capsys):
    f = write(tmp_path, task("brauer", {"corpus": "pgl2_center_vs_torus"}))
    main(["--json", "brauer", f])
    a = capsys.readouterr().out
    main(["--json", "brauer", f])
    assert capsys.readouterr().out == a


@pytest.mark.parametrize("explicit", [True, False])
def test_corpus_export_round_trip(tmp_path, capsys, explicit):
    f = write(tmp_path, export_corpus_task("norm_one_torus:z3", explicit))
    assert main(["--json", "brauer", f]) == EXIT_OK
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["Pic_X"] == {"free_rank": 0, "torsion": [3]}


def test_corpus_listing_and_export(capsys):
    assert main(["corpus"]) == EXIT_OK
    assert "pgl2" in capsys.readouterr().out.split()
    assert main(["corpus", "pgl2", "--explicit"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["task"] == "brauer"
    assert main(["corpus", "nothing"]) == EXIT_INVALID


def test_degree_max(tmp_path, capsys):
    f = write(tmp_path, task("groupcoh", {"group": {"cyclic": 2}, "module": SIGN, "degree": 5}))
    assert main(["groupcoh", f]) == EXIT_INVALID
    assert "--degree-max" in capsys.readouterr().err
    assert main(["--degree-max", "5", "groupcoh", f]) == EXIT_OK
    assert "H^5 = Z/2" in capsys.readouterr().out


def test_group_order_cap(tmp_path, capsys, monkeypatch):
    f = write(tmp_path, task("groupcoh", {"group": {"cyclic": 6}, "module": {"rank": 1}, "degree": 0}))
    assert main(["--group-order-cap", "4", "groupcoh", f]) == EXIT_INVALID
    assert main(["--group-order-cap", "0", "groupcoh", f]) == EXIT_INVALID
    monkeypatch.setenv("GALBRAUER_ORDER_CAP", "5")
    assert main(["groupcoh", f]) == EXIT_INVALID
    monkeypatch.setenv("GALBRAUER_ORDER_CAP", "six")
    assert main(["groupcoh", f]) == EXIT_INVALID
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    f = write(tmp_path, task("snf", {"matrix": [[3]]}))
    r = subprocess.run([sys.executable, "-m", "galbrauer", "snf", f], capture_output=True, text=True)
    assert r.returncode == 0 and "invariants: 3" in r.stdout
