import json

import numpy as np
import pytest

from fmrings.cli import FALSE, INCONCLUSIVE, MALFORMED, OK, main
from fmrings.factors import binary_system
from fmrings.io import load_system, save_system
from fmrings.ring import BaseRing


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, m, classes, s, explicit=False):
        path = tmp_path / f"{name}.json"
        sys = binary_system(BaseRing.mod(m), classes, s)
        if explicit:
            save_system(path, sys)
        else:
            save_system(path, sys, classes=list(classes))
        return path
    return write


def test_gen_validate_round_trip(capsys, tmp_path):
    out = tmp_path / "sys.json"
    code, _, _ = run(capsys, "gen", "binary", "--n", 3, "--classes", "1,1,2", "--s", 2, "--ring", "mod:8", "-o", out)
    assert code == OK
    code, env = run_json(capsys, "validate", out)
    assert code == OK and env["verdict"] == "certified" and env["data"]["derived_relations"]

    explicit = tmp_path / "explicit.json"
    run(capsys, "gen", "binary", "--classes", "1,1,2", "--s", 2, "--ring", "Z/8", "--explicit", "-o", explicit)
    assert load_system(explicit) == load_system(out)
    assert load_system(out) == binary_system(BaseRing.mod(8), (1, 1, 2), 2)


def test_gen_trivial_and_coboundary(capsys):
    code, out, _ = run(capsys, "gen", "trivial", "--n", 2, "--ring", "mod:4")
    assert code == OK and json.loads(out)["n"] == 2
    code, out, _ = run(capsys, "gen", "coboundary", "--g", "0,1;0,0", "--s", 2, "--ring", "mod:4")
    assert code == OK and json.loads(out)["factors"]["g"] == [[0, 1], [0, 0]]
    code, _, err = run(capsys, "gen", "coboundary", "--g", "1,0;0,0", "--s", 2, "--ring", "mod:4")
    assert code == MALFORMED and "diagonal" in err


def test_validate_rejects_broken_table(capsys, tmp_path, files):
    path = files("good", 4, (1, 2), 2, explicit=True)
    doc = json.loads(path.read_text())
    table = np.array(doc["factors"]["table"])
    table[0, 1, 0] = 1
    doc["factors"]["table"] = table.tolist()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, env = run_json(capsys, "validate", bad)
    assert code == FALSE
    assert env["data"] == {"kind": "cocycle", "indices": [1, 2, 1, 2]}
    code, env = run_json(capsys, "probe", "assoc", "--file", bad, "--seed", 3)
    assert code == FALSE and env["seed"] == 3


def test_malformed_file_reports_position(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"ring": "mod:4",\n "n": 2,\n "factors": }')
    code, _, err = run(capsys, "validate", bad)
    assert code == MALFORMED
    assert f"{bad}:3:" in err

    missing = tmp_path / "missing.json"
    missing.write_text('{"ring": "mod:4", "n": 2}')
    code, env = run_json(capsys, "validate", missing)
    assert code == MALFORMED and env["verdict"] == "error"


def test_canon(capsys, files):
    code, env = run_json(capsys, "canon", files("a", 8, (2, 2, 1), 2))
    assert code == OK
    assert env["data"]["blocks"] == [2, 1]
    assert env["data"]["canonical_S"] == [[1, 1, 2], [1, 1, 2], [2, 2, 1]]
    code, _, _ = run(capsys, "canon", files("u", 8, (1, 2), 3))
    assert code == MALFORMED


def test_iso_exit_codes(capsys, files):
    a, b = files("a", 8, (1, 1, 2), 2), files("b", 8, (1, 2, 2), 2)
    code, env = run_json(capsys, "iso", a, b)
    assert code == OK and env["verdict"] == "Isomorphic" and env["data"]["witness"]
    assert all(h["passed"] for h in env["hypotheses"])

    code, env = run_json(capsys, "iso", a, files("c", 8, (1, 1, 1), 2), "--s", 2)
    assert code == FALSE and env["verdict"] == "NotIsomorphic"

    code, env = run_json(capsys, "iso", files("z1", 2, (1, 2), 0), files("z2", 2, (2, 1), 0))
    assert code == INCONCLUSIVE
    assert {h["name"]: h["passed"] for h in env["hypotheses"]}["s^2 != s"] is False

    code, _, _ = run(capsys, "iso", a, files("d", 4, (1, 2), 2))
    assert code == MALFORMED


def test_oracle_iso(capsys, files):
    a, b = files("a", 4, (1, 2), 2), files("b", 4, (2, 1), 2)
    code, env = run_json(capsys, "oracle-iso", a, b, "--deterministic")
    assert code == OK and len(env["data"]["witness"]) == 256
    code, env = run_json(capsys, "oracle-iso", a, files("c", 4, (1, 1), 2))
    assert code == FALSE
    code, env = run_json(capsys, "oracle-iso", a, files("c2", 4, (1, 1), 2), "--quotient")
    assert code == FALSE
    code, _, err = run(capsys, "oracle-iso", a, b, "--limit", 100)
    assert code == MALFORMED and "256" in err


def test_radical_and_decompose(capsys, files):
    path = files("a", 4, (1, 2), 2)
    code, env = run_json(capsys, "radical", path)
    assert code == OK
    assert env["data"]["radical"] == 64 and env["data"]["quotient"] == 4
    code, env = run_json(capsys, "decompose", path)
    assert code == OK
    assert env["data"]["factor_sizes"] == [2, 2] and env["data"]["matrix_orders"] == [1, 1]
    code, env = run_json(capsys, "decompose", files("t", 4, (1, 1), 2))
    assert env["data"]["matrix_orders"] == [2]


def test_probe_passes(capsys, files):
    code, out, _ = run(capsys, "probe", "assoc", "--file", files("a", 9, (1, 2, 1), 3), "--samples", 200)
    assert code == OK and "200 random triples, seed 42" in out
