import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from spherahall import hall
from spherahall.cli import main

S = '{"d": 3, "summands": [{"shift": 0, "len": 1}]}'
S1 = '{"d": 3, "summands": [{"shift": -1, "len": 1}]}'
SS = '{"d": 3, "summands": [{"shift": 0, "len": 1}, {"shift": 0, "len": 1}]}'
ZERO = '{"d": 3, "summands": []}'

SCHEMA = json.loads(resources.files("spherahall").joinpath("schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_product_of_spheres(capsys):
    code, data = run_json(capsys, "product", S, S)
    assert code == 0
    assert data["q"] == 2
    assert data["terms"] == [{"coeff": "3", "obj": json.loads(SS)}]


def test_product_with_zero_echoes(capsys):
    code, data = run_json(capsys, "product", ZERO, S1)
    assert code == 0 and data["terms"] == [{"coeff": "1", "obj": json.loads(S1)}]


def test_mixed_product(capsys):
    _, data = run_json(capsys, "product", S, S1)
    coeffs = {json.dumps(t["obj"], sort_keys=True): t["coeff"] for t in data["terms"]}
    assert coeffs[json.dumps(json.loads(ZERO), sort_keys=True)] == "1"
    assert sorted(coeffs.values()) == ["1", "1/2"]


def test_number_and_express(capsys):
    assert run(capsys, "number", S, S, SS, "--q", "3")[1].strip() == "4"
    assert run(capsys, "express", ZERO)[1].strip() == "1"
    code, data = run_json(capsys, "express", SS, "--q", "3")
    assert code == 0 and data["terms"] == [{"coeff": "1/4", "word": ["x[0]", "x[0]"]}]


def test_relations_exit_codes(capsys):
    code, out, _ = run(capsys, "relations", "--d", "3", "--window", "0..0")
    assert code == 0 and "yx-same i=0" in out
    assert run(capsys, "relations", "--d", "3", "--window", "-1..1", "--q", "4")[0] == 2
    assert run(capsys, "relations", "--d", "1", "--window", "0..0")[0] == 2
    assert run(capsys, "relations", "--d", "3", "--window", "2..1")[0] == 2
    code, data = run_json(capsys, "relations", "--d", "0", "--window", "0..1")
    assert code == 1 and not data["passed"]
    assert any(r["residual"] for r in data["results"])


def test_bad_input_exit_codes(capsys):
    assert run(capsys, "product", "{not json", S)[0] == 2
    assert run(capsys, "product", '{"d": 3, "summands": [{"shift": 0, "len": 0}]}', S)[0] == 2
    assert run(capsys, "product", S, '{"d": 2, "summands": []}')[0] == 2
    assert run(capsys, "express", '{"d": 2, "summands": []}')[0] == 2


def test_ceiling_exit_code(capsys):
    def cube(shift):
        return '{"d": 3, "summands": [' + ", ".join([f'{{"shift": {shift}, "len": 1}}'] * 3) + "]}"
    hall.clear_caches()
    # the product enumerates Hom(Sigma^-1 S^3, (Sigma^-1 S)^3), which is 9-dimensional
    assert run(capsys, "product", cube(0), cube(-1), "--ceiling", "2")[0] == 3


def test_reports_validate(capsys):
    for argv in (["basis-check", "--window", "-2..0", "--dim", "1"],
                 ["torus-check", "--samples", "3"],
                 ["assoc", "--samples", "3", "--seed", "1", "--dim", "2"],
                 ["number", S, S, SS]):
        code, _ = run_json(capsys, *argv)
        assert code == 0, argv


def test_output_is_byte_identical(capsys):
    argv = ["product", SS, S1, "--q", "3", "--json"]
    first = run(capsys, *argv)[1]
    hall.clear_caches()
    assert run(capsys, *argv)[1] == first


def test_cache_hits_match_recomputation(capsys, tmp_path, monkeypatch):
    argv = ["product", SS, S1, "--json"]
    hall.clear_caches()
    plain = run(capsys, *argv)[1]
    hall.clear_caches()
    cold = run(capsys, *argv, "--cache", str(tmp_path))[1]
    assert any(tmp_path.iterdir())
    hall.clear_caches()
    monkeypatch.setenv("SPHERAHALL_CACHE", str(tmp_path))
    warm = run(capsys, *argv)[1]
    assert plain == cold == warm


@pytest.mark.parametrize("argv", [["--help"], ["relations", "--help"]])
def test_help_documents_conventions(argv):
    res = subprocess.run([sys.executable, "-m", "spherahall", *argv], capture_output=True, text=True)
    assert res.returncode == 0
    assert "Sigma^-1 S" in res.stdout
