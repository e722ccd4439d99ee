import json

import pytest

from slkweights.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mult_all_methods(capsys):
    code, out, _ = run(capsys, "mult", "--k", "3", "--lambda", "2,1,0", "--beta", "1,1,1", "--method", "all")
    assert code == 0
    assert out.split() == ["gt=2", "kmf=2", "spf=2"]


def test_mult_json(capsys):
    code, out, _ = run(capsys, "mult", "--lambda", "2,1,0", "--beta", "2,1,0", "--method", "all", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert set(doc["values"].values()) == {1} and doc["agree"]


def test_mult_sl_input_is_normalized(capsys):
    code, out, _ = run(capsys, "mult", "--lambda", "1,0,-1", "--beta", "0,0,0", "--format", "json")
    doc = json.loads(out)
    assert doc["values"]["gt"] == 2
    assert doc["normalized"]["lambda"] == [2, 1, 0]


def test_mult_off_lattice(capsys):
    code, out, _ = run(capsys, "mult", "--lambda", "2,1,0", "--beta", "1,1,0", "--method", "all")
    assert code == 0
    assert "gt=0" in out and "root lattice" in out


@pytest.mark.parametrize("argv", [
    ("mult", "--lambda", "0,1,2", "--beta", "1,1,1"),
    ("mult", "--k", "4", "--lambda", "2,1,0", "--beta", "1,1,1"),
    ("mult", "--lambda", "2,1,0", "--beta", "1,1"),
    ("mult", "--lambda", "2,x,0", "--beta", "1,1,1"),
    ("mult", "--lambda", "2,1,0", "--beta", "1,1,1", "--workers", "0"),
    ("complex", "--k", "5"),
    ("complex", "--k", "3", "--format", "svg"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_complex_k3(capsys):
    code, out, _ = run(capsys, "complex", "--k", "3")
    assert code == 0 and out.startswith("k=3 raw: 8 cells")


def test_complex_k3_lambda(capsys):
    code, out, _ = run(capsys, "complex", "--k", "3", "--lambda-complex", "--format", "json")
    doc = json.loads(out)
    assert doc["cells"] == 8 and doc["lambda_regions"] == 2


def test_regions_fundamental(capsys):
    code, out, _ = run(capsys, "regions", "--lambda", "1,0,0")
    assert code == 0 and out.strip() == "1 region"


def test_regions_generic_k4(capsys):
    code, out, _ = run(capsys, "regions", "--lambda", "29,21,-11,-39", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["count"] == 325


def test_regions_non_generic_count_is_not_checked(capsys):
    # -2*lambda_1 + 3*lambda_2 - lambda_4 = 0 makes four subset planes concurrent
    code, out, _ = run(capsys, "regions", "--lambda", "121,45,-59,-107")
    assert code == 0 and out.strip() == "313 regions"


def test_regions_svg_and_csv(capsys):
    code, out, _ = run(capsys, "regions", "--lambda", "2,1,0", "--format", "svg")
    assert code == 0 and out.startswith("<svg")
    code, out, _ = run(capsys, "regions", "--lambda", "2,1,0", "--format", "csv")
    assert code == 0 and out.splitlines()[1].endswith(",6")


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--k", "3", "--budget", "200", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["checked"] == 200 and doc["passed"]


def test_verify_scaling(capsys):
    code, out, _ = run(capsys, "verify", "scaling", "--k", "3", "--budget", "10")
    assert code == 0 and "PASS" in out


def test_verify_budget_exceeded_is_not_failure(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--k", "4", "--budget", "100000", "--budget-seconds", "0.5")
    assert code == 0 and "incomplete" in out


def test_verify_gluing_k3(capsys):
    code, out, _ = run(capsys, "verify", "gluing", "--k", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["cells"] == 8 and doc["orbits"] == 4


def test_verify_factorization_k3(capsys):
    code, out, _ = run(capsys, "verify", "factorization", "--k", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["boundary_factor_counts"] == [1]


def test_deterministic_output(capsys):
    a = run(capsys, "verify", "oracle", "--k", "3", "--budget", "20", "--seed", "5", "--format", "json")
    b = run(capsys, "verify", "oracle", "--k", "3", "--budget", "20", "--seed", "5", "--format", "json")
    assert a == b
