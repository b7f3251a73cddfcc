import csv
import io
import json
import math
import os

import jsonschema
import pytest


def table(text):
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def comments(text):
    return dict(line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# ") and "=" in line)


JSON_CASES = [
    ("entropy", ["--k", 3, "--vector", "max"]),
    ("kernel", ["--k", 2]),
    ("named-vectors", ["--k", 4]),
    ("maximize", ["--k", 3, "--restarts", 2, "--trace"]),
    ("toeplitz-check", []),
    ("sphere-average", ["--k", 2, "--n", 2000, "--seed", 3]),
    ("bk-series", ["--k", 4]),
]


@pytest.mark.parametrize("command,args", JSON_CASES, ids=[c for c, _ in JSON_CASES])
def test_json_output_matches_schema(run, schema, command, args):
    doc = json.loads(run(command, *args, "--format", "json").stdout)
    jsonschema.validate(doc, schema(command))
    assert doc["command"] == command


def test_kernel_dimension_at_level_two(run):
    out = run("kernel", "--k", 2).stdout
    assert "dim=4" in out.splitlines()
    assert len(table(out.split("dim=4", 1)[1])) == 4


def test_kernel_states_validate_as_states(run, schema):
    doc = json.loads(run("kernel", "--k", 3, "--format", "json").stdout)
    assert doc["dim"] == 9
    for s in doc["basis"]:
        jsonschema.validate(s, schema("state"))


def test_diagonal_kernel_dimension(run):
    out = run("kernel", "--k", 6, "--diagonal").stdout
    assert "dim=6" in out.splitlines()


def test_named_vectors_level_five(run):
    rows = {r["name"]: r for r in table(run("named-vectors", "--k", 5).stdout)}
    assert set(rows) == {"b_5", "c_5", "max_5"}
    assert float(rows["c_5"]["entropy"]) == pytest.approx(math.log(2), abs=1e-12)
    assert float(rows["max_5"]["entropy"]) == pytest.approx(math.log(6), abs=1e-12)
    assert all(r["in_kernel_exact"] == "true" for r in rows.values())


def test_toeplitz_check_pass_and_perturbed_fail(run):
    ok = comments(run("toeplitz-check").stdout)
    assert ok["result"] == "PASS"
    assert ok["exact_equal"] == "true"
    bad = comments(run("toeplitz-check", "--offset", -1.9).stdout)
    assert bad["result"] == "FAIL"
    assert float(bad["max_abs_diff"]) == pytest.approx(0.1, abs=1e-12)


def test_sphere_average_level_one(run):
    row = table(run("sphere-average", "--k", 1, "--n", 100000, "--seed", 7).stdout)[0]
    mean, se = float(row["mean"]), float(row["stderr"])
    assert abs(mean - 1 / 3) < 4 * se
    assert float(row["page_exact"]) == pytest.approx(1 / 3, abs=1e-15)


def test_sphere_average_seed_from_environment(run):
    env = dict(os.environ, CP1ENT_SEED="11")
    a = run("sphere-average", "--k", 2, "--n", 500, env=env).stdout
    b = run("sphere-average", "--k", 2, "--n", 500, "--seed", 11).stdout
    assert a == b
    assert table(a)[0]["seed"] == "11"


def test_sphere_average_rejects_tiny_sample(run):
    assert run("sphere-average", "--n", 10, check=False).returncode == 2


def test_bk_series_matches_closed_form(run):
    rows = table(run("bk-series").stdout)
    assert [int(r["k"]) for r in rows] == list(range(1, 11))
    for r in rows:
        assert float(r["entropy"]) == pytest.approx(float(r["closed_form"]), abs=1e-12)


def test_bk_series_zero_is_usage_error(run):
    proc = run("bk-series", "--k", 0, check=False)
    assert proc.returncode == 2
    assert proc.stdout == ""


def test_usage_errors(run):
    assert run(check=False).returncode == 2
    assert run("kernel", "--k", 0, check=False).returncode == 2
    assert run("kernel", "--format", "xml", check=False).returncode == 2
    assert run("entropy", "--vector", "q", check=False).returncode == 2


def test_entropy_from_state_file(run, tmp_path):
    path = tmp_path / "s.json"
    h = 1 / math.sqrt(2)
    path.write_text(json.dumps({"k": 1, "re": [[h, 0], [0, -h]], "im": [[0, 0], [0, 0]]}))
    row = table(run("entropy", "--state", path).stdout)[0]
    assert float(row["entropy"]) == pytest.approx(math.log(2), abs=1e-14)
    assert row["schmidt_rank"] == "2"
    fourier = table(run("entropy", "--state", path, "--fourier").stdout)
    assert [int(r["d"]) for r in fourier] == [-1, 0, 1]
    assert all(abs(float(r["re"])) < 1e-15 for r in fourier)


def test_unnormalized_state_is_rejected(run, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"k": 1, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}))
    proc = run("entropy", "--state", path, check=False)
    assert proc.returncode == 2
    assert "normalized" in proc.stderr.lower()


def test_maximize_odd_level_and_trace(run):
    out = run("maximize", "--k", 3, "--seed", 1, "--trace").stdout
    params = comments(out)
    assert params["seed"] == "1" and params["restarts"] == "16"
    body = [l for l in out.splitlines() if not l.startswith("#")]
    summary = list(csv.DictReader(io.StringIO("\n".join(body[:2]))))[0]
    assert float(summary["best_value"]) == pytest.approx(math.log(4), abs=1e-9)
    assert summary["converged"] == "true"
    assert len(body) == 2 + 1 + 16


def test_maximize_nonconvergence_exit_code(run):
    proc = run("maximize", "--k", 4, "--max-iters", 1, "--restarts", 1, check=False)
    assert proc.returncode == 3
    assert table(proc.stdout)[0]["converged"] == "false"


def test_out_flag_writes_file(run, tmp_path):
    path = tmp_path / "k.csv"
    assert run("kernel", "--k", 1, "--out", path).stdout == ""
    assert "dim=1" in path.read_text().splitlines()
