import csv
import io as _io
import json

import numpy as np
import pytest

from cuspidal import cli
from cuspidal.io import germ_to_dict
from cuspidal.surface import Case1Coeffs, NormalFormData
from cuspidal.synth import disguise, random_normal_form

NF = {"a20": 0.3, "a30": 0.1, "b20": 0.5, "b30": -0.2, "b12": 0.4, "b03": 0.9, "h5_00": 0.0,
      "boundary": {"kind": "case1", "epsilon": 1, "c1": 0.5, "c2": 0.2, "c3": 0.0}}
RULED = {"x": 0.5, "y": {"poly": [1.5, 0, 1]}, "kappa_delta": 1.0, "delta0": [1, 0, 0],
         "delta1": [0, 1, 0], "eps": 1.0, "M": 2.0, "I": [-1, 1]}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def disguised(tmp_path):
    rng = np.random.default_rng(3)
    nf = random_normal_form(rng, case=1)
    f, b, _ = disguise(nf, rng)
    return nf, write(tmp_path, "germ.json", germ_to_dict(f, b))


def test_invariants_both(tmp_path, capsys):
    code, out, _ = run(["invariants", write(tmp_path, "nf.json", NF), "--both"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["case"] == "Case1"
    assert set(rep) >= {"closed", "numeric", "delta", "agree"} and rep["agree"]
    assert rep["closed"]["alpha"] == 0.5


def test_invariants_csv_batch(tmp_path, capsys):
    path = write(tmp_path, "nf.json", [NF, {"normal_form": NF}])
    code, out, _ = run(["invariants", path, "--closed", "--csv"], capsys)
    rows = list(csv.reader(_io.StringIO(out)))
    assert code == 0 and rows[0][:3] == ["index", "case", "part"] and len(rows) == 3


def test_reduce_round_trip(tmp_path, capsys, disguised):
    nf, path = disguised
    code, out, _ = run(["reduce", path], capsys)
    got = NormalFormData.from_dict(json.loads(out))
    np.testing.assert_allclose(got.surface_vector(), nf.surface_vector(), atol=1e-8)
    _, direct, _ = run(["invariants", path, "--closed"], capsys)
    _, via, _ = run(["invariants", write(tmp_path, "red.json", out), "--closed"], capsys)
    a, b = json.loads(direct)["closed"], json.loads(via)["closed"]
    for k in a:
        assert abs(a[k] - b[k]) <= 1e-8 * max(1.0, abs(a[k]))


def test_exit_codes(tmp_path, capsys):
    code, _, err = run(["invariants", write(tmp_path, "bad.json", "{not json")], capsys)
    assert code == 2 and "schema" in err
    code, _, err = run(["invariants", write(tmp_path, "bad2.json", {"a20": 1})], capsys)
    assert code == 2
    flat = {"f": [{"vars": 2, "order": 6, "coeffs": [[1, 0, 1]]},
                  {"vars": 2, "order": 6, "coeffs": [[0, 1, 1]]},
                  {"vars": 2, "order": 6, "coeffs": []}]}
    code, _, err = run(["reduce", write(tmp_path, "flat.json", flat)], capsys)
    assert code == 3 and err.startswith("NotCuspidalEdge")
    code, _, _ = run(["reduce", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_curve_commands(tmp_path, capsys):
    g = {"gamma": [{"vars": 1, "order": 4, "coeffs": [[2, 0.5]]},
                   {"vars": 1, "order": 4, "coeffs": [[3, 1 / 6]]},
                   {"vars": 1, "order": 4, "coeffs": [[4, 1 / 24]]}]}
    code, out, _ = run(["curve", "invariants", write(tmp_path, "g.json", g)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["class"] == "Type23"
    assert rep["kappa_sing"] == pytest.approx(1.0) and rep["tau_sing"] == pytest.approx(1.0)
    code, out, _ = run(["reconstruct", "--alpha", "1", "--beta", "0.5", "--steps", "200",
                        "--span=-0.2,0.2"], capsys)
    rows = list(csv.reader(_io.StringIO(out)))
    assert code == 0 and rows[0] == ["t", "x", "y", "z"] and len(rows) == 202
    code, _, err = run(["reconstruct", "--alpha", "-1"], capsys)
    assert code == 3 and "InvalidData" in err


def test_parabola_command(tmp_path, capsys, disguised):
    nf, path = disguised
    svg = tmp_path / "p.svg"
    code, out, _ = run(["parabola", path, "--svg", str(svg)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["kind"] == "HalfLine"
    assert rep["dist"] == pytest.approx(nf.boundary.c1 ** 2, abs=1e-7)
    assert svg.read_text().startswith("<svg")


def test_ruled_commands(tmp_path, capsys):
    path = write(tmp_path, "r.json", RULED)
    sing = tmp_path / "s.csv"
    code, out, _ = run(["ruled", "scan", path, "--csv", str(sing), "--check", "--steps", "1000"],
                       capsys)
    reps = json.loads(out)
    assert code == 0 and len(reps) == 1 and reps[0]["is_generic_birth"]
    assert abs(reps[0]["diagnostics"]["c1"]) < 1e-6
    assert sing.read_text().startswith("t,v\n")
    obj = tmp_path / "m.obj"
    code, out, _ = run(["ruled", "mesh", path, "--out", str(obj), "--nt", "11", "--nv", "5",
                        "--steps", "500"], capsys)
    assert code == 0 and "55 vertices" in out and obj.exists()
    code, _, _ = run(["ruled", "mesh", path], capsys)
    assert code == 2


def test_global_flags_before_subcommand(tmp_path, capsys):
    path = write(tmp_path, "nf.json", NF)
    out = tmp_path / "o.json"
    code, _, _ = run(["--out", str(out), "invariants", path, "--closed"], capsys)
    assert code == 0 and json.loads(out.read_text())["case"] == "Case1"


def test_harness_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, table, _ = run(["harness", "--seed", "7", "--draws", "3", "--out", str(a)], capsys)
    assert code == 0 and "kappa0" in table and "PASS" in table
    run(["harness", "--seed", "7", "--draws", "3", "--out", str(b), "--jobs", "2"], capsys)
    assert a.read_bytes() == b.read_bytes()
