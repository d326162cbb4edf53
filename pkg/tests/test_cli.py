import csv
import io
import json

import pytest

from ganelius.cli import main, parse_n_list, parse_point


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nodes(capsys):
    code, out, _ = run(capsys, "nodes", "--N", "4", "--r", "0.5", "--quiet")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert list(rows[0]) == ["k", "a_k", "b_k", "beta_k", "sigma_sign", "sigma_logmag"]
    assert float(rows[0]["a_k"]) == pytest.approx(0.0018674427317079888, rel=5e-15)


def test_nodes_errors(capsys):
    code, _, err = run(capsys, "nodes", "--N", "1", "--r", "0.5")
    assert code == 2 and "N0" in err
    code, _, _ = run(capsys, "nodes", "--N", "4")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["nodes", "--r", "0.5"])
    assert e.value.code == 2


def test_nodes_from_d_mu(capsys):
    code, out, _ = run(capsys, "nodes", "--N", "4", "--d", "1.5708", "--mu", "1", "--quiet")
    ref, out_r = run(capsys, "nodes", "--N", "4", "--r", "1.5708/pi", "--d", "1.5708",
                     "--quiet")[:2]
    assert code == 0 and out == out_r


def test_sweep_single_row(capsys):
    code, out, _ = run(capsys, "sweep", "--function", "f2", "--N", "4")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2 and lines[1].endswith(",")


def test_sweep_unknown_function(capsys):
    code, _, err = run(capsys, "sweep", "--function", "f9")
    assert code == 2 and "f9" in err


def test_sweep_both_json(capsys):
    code, out, _ = run(capsys, "sweep", "-f", "f1", "--scheme", "both", "--N", "4,9",
                       "--format", "json")
    data = json.loads(out)
    assert [d["scheme"] for d in data] == ["ganelius", "sesinc"]
    assert data[0]["rows"][0]["max_error"] == pytest.approx(7.73e-3, rel=1e-3)


def test_sweep_is_byte_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.csv"
        main(["sweep", "-f", "f3", "--N", "4,9", "--workers", str(i + 1), "-o", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_plotdata(capsys):
    code, out, _ = run(capsys, "plotdata", "-f", "f1", "--N", "9,16")
    rows = list(csv.DictReader(io.StringIO(out)))
    g = [float(r["log10_error"]) for r in rows if r["scheme"] == "ganelius"]
    s = [float(r["log10_error"]) for r in rows if r["scheme"] == "sesinc"]
    assert code == 0 and all(a < b for a, b in zip(g, s))
    code, out, _ = run(capsys, "plotdata", "-f", "f1", "--N", "")
    assert code == 0 and out == "scheme,sqrt_N,log10_error\n"


def test_rates(capsys):
    code, out, _ = run(capsys, "rates", "-f", "f5", "--scheme", "ganelius")
    assert code == 0 and float(out.splitlines()[1].split(",")[4]) == pytest.approx(46.84, abs=0.01)


def test_approx_explicit_grid(capsys):
    code, out, _ = run(capsys, "approx", "-f", "f1", "--N", "16",
                       "--grid", "explicit:0.5,1-1e-12,-(1-3e-9)")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["x"] for r in rows] == ["0.5", "1-1e-12", "-(1-3e-9)"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--check", "ganelius-bound", "--r", "1.5")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--check", "cardinal", "--N", "16", "--function", "f1")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--check", "j-bound")
    assert code == 0 and json.loads(out)["checks"][0]["samples"] == 50


def test_verify_failure_exit_code(capsys):
    # r = 3 violates the 1e2 cap on the scaled sequence (see the decisions ledger)
    code, out, _ = run(capsys, "verify", "--check", "ganelius-bound", "--r", "3")
    assert code == 1 and not json.loads(out)["passed"]


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("GANELIUS_PRECISION", "extended")
    code, out, _ = run(capsys, "nodes", "--N", "4", "--r", "0.5", "--quiet")
    a1 = out.splitlines()[1].split(",")[1]
    assert len(a1.split("e")[0].replace(".", "")) > 30


def test_parsers():
    assert parse_n_list("4:30:sq") == [4, 9, 16, 25]
    assert parse_n_list("") == []
    assert parse_point("-1+2e-5").delta == parse_point("-(1-2e-5)").delta
