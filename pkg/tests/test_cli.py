import json
from fractions import Fraction
import subprocess
import sys
from pathlib import Path

import pytest

from taylortower.cli import CONFIG_ENV, RunConfig, CliUsageError, main
from taylortower.reports import ReportDocument
from taylortower.series import Series

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "expand_geometric_a1_o4.txt": "expand --kind geometric --a 1 --order 4",
    "expand_type_f_n2_o3.json": "expand --kind type_f --n 2 --order 3 --format json",
    "expand_logarithmic_a2_o3.txt": "expand --kind logarithmic --a 2 --order 3",
    "expand_exponential_a1_2_o5.tsv": "expand --kind exponential --a 1/2 --order 5 --format tsv",
    "table_conf_n2_k4.txt": "table conf --n 2 --k-max 4",
    "table_conf_n3_k4.json": "table conf --n 3 --k-max 4 --format json",
    "table_conf_n1_k5_q1.txt": "table conf --n 1 --k-max 5 --at-q 1",
    "table_witt_d2_k5.txt": "table witt --d 2 --k-max 5",
    "table_witt_d3_k6.tsv": "table witt --d 3 --k-max 6 --format tsv",
}


def run(capsys, cmd):
    code = main(cmd.split())
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(capsys, name):
    code, out, _ = run(capsys, GOLDEN_CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_expand_examples(capsys):
    assert run(capsys, "expand --kind geometric --a 1 --order 4")[1] == "x + x^2 + x^3 + x^4\n"
    _, out, _ = run(capsys, "expand --kind type_f --n 2 --order 3 --format json")
    assert [t["c"] for t in json.loads(out)["terms"]] == ["1/1", "3/4", "1/2"]
    assert run(capsys, "expand --kind logarithmic --a 2 --order 3")[1] == "2*x + 2*x^2 + 8/3*x^3\n"


def test_expand_json_is_series_schema(capsys):
    _, out, _ = run(capsys, "expand --kind exponential --a 3 --order 6 --format json")
    s = Series.from_json(json.loads(out))
    assert s.coefficient(6) == Fraction(3 ** 6, 720)


def test_expand_hilbert(capsys):
    code, out, _ = run(capsys, "expand --kind logarithmic --model hilbert --d 2 --order 5")
    assert code == 0 and out == "2*w + w^2 + 2*w^3 + 3*w^4 + 6*w^5\n"
    assert run(capsys, "expand --kind type_f --n 2 --model hilbert --d 1 --order 3")[0] == 2


@pytest.mark.parametrize("cmd", [
    "expand --kind banana --order 3",
    "expand --kind geometric --order 0",
    "expand --kind geometric --a x",
    "expand --order 3",
    "verify nonsense",
    "table cubes",
    "table layers --n 2 --k-max 1",
    "verify difhom --n 2 --k-max 1",
    "frobnicate",
])
def test_usage_errors_exit_2(capsys, cmd):
    code, _, _ = run(capsys, cmd)
    assert code == 2


def test_verify_examples(capsys):
    assert run(capsys, "verify difhom --n 2 --k-max 12")[0] == 0
    assert run(capsys, "verify pbw --order 30")[0] == 0
    code, out, _ = run(capsys, "verify functional-eq --kind exponential --a 3 --order 12")
    assert code == 0 and out.startswith("[PASS] functional-eq")


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify cr2 --kind geometric --d 2 --dy 1 --order 6 --format json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    rep = ReportDocument.from_json(data["reports"][0])
    assert rep.identity_name == "cr2-structural" and rep.witness is None
    assert all(isinstance(v, str) for v in rep.parameters.values())


def test_verify_failure_exits_1(capsys, monkeypatch):
    from taylortower import identities
    real = identities.pbw_functional_identity
    monkeypatch.setattr(identities, "pbw_functional_identity",
                        lambda order: real(order, Fraction(10001, 10000)))
    code, out, _ = run(capsys, "verify pbw --order 8 --format json")
    data = json.loads(out)
    assert code == 1 and data["status"] == "fail"
    assert data["reports"][0]["witness"]["monomial"] == {"x": [1], "q": 0}


def test_table_examples(capsys):
    _, out, _ = run(capsys, "table conf --n 2 --k-max 4")
    assert "n=2 k=3: 1, 3, 2" in out.splitlines()
    assert run(capsys, "table conf --n 1 --k-max 5 --at-q 1")[1] == "n=1: 1, 2, 6, 24, 120\n"
    assert run(capsys, "table witt --d 2 --k-max 5")[1] == "d=2: 2, 1, 2, 3, 6\n"


def test_table_layers(capsys):
    _, out, _ = run(capsys, "table layers --n 2 --k-max 4")
    assert out.splitlines()[-1] == "n=2 k=4: 1, 6, 11, 6"
    _, out, _ = run(capsys, "table layers --n 3 --k-max 3 --format json")
    t = json.loads(out)["tables"][0]
    assert t["label"] == "differential" and sorted(t["entries"]) == ["1", "2", "3"]
    _, out, _ = run(capsys, "table layers --n 2 --k-max 4 --at-q 1 --format tsv")
    assert out.splitlines()[-1] == "2\t4\t24/1"


def test_determinism(capsys):
    for cmd in GOLDEN_CASES.values():
        assert run(capsys, cmd)[1] == run(capsys, cmd)[1]


def test_report_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "verify hilbert-log --d 1 --dy 2 --order 6 --format json")
    path = tmp_path / "r.json"
    path.write_text(out)
    summary = tmp_path / "summary.txt"
    code, _, _ = run(capsys, f"report {path} --output {summary}")
    assert code == 0
    assert summary.read_text().splitlines() == [
        "[PASS] hilbert-log (d_x=1 d_y=2) order=6", "1/1 checks passed"]


def test_report_rejects_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, f"report {bad}")[0] == 2
    assert run(capsys, f"report {tmp_path / 'missing.json'}")[0] == 2


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"default_order": 3, "output_format": "tsv", "n_range": [2, 3]}))
    code, out, _ = run(capsys, f"expand --kind geometric --config {cfg}")
    assert code == 0 and out.splitlines()[0] == "x\tq\tc" and len(out.splitlines()) == 4
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    _, out, _ = run(capsys, "table conf --k-max 2 --format pretty")
    assert out.splitlines() == ["n=2 k=1: 1", "n=2 k=2: 1, 1", "n=3 k=1: 1", "n=3 k=2: 1, 0, 1"]


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, f"expand --kind geometric --config {cfg}")[0] == 2
    with pytest.raises(CliUsageError):
        RunConfig(k_range=(5, 2))
    with pytest.raises(CliUsageError):
        RunConfig(parallelism=0)


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify all --order 10")
    lines = out.splitlines()
    assert code == 0
    assert [ln.split(":")[0] for ln in lines[:11]] == [
        f"[PASS] criterion {i}" for i in range(1, 12)]
    assert lines[-1].endswith("checks passed")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "taylortower", "table", "witt", "--d", "2",
                           "--k-max", "5"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "d=2: 2, 1, 2, 3, 6\n"
