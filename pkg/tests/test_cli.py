import csv
import io
import json
import subprocess
import sys

import pytest

from prshells.blocks import BlockMultiset, dumps_blocks
from prshells.cli import ConfigError, RunConfig, main
from prshells.jacobi import JacobiPolynomial

P13 = ["--p", "13", "--m", "3", "--q", "5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jacobi_rep_of(capsys):
    code, out, _ = run(capsys, "jacobi", *P13, "--rep-of", "6,12")
    assert code == 0
    assert "168 w^2 x^7 y^4" in out.splitlines()


def test_jacobi_json_round_trips(capsys):
    code, out, _ = run(capsys, "jacobi", *P13, "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 3
    polys = [JacobiPolynomial.from_json(d["polynomial"]) for d in data]
    assert all(p.total() == 5**9 for p in polys)
    assert [d["T"] for d in data] == [[0, 1], [0, 2], [0, 4]]


def test_design_check_empty_shell(capsys):
    code, out, _ = run(capsys, "design-check", *P13, "--ell", "1")
    assert code == 0 and "empty; vacuously consistent" in out


def test_design_check_block_file(capsys, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text(dumps_blocks(BlockMultiset.from_blocks(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 4),
                                                                (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])))
    code, out, _ = run(capsys, "design-check", "--blocks", str(good))
    assert code == 0 and "2-(5, 3, 3) design" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("5 3\n0 1 2 * 1\n0 1 3 * 2\n")
    code, out, err = run(capsys, "design-check", "--blocks", str(bad))
    assert code == 1 and "witness" in err
    broken = tmp_path / "broken.txt"
    broken.write_text("5 3\n0 1 * 1\n")
    assert run(capsys, "design-check", "--blocks", str(broken))[0] == 2


def test_table2_csv(capsys):
    code, out, err = run(capsys, "reproduce", "table2", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["ell", "lambda", "blocks", "is_design"]
    assert [int(r["lambda"]) for r in rows] == [84, 820, 6360, 36540, 144368, 416376, 826560, 1107480, 883740]
    assert "ell=4" in err  # progress goes to stderr only


def test_table2_multiset_union_reports_mismatch(capsys):
    code, out, err = run(capsys, "reproduce", "table2", "--union", "multiset", "--ell-range", "9,10")
    assert code == 1
    assert "MISMATCH" in out and "(10, 827640, 826560)" in err


def test_example52(capsys):
    code, out, _ = run(capsys, "reproduce", "example52")
    assert code == 0
    assert "Jacobi polynomials match the published ones: True" in out
    assert "computed 2, published claim 3" in out
    assert "[True, False, True]" in out


def test_threads_do_not_change_output(capsys):
    a = run(capsys, "weights", *P13, "--format", "json", "--threads", "1")[1]
    b = run(capsys, "weights", *P13, "--format", "json", "--threads", "4")[1]
    assert a == b and json.loads(a)["total"] == 5**9


def test_small_commands(capsys):
    code, out, _ = run(capsys, "cosets", *P13)
    assert code == 0 and "A_0: 1 5 8 12" in out
    code, out, _ = run(capsys, "genpoly", *P13, "--format", "csv")
    assert out.splitlines()[0] == "power,coeff"
    code, out, _ = run(capsys, "code-info", *P13)
    assert out.splitlines()[0] == "13 3 5 9"
    code, out, _ = run(capsys, "harmonic-basis", *P13)
    assert code == 0 and out.startswith("dimension 2")
    code, out, _ = run(capsys, "hwe", *P13)
    assert code == 0 and "conjugate sum zero" in out
    code, out, _ = run(capsys, "shells", *P13, "--ell-range", "4,4", "--format", "csv")
    assert out.splitlines() == ["ell,blocks,distinct", "4,1092,273"]
    code, out, _ = run(capsys, "jacobi-sum", *P13)
    assert code == 0 and "lambda(ell=4) = 84" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "w.csv"
    code, out, _ = run(capsys, "weights", *P13, "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[:2] == ["weight,count", "0,1"]


@pytest.mark.parametrize("argv", [
    ["cosets", "--p", "12"],
    ["cosets", "--p", "13", "--m", "5"],
    ["genpoly", "--q", "3"],
    ["weights", "--threads", "0"],
    ["jacobi", "--rep-of", "1,1"],
    ["jacobi", "--rep-of", "1"],
    ["reproduce"],
    ["cosets", "table1"],
    ["harmonic-basis", "--format", "csv", *P13],
    ["nonsense"],
])
def test_invalid_config_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_cap_exit_3(capsys, monkeypatch):
    assert run(capsys, "weights", *P13, "--cap", "1000")[0] == 3
    monkeypatch.setenv("PRSHELLS_CAP", "1000")
    assert run(capsys, "weights", *P13)[0] == 3
    monkeypatch.setenv("PRSHELLS_CAP", "lots")
    assert run(capsys, "weights", *P13)[0] == 2


def test_run_config_validation():
    assert RunConfig().validate().weights() == range(0, 32)
    assert RunConfig(ell=5).validate().weights() == range(5, 6)
    with pytest.raises(ConfigError):
        RunConfig(ell_range=(5, 40)).validate()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "prshells", "cosets", "--p", "7", "--m", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1] == "A_0: 1 2 4"
