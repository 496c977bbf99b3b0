import json
import subprocess
import sys

import pytest

from conftest import N45, N_SMALL, P45, Q45
from hyperfactor.cli import main
from hyperfactor.mcss import deserialize, induced_selection

FIXTURE_N = 3200000087 * 3201200117  # 20 digits, Fermat offset 112


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_factor_auto_text(capsys):
    code, out, _ = run(capsys, "factor", "--n", str(N_SMALL), "--algo", "auto")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "7909787 = 2069 * 3823"
    assert "z = 267" in lines and "y = 1754" in lines


def test_factor_json_matches_text(capsys):
    _, text, _ = run(capsys, "factor", "--n", str(N_SMALL), "--algo", "fermat", "--lambda", "280")
    code, out, _ = run(capsys, "factor", "--n", str(N_SMALL), "--algo", "fermat", "--lambda", "280",
                       "--output", "json")
    doc = json.loads(out)
    assert code == 0
    assert all(isinstance(doc[k], str) for k in ("n", "divisor", "cofactor", "z", "y", "square_tests"))
    assert f"{doc['n']} = {doc['divisor']} * {doc['cofactor']}" in text
    assert f"square tests = {doc['square_tests']}" in text
    assert f"modulus = {doc['modulus']}" in text


def test_factor_tradeoff_example(capsys):
    code, out, _ = run(capsys, "factor", "--n", str(N45), "--algo", "tradeoff",
                       "--lambda", "55870214400")
    assert code == 0
    assert out.splitlines()[0] == f"{N45} = {P45} * {Q45}"


@pytest.mark.parametrize("argv, message", [
    (["factor", "--n", "10"], "N must be odd"),
    (["factor", "--n", "7"], "at least 9"),
    (["factor", "--n", "12x"], "decimal"),
    (["factor", "--n", str(N_SMALL), "--algo", "fermat"], "--lambda"),
    (["factor"], "required"),
    (["sieve", "card", "--n", "15", "--m", "9"], "factor 3"),
])
def test_input_errors_exit_one(capsys, argv, message):
    code, _, err = run(capsys, *argv)
    assert code == 1 and message in err


def test_sentinel_exit_two(capsys):
    code, _, err = run(capsys, "factor", "--n", str(N_SMALL), "--algo", "fermat", "--lambda", "10")
    assert code == 2 and "square tests" in err
    code, _, _ = run(capsys, "factor", "--n", "1000003")
    assert code == 2


def test_sieve_card_and_enum(capsys):
    assert run(capsys, "sieve", "card", "--n", str(N_SMALL), "--m", "4620", "--k", "1")[1] == "40\n"
    assert run(capsys, "sieve", "enum", "--n", str(N_SMALL), "--m", "5", "--k", "1")[1] == "2 3\n"
    out = run(capsys, "sieve", "card", "--n", "7", "--m", "9", "--k", "1", "--oracle")[1]
    assert out == "formula=2 oracle=2\n"
    out = run(capsys, "sieve", "card", "--n", str(N45), "--m", "2^8*3^3*5^2*7*11*13*17*19")[1]
    assert out == "1935360\n"


def test_budget_flag_is_scoped(capsys, monkeypatch):
    monkeypatch.delenv("HYPERFACTOR_ENUM_BUDGET", raising=False)
    code, _, err = run(capsys, "--budget", "ENUM_BUDGET=100", "sieve", "card", "--n", "17",
                       "--m", "1001", "--oracle")
    assert code == 1 and "budget" in err
    assert run(capsys, "sieve", "card", "--n", "17", "--m", "1001", "--oracle")[0] == 0


def test_mcss_export_verify(capsys, tmp_path):
    path = tmp_path / "inst.json"
    code, _, _ = run(capsys, "mcss", "export", "--n", str(N_SMALL), "--u", "255255", "--v", "12673",
                     "--out", str(path))
    assert code == 0
    inst = deserialize(path.read_text())
    sel = list(induced_selection(inst, 267))
    code, out, _ = run(capsys, "mcss", "verify", "--instance", str(path),
                       "--selection", ",".join(map(str, sel)))
    assert code == 0 and out.startswith("satisfied")
    sel[-1] = (sel[-1] + 1) % len(inst.classes[-1].weights)
    code, out, _ = run(capsys, "mcss", "verify", "--instance", str(path),
                       "--selection", ",".join(map(str, sel)))
    assert code == 0 and out.startswith("violated")


def test_mcss_solve_twenty_digit_fixture(capsys, tmp_path):
    assert len(str(FIXTURE_N)) == 20
    path = tmp_path / "big.json"
    with pytest.warns(UserWarning):
        run(capsys, "mcss", "export", "--n", str(FIXTURE_N), "--u", "3*5*7*11*13",
            "--v", "17*19*23", "--out", str(path))
    code, out, _ = run(capsys, "mcss", "solve", "--instance", str(path))
    assert code == 0
    assert "offset = 112" in out
    assert f"{FIXTURE_N} = 3200000087 * 3201200117" in out


def test_mcss_export_max_and_bad_file(capsys, tmp_path):
    code, out, _ = run(capsys, "mcss", "export", "--n", str(N_SMALL), "--mode", "max",
                       "--m", "15015", "--bound", "267")
    assert code == 0 and json.loads(out)["capacity"] == str(4 * 15015 + 267)
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "mode": "max"')
    code, _, err = run(capsys, "mcss", "solve", "--instance", str(bad))
    assert code == 1 and "line 1" in err


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--deltas", "100000,1000000", "--bits", "22")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "algo,delta,n,modulus,candidates,seconds"
    assert len(lines) == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperfactor", "sieve", "enum", "--n", str(N_SMALL),
                           "--m", "5"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2 3\n"
