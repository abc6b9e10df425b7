import json
import subprocess
import sys
from pathlib import Path

import pytest

from main import main
from run_config import RunConfig
from utils import ConfigError

ROOT = Path(__file__).resolve().parent.parent


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_factor_json(capsys):
    code, out, _ = run_cli(capsys, "factor", "--q", "2", "--n", "3", "--check")
    assert code == 0
    payload = json.loads(out)
    assert payload["D"] == ["1", "1", "6"]
    assert payload["residual"] == "exact-zero"
    assert payload["backend"] == "exact"
    assert "L" not in payload


def test_factor_with_l(capsys):
    code, out, _ = run_cli(capsys, "factor", "--q", "2", "--n", "3", "--with-l")
    assert code == 0
    assert json.loads(out)["L"] == [["1", "0", "0"], ["1", "1", "0"], ["1", "3", "1"]]


def test_factor_dft(capsys):
    code, out, _ = run_cli(capsys, "factor", "--dft", "--n", "8", "--check")
    assert code == 0
    payload = json.loads(out)
    assert payload["backend"] == "complex"
    assert payload["residual"] <= 1e-8


def test_factor_writes_output_file(capsys, tmp_path):
    target = tmp_path / "factor.json"
    code, out, _ = run_cli(capsys, "factor", "--q", "3/5", "--n", "4", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["n"] == 4


def test_factor_is_deterministic(capsys):
    first = run_cli(capsys, "factor", "--q", "3/5", "--n", "6", "--check")[1]
    second = run_cli(capsys, "factor", "--q", "3/5", "--n", "6", "--check")[1]
    assert first == second


def test_degenerate_q_exits_2(capsys):
    code, out, err = run_cli(capsys, "factor", "--q", "1", "--n", "3")
    assert code == 2
    assert out == ""
    assert "j=1" in err


def test_zero_q_exits_2(capsys):
    code, _, _ = run_cli(capsys, "factor", "--q", "[0.0,0.0]", "--n", "3")
    assert code == 2


def test_parse_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "factor", "--q", "3/x", "--n", "3")
    assert code == 1
    assert "position 2" in err


def test_solve(capsys, tmp_path):
    rhs = tmp_path / "b.json"
    rhs.write_text(json.dumps(["1", "0"]))
    code, out, _ = run_cli(capsys, "solve", "--q", "2", "--n", "2", "--in", str(rhs))
    assert code == 0
    payload = json.loads(out)
    assert payload["x"] == ["2", "-1"]
    assert "residual_norm" not in payload
    assert payload["cost_counters"]["back_substitutions"] == 0


def test_solve_length_mismatch_exits_1(capsys, tmp_path):
    rhs = tmp_path / "b.json"
    rhs.write_text(json.dumps(["1", "0", "0"]))
    code, _, _ = run_cli(capsys, "solve", "--q", "2", "--n", "2", "--in", str(rhs))
    assert code == 1


def test_solve_missing_file_exits_1(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "solve", "--q", "2", "--n", "2", "--in", str(tmp_path / "missing.json"))
    assert code == 1


def test_verify(capsys):
    code, out, _ = run_cli(capsys, "verify", "--q", "3/5", "--n", "8", "--seed", "7")
    assert code == 0
    assert out.splitlines()[0] == "# qvand-verify q=3/5 n=8 backend=exact seed=7"
    assert "FAIL" not in out


def test_verify_degenerate_exits_2(capsys):
    code, _, _ = run_cli(capsys, "verify", "--q", "1", "--n", "3")
    assert code == 2


def test_bench_requires_complex(capsys):
    code, _, err = run_cli(capsys, "bench", "--backend", "exact")
    assert code == 1
    assert "bench requires complex backend" in err


def test_bench_single_size(capsys):
    code, out, _ = run_cli(capsys, "bench", "--ladder", "128")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# qvand-bench v1"
    assert lines[2] == "n,structured_solve_seconds,dense_oracle_seconds,residual"
    assert len(lines) == 4
    assert lines[3].startswith("128,")


def test_config_backend_inference():
    parser_args = dict(q=None, n=4, backend=None, eps=None, m=None, seed=0, check=False, dft=False,
                       input_path=None, output_path=None, ladder=None, with_l=False, stub=None)

    class Args:
        def __init__(self, **kwargs):
            self.__dict__.update(parser_args, **kwargs)

    assert RunConfig.from_args(Args(command="factor", q="2")).backend == "exact"
    assert RunConfig.from_args(Args(command="factor", q="[0.5,0.5]")).backend == "complex"
    assert RunConfig.from_args(Args(command="factor", dft=True)).backend == "complex"
    assert RunConfig.from_args(Args(command="bench", ladder="128..512")).ladder == (128, 256, 512)
    with pytest.raises(ConfigError):
        RunConfig.from_args(Args(command="factor", dft=True, backend="exact"))
    with pytest.raises(ConfigError):
        RunConfig.from_args(Args(command="factor"))
    with pytest.raises(ConfigError):
        RunConfig.from_args(Args(command="solve", q="2"))


def test_subprocess_exit_code():
    result = subprocess.run([sys.executable, "main.py", "factor", "--q", "1", "--n", "3"],
                            cwd=ROOT, capture_output=True, text=True)
    assert result.returncode == 2
    assert "j=1" in result.stderr
