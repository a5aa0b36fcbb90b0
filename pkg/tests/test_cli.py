import json
import subprocess
import sys
from pathlib import Path

from freejoin.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
VSTATE = str(CONFIGS / "vector_state.json")
SHIFT = str(CONFIGS / "shift_mixing.json")


def test_reduce(capsys):
    assert main(["reduce", "a b b^-1", "s[0] s[1] s[1]^-1 s[0]^-1"]) == 0
    assert json.loads(capsys.readouterr().out) == ["a", "e"]
    assert main(["reduce", "--format", "csv", "x^2 x^-1"]) == 0
    assert capsys.readouterr().out == "x\n"


def test_reduce_syntax_error(capsys):
    assert main(["reduce", "s[0"]) == 2
    assert "position 1" in capsys.readouterr().err


def test_eval_one_shot(capsys):
    assert main(["eval", "--config", VSTATE, "--joining", "omega", "1:h 2:k", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [v["value"] for v in report["values"]] == ["1/2", "1"]


def test_subcommand_without_arguments_runs_config_tasks(capsys, tmp_path):
    assert main(["eval", "--config", VSTATE, "--out", str(tmp_path)]) == 0
    assert (tmp_path / "omega-hk.json").exists()
    assert not (tmp_path / "omega-is-a-joining.json").exists()


def test_split_check_exit_status(capsys):
    args = ["split-check", "--config", VSTATE, "--joining", "omega", "--a1", "h", "--a2", "k"]
    assert main(args) == 1
    assert json.loads(capsys.readouterr().out)["status"] == "FAIL"
    assert main(args + ["--expect", "violation"]) == 0


def test_correlate_csv(capsys):
    args = ["correlate", "--config", SHIFT, "--system", "B", "--k", "2", "--monomial", "1:s[0] 2:s[0]^-1",
            "--box", "0:1", "--box", "0:2", "--format", "csv"]
    assert main(args) == 0
    assert capsys.readouterr().out == "n1,n2,value\n0,0,1\n0,1,0\n0,2,0\n1,0,0\n1,1,1\n1,2,0\n"


def test_ergodic_verify_folner_gns(capsys):
    assert main(["ergodic", "--config", SHIFT, "--system", "B"]) == 0
    assert json.loads(capsys.readouterr().out)["info"]["ergodic"] is True
    assert main(["verify-joining", "--config", SHIFT, "--joining", "delta", "--count", "5", "--n-range=-2:2"]) == 0
    capsys.readouterr()
    assert main(["folner", "--config", SHIFT, "--system", "B", "--k", "2", "--monomial", "1:s[0] 2:s[0]^-1",
                 "--n-max", "6", "--shift", "1", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["values"][0]["limit"] == "0" and out["values"][0]["stabilized_from"] == 1
    assert main(["gns-check", "--config", SHIFT, "--joining", "mu", "--count", "5", "--fixed-projection"]) == 0


def test_config_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"systems": {}, "contexts": {"C": ["X"]}}')
    assert main(["run", "--config", str(bad)]) == 2
    assert "'X'" in capsys.readouterr().err
    bad.write_text('{"systems": ')
    assert main(["eval", "--config", str(bad), "--joining", "J"]) == 2
    assert "line 1" in capsys.readouterr().err


def test_run_uses_env_out_dir(tmp_path):
    env_dir = tmp_path / "env-out"
    proc = subprocess.run(
        [sys.executable, "-m", "freejoin", "run", "--config", VSTATE],
        capture_output=True,
        text=True,
        env={"FREEJOIN_OUT": str(env_dir), "PATH": ""},
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS  omega-hk" in proc.stdout
    assert json.loads((env_dir / "summary.json").read_text())["status"] == "PASS"
