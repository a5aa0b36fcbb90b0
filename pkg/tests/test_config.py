import json
from pathlib import Path

import pytest

from freejoin.config import load_config, parse_config
from freejoin.errors import ConfigError
from freejoin.tasks import run_config, run_task

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

MINIMAL = {
    "systems": {"B": {"parts": [{"type": "shift", "family": "s", "step": 1}]}},
    "contexts": {"BB": ["B", "B"]},
    "joinings": {"mu": {"kind": "trivial", "context": "BB"}},
    "tasks": [{"type": "eval", "joining": "mu", "elements": ["1", "1:s[0] 2:s[0]^-1"]}],
}


def with_changes(base, **changes):
    doc = json.loads(json.dumps(base))
    doc.update(changes)
    return json.dumps(doc)


def test_minimal_config_parses_and_runs():
    cfg = parse_config(json.dumps(MINIMAL))
    assert set(cfg.systems) == {"B"}
    assert cfg.contexts["BB"].k == 2
    res = run_task(cfg, cfg.tasks[0])
    assert res.report.passed
    assert [str(v["value"]) for v in res.report.values] == ["1", "0"]


def test_unresolved_reference_names_the_symbol():
    text = with_changes(MINIMAL, contexts={"BB": ["B", "X"]})
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert "'X'" in str(info.value)
    assert info.value.path == "$.contexts.BB[1]"


@pytest.mark.parametrize(
    "changes, path",
    [
        ({"tasks": [{"type": "eval", "joining": "nope", "elements": []}]}, "$.tasks[0].joining"),
        ({"tasks": [{"type": "eval", "joining": "mu", "elements": ["1:s[0] 3:s[1]"]}]}, "$.tasks[0].elements[0]"),
        ({"tasks": [{"type": "frobnicate"}]}, "$.tasks[0].type"),
        ({"systems": {"B": {"parts": [{"type": "shift", "family": "s"}]}}}, "$.systems.B.parts[0].step"),
        ({"joinings": {"mu": {"kind": "diagonal", "context": "BB", "target": "Q"}}}, "$.joinings.mu.target"),
    ],
)
def test_diagnostics_name_the_offending_path(changes, path):
    with pytest.raises(ConfigError) as info:
        parse_config(with_changes(MINIMAL, **changes))
    assert info.value.path == path


def test_word_syntax_errors_carry_the_position():
    text = with_changes(MINIMAL, tasks=[{"type": "eval", "joining": "mu", "elements": ["1:s[0] 2:s[0"]}])
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.path == "$.tasks[0].elements[0]"
    assert info.value.position == 10


def test_json_syntax_error_reports_line_and_column():
    with pytest.raises(ConfigError) as info:
        parse_config('{\n  "systems": {,}\n}')
    assert info.value.path == "line 2 column 15"
    assert info.value.position == 16


def test_intertwining_violation_surfaces_from_factor_maps():
    doc = json.loads(json.dumps(MINIMAL))
    doc["systems"]["C"] = {"parts": [{"type": "shift", "family": "s", "step": 2}]}
    doc["joinings"]["d"] = {"kind": "diagonal", "context": "BB", "target": "C"}
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(doc))
    assert info.value.path == "$.joinings.d"
    assert "intertwine" in str(info.value)


@pytest.mark.parametrize("name", ["vector_state.json", "shift_mixing.json"])
def test_round_trip(name):
    cfg = load_config(CONFIGS / name)
    text = cfg.serialize()
    again = parse_config(text)
    assert again.to_dict() == cfg.to_dict()
    assert again.serialize() == text
    assert again.systems == cfg.systems


def test_round_trip_normalizes_words():
    text = with_changes(MINIMAL, tasks=[{"type": "eval", "joining": "mu", "elements": ["1:s[0]  1:s[0]^-1 + 2 * 2:s[1]^1"]}])
    cfg = parse_config(text)
    assert cfg.to_dict()["tasks"][0]["elements"] == ["e + 2 * 2:s[1]"]


def test_vector_state_config_runs(tmp_path):
    cfg = load_config(CONFIGS / "vector_state.json")
    status, results = run_config(cfg, tmp_path)
    assert status == 0
    report = json.loads((tmp_path / "omega-hk.json").read_text())
    assert report["status"] == "PASS"
    assert report["values"] == [{"element": "1:h 2:k", "value": "1/2"}]
    split = json.loads((tmp_path / "omega-does-not-split.json").read_text())
    assert split["values"][0]["a1"] == "h" and split["values"][0]["a2"] == "k"
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["status"] == "PASS" and len(summary["tasks"]) == 4


def test_failed_verification_sets_exit_status(tmp_path):
    doc = json.loads((CONFIGS / "vector_state.json").read_text())
    doc["tasks"] = [{"type": "split-check", "joining": "omega", "a1": ["h"], "a2": ["k"]}]
    status, results = run_config(parse_config(json.dumps(doc)), tmp_path)
    assert status == 1
    assert results[0].report.status == "FAIL"


def test_kmixing_task_reports_threshold_and_witness(tmp_path):
    cfg = load_config(CONFIGS / "shift_mixing.json")
    task = next(t for t in cfg.tasks if t.type == "kmixing")
    report = run_task(cfg, task).report
    assert report.passed
    assert report.info["threshold"] == 3
    assert report.info["nontrivial_witness"]["value"] == "1"


def test_outputs_are_deterministic(tmp_path):
    cfg = load_config(CONFIGS / "shift_mixing.json")
    run_config(cfg, tmp_path / "a")
    run_config(load_config(CONFIGS / "shift_mixing.json"), tmp_path / "b")
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    # the seed is recorded by sampled tasks and does not touch exact tables
    run_config(cfg, tmp_path / "c", seed=1)
    assert (tmp_path / "c" / "two-time-correlation.csv").read_bytes() == (tmp_path / "a" / "two-time-correlation.csv").read_bytes()
    assert json.loads((tmp_path / "c" / "diagonal-is-a-joining.json").read_text())["info"]["seed"] == 1
    assert json.loads((tmp_path / "a" / "diagonal-is-a-joining.json").read_text())["info"]["seed"] == 20261014


def test_correlation_csv(tmp_path):
    cfg = load_config(CONFIGS / "shift_mixing.json")
    run_config(cfg, tmp_path)
    lines = (tmp_path / "two-time-correlation.csv").read_text().splitlines()
    assert lines[0] == "n1,n2,value"
    assert len(lines) == 26
    for line in lines[1:]:
        n1, n2, v = line.split(",")
        assert v == ("1" if n1 == n2 else "0")
