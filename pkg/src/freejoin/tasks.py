"""Execute configured tasks and write their JSON/CSV artifacts."""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .config import ExperimentConfig, Task
from .freeproduct import FreeProductContext
from .gns import check_fixed_projection, check_intertwining, gns_model
from .joinings import check_tensorial_splitting, verify_joining_axioms
from .mixing import (
    AveragedJoining,
    CorrelationSpec,
    FolnerBoxSequence,
    asymptotic_state,
    correlation_value,
    gap_region,
    is_ergodic,
    is_strongly_mixing,
    kmixing_threshold,
    mixing_witness,
    verify_kmixing,
    verify_shifted_invariance,
)
from .reports import Report
from .sampling import factor_samples, random_element, random_product_elements, symbol_pool

DEFAULT_SEED = 0


@dataclass
class TaskResult:
    task: Task
    report: Report
    table: list[list[str]] | None = None
    header: list[str] = field(default_factory=list)

    def json_text(self) -> str:
        out = self.report.to_dict()
        out["task"] = self.task.name
        out["type"] = self.task.type
        return json.dumps(out, indent=2, sort_keys=True) + "\n"

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.table or [])
        return buf.getvalue()


def task_rng(seed: int, task: Task) -> random.Random:
    # str seeds hash deterministically, so every task gets its own stream
    return random.Random(f"{seed}:{task.name}")


def _sampled(params: dict, ctx: FreeProductContext, rng: random.Random):
    s = params.get("sampling", {})
    count = s.get("count", 20)
    length = s.get("max_length", 4)
    radius = s.get("index_radius", 3)
    if "factor_words" in params:
        words = {int(i): ws for i, ws in params["factor_words"].items()}
    else:
        words = factor_samples(rng, ctx, count, length, radius)
    if "elements" in params:
        elements = params["elements"]
    else:
        elements = random_product_elements(rng, ctx, count, s.get("terms", 3), length, radius)
    return words, elements


def _run_eval(cfg, task, rng) -> TaskResult:
    p = task.params
    J = cfg.joinings[p["joining"]]
    report = Report(task.name)
    for j, a in enumerate(p["elements"]):
        v = J(a)
        report.values.append({"element": a, "value": v})
        if "expected" in p:
            report.expect_equal(v, p["expected"][j], element=a)
    return TaskResult(task, report)


def _run_verify(cfg, task, rng) -> TaskResult:
    p = task.params
    J = cfg.joinings[p["joining"]]
    words, elements = _sampled(p, J.ctx, rng)
    lo, hi = p["n_range"]
    report = verify_joining_axioms(J, words, range(lo, hi + 1), elements)
    report.task = task.name
    return TaskResult(task, report)


def _run_split(cfg, task, rng) -> TaskResult:
    p = task.params
    split = check_tensorial_splitting(cfg.joinings[p["joining"]], p["a1"], p["a2"])
    report = Report(task.name, info={"expect": p["expect"], "splits": split.passed})
    if p["expect"] == "split":
        report.merge(split)
    else:
        report.check(not split.passed, check="expected a splitting violation")
        report.values.extend(split.witnesses)
    return TaskResult(task, report)


def _run_ergodic(cfg, task, rng) -> TaskResult:
    p = task.params
    B = cfg.systems[p["system"]]
    erg = is_ergodic(B)
    report = Report(task.name, info={"ergodic": erg, "strongly_mixing": is_strongly_mixing(B)})
    report.values.append({"system": B.name, "ergodic": erg, **mixing_witness(B)})
    for g, h in p["pairs"]:
        report.values.append({"g": g, "h": h, **mixing_witness(B, g, h)})
    if "expected" in p:
        report.expect_equal(erg, p["expected"], check="ergodic")
    return TaskResult(task, report)


def _run_correlate(cfg, task, rng) -> TaskResult:
    p = task.params
    spec = CorrelationSpec(cfg.systems[p["system"]], p["k"], p["monomial"])
    ranges = [range(lo, hi + 1) for lo, hi in p["box"]]
    report = Report(task.name, info={"monomial": str(spec)})
    rows = []
    for nbar in itertools.product(*ranges):
        v = correlation_value(spec, nbar)
        rows.append([str(n) for n in nbar] + [str(v)])
        report.values.append({"n": list(nbar), "value": v})
    header = [f"n{j}" for j in range(1, p["k"] + 1)] + ["value"]
    return TaskResult(task, report, rows, header)


def _run_kmixing(cfg, task, rng) -> TaskResult:
    p = task.params
    spec = CorrelationSpec(cfg.systems[p["system"]], p["k"], p["monomial"])
    threshold = kmixing_threshold(spec)
    report = verify_kmixing(spec, threshold, gap_region(p["k"], threshold, p["size"]))
    report.task = task.name
    return TaskResult(task, report)


def _boxes(spec, k: int) -> FolnerBoxSequence:
    if spec == "shifted":
        return FolnerBoxSequence.shifted(k)
    if spec == "plain":
        return FolnerBoxSequence.plain(k)
    return FolnerBoxSequence(tuple(spec))


def _run_folner(cfg, task, rng) -> TaskResult:
    p = task.params
    B, k = cfg.systems[p["system"]], p["k"]
    ctx = FreeProductContext([B] * k)
    boxes = _boxes(p["boxes"], k)
    targets = [CorrelationSpec(B, k, m) for m in p.get("monomials", [])] + list(p.get("elements", []))
    report = Report(task.name, info={"offsets": list(boxes.offsets), "N_max": p["N_max"]})
    for av in asymptotic_state(ctx, targets, boxes, p["N_max"], p["window"]):
        report.values.append(av.to_dict())
    if "shift" in p:
        for N in range(1, p["N_max"] + 1):
            for t in targets:
                report.merge(verify_shifted_invariance(ctx, t, boxes, N, p["shift"]))
    if "verify_axioms" in p:
        va = p["verify_axioms"]
        words, elements = _sampled(va, ctx, rng)
        lo, hi = va["n_range"]
        for N in range(1, p["N_max"] + 1):
            sub = verify_joining_axioms(AveragedJoining(ctx, boxes, N), words, range(lo, hi + 1), elements)
            report.merge(sub, prefix=f"axioms N={N}")
    return TaskResult(task, report)


def _run_gns(cfg, task, rng) -> TaskResult:
    p = task.params
    model = gns_model(cfg.joinings[p["joining"]])
    iota, kappa = p["iota"], p["kappa"]
    v = p["vectors"]
    pool = symbol_pool(model.ctx.factor(kappa), v.get("index_radius", 3))
    elements = [random_element(rng, pool, v.get("terms", 3), v.get("max_length", 4)) for _ in range(v["count"])]
    vectors = [model.gamma(kappa, a) for a in elements]
    lo, hi = p["n_range"]
    report = check_intertwining(model, iota, kappa, range(lo, hi + 1), vectors)
    report.task = task.name
    if p.get("fixed_projection"):
        report.merge(check_fixed_projection(model, iota, kappa, elements, range(lo, hi + 1)), prefix="fixed-projection")
    return TaskResult(task, report)


RUNNERS = {
    "eval": _run_eval,
    "verify": _run_verify,
    "split-check": _run_split,
    "ergodic": _run_ergodic,
    "correlate": _run_correlate,
    "kmixing": _run_kmixing,
    "folner": _run_folner,
    "gns-check": _run_gns,
}


SAMPLING_TASKS = ("verify", "folner", "gns-check")


def run_task(cfg: ExperimentConfig, task: Task, seed: int | None = None) -> TaskResult:
    if seed is None:
        seed = cfg.seed if cfg.seed is not None else DEFAULT_SEED
    result = RUNNERS[task.type](cfg, task, task_rng(seed, task))
    if task.type in SAMPLING_TASKS:
        result.report.info["seed"] = seed
    return result


def run_config(cfg: ExperimentConfig, out_dir: str | Path | None, seed: int | None = None) -> tuple[int, list[TaskResult]]:
    """Run every task; write ``<task>.json`` (and ``.csv`` tables) plus ``summary.json``.

    Returns exit status 0 iff every task passed.
    """
    results = [run_task(cfg, t, seed) for t in cfg.tasks]
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in results:
            (out / f"{r.task.name}.json").write_text(r.json_text(), encoding="utf-8")
            if r.table is not None:
                (out / f"{r.task.name}.csv").write_text(r.csv_text(), encoding="utf-8")
        summary = {
            "status": "PASS" if all(r.report.passed for r in results) else "FAIL",
            "tasks": [{"task": r.task.name, "type": r.task.type, "status": r.report.status} for r in results],
        }
        (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return (0 if all(r.report.passed for r in results) else 1), results

