"""Experiment runner: method × dataset matrices with resumable trace files.

Every (instance, method) pair gets one immutable JSON trace under the run
directory; the summary is always recomputed by folding over those files,
so ``eval --rescore`` and a fresh run agree by construction. Interrupted
runs resume by skipping pairs whose trace file already exists.
"""

from __future__ import annotations

import csv
import io
import json
import os
import secrets
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from logicweave.datasets import DatasetDescriptor, NumericInstance, load
from logicweave.errors import LogicweaveError
from logicweave.gateway.config import ProviderConfig, build_provider, provider_config_from_dict
from logicweave.gateway.types import Provider
from logicweave.logic import ClosureLimits
from logicweave.methods import ABSTAIN, MethodSpec, answer, normalize_number
from logicweave.pipeline.templates import TemplateSet
from logicweave.pipeline.types import McqaInstance, PipelineConfig

TRACE_SCHEMA_VERSION = 1


class ConfigError(LogicweaveError):
    """Run configuration is invalid; the message names the offending key."""


@dataclass
class RunConfig:
    datasets: list[DatasetDescriptor]
    methods: list[MethodSpec]
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    parallelism: int = 4
    output_dir: Path = Path("runs")
    run_id: str | None = None
    base_dir: Path = Path(".")

    def __post_init__(self) -> None:
        if not self.datasets:
            raise ConfigError("datasets: at least one dataset is required")
        if not self.methods:
            raise ConfigError("methods: at least one method is required")
        if self.parallelism < 1:
            raise ConfigError("parallelism: must be >= 1")
        if self.run_id is None:
            self.run_id = time.strftime("%Y%m%d-%H%M%S") + "-" + secrets.token_hex(3)

    @property
    def run_dir(self) -> Path:
        return Path(self.output_dir) / self.run_id


def _pipeline_config_from_dict(table: dict) -> PipelineConfig:
    table = dict(table)
    limits = table.pop("closure_limits", None)
    if limits is not None:
        table["closure_limits"] = ClosureLimits(**limits)
    try:
        return PipelineConfig(**table)
    except TypeError as exc:
        raise ConfigError(f"pipeline: {exc}")


def load_run_config(path: str | Path) -> RunConfig:
    path = Path(path)
    doc = tomllib.loads(path.read_text(encoding="utf-8"))
    base_dir = path.parent

    def bad(key, exc):
        return ConfigError(f"{key}: {exc}")

    try:
        datasets = [
            DatasetDescriptor(
                family=d["family"],
                path=base_dir / d["path"],
                sample_limit=d.get("sample_limit"),
                shuffle_seed=d.get("shuffle_seed"),
                name=d.get("name"),
            )
            for d in doc.get("datasets", [])
        ]
    except (KeyError, ValueError, TypeError) as exc:
        raise bad("datasets", exc)
    try:
        methods = [MethodSpec(**m) for m in doc.get("methods", [])]
    except (ValueError, TypeError) as exc:
        raise bad("methods", exc)
    try:
        provider = provider_config_from_dict(doc.get("provider", {}))
    except ValueError as exc:
        raise bad("provider", exc)
    pipeline = _pipeline_config_from_dict(doc.get("pipeline", {}))
    return RunConfig(
        datasets=datasets,
        methods=methods,
        pipeline=pipeline,
        provider=provider,
        parallelism=doc.get("parallelism", 4),
        output_dir=base_dir / doc.get("output_dir", "runs"),
        run_id=doc.get("run_id"),
        base_dir=base_dir,
    )


class TallyingProvider:
    """Per-task wrapper counting logical calls and reported token usage."""

    def __init__(self, inner: Provider):
        self.inner = inner
        self.default_model = getattr(inner, "default_model", "default")
        self.calls = 0
        self.tokens = 0

    def complete(self, request):
        response = self.inner.complete(request)
        self.calls += 1
        usage = response.provider_meta.get("usage") if response.provider_meta else None
        if isinstance(usage, dict):
            self.tokens += int(usage.get("total_tokens", 0))
        return response


def _instance_doc(instance) -> dict:
    if isinstance(instance, NumericInstance):
        return {
            "id": instance.id,
            "question": instance.question,
            "context": instance.context,
            "mode": "numeric",
            "gold": instance.gold_value,
        }
    return {
        "id": instance.id,
        "question": instance.question,
        "context": instance.context,
        "options": [list(o) for o in instance.options],
        "gold": instance.gold,
    }


def _is_correct(predicted: str, instance_doc: dict) -> bool:
    if predicted == ABSTAIN:
        return False
    if instance_doc.get("mode") == "numeric":
        return normalize_number(predicted) == normalize_number(instance_doc["gold"])
    return predicted == instance_doc["gold"]


def _atomic_write(path: Path, payload: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as handle:
        handle.write(payload)
    os.replace(tmp, path)


def trace_path(run_dir: Path, dataset_name: str, method_name: str, instance_id: str) -> Path:
    return run_dir / "traces" / f"{dataset_name}__{method_name}" / f"{instance_id}.json"


def _run_one(
    cfg: RunConfig,
    provider: Provider,
    templates: TemplateSet,
    dataset_name: str,
    instance,
    method: MethodSpec,
) -> None:
    path = trace_path(cfg.run_dir, dataset_name, method.name, instance.id)
    if path.exists():  # resume: completed pairs are immutable
        return
    tally = TallyingProvider(provider)
    started = time.perf_counter()
    doc = {
        "schema_version": TRACE_SCHEMA_VERSION,
        "run_id": cfg.run_id,
        "dataset": dataset_name,
        "method": {
            "name": method.name,
            "kind": method.kind,
            "augment": method.augment,
            "temperature": method.temperature,
            "sample_count": method.sample_count,
            "top_k": method.top_k,
        },
        "instance": _instance_doc(instance),
        "error": None,
        "pipeline_trace": None,
    }
    try:
        verdict, pipeline_trace = answer(
            instance, method, tally, cfg.pipeline, templates=templates
        )
        doc["verdict"] = {
            "predicted": verdict.predicted,
            "votes": dict(verdict.votes),
            "raw_completions": list(verdict.raw_completions),
        }
        if pipeline_trace is not None:
            doc["pipeline_trace"] = pipeline_trace.to_dict()
    except Exception as exc:  # an instance failure never aborts the matrix
        doc["verdict"] = {"predicted": ABSTAIN, "votes": {}, "raw_completions": []}
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        trace = getattr(exc, "trace", None)
        if trace is not None:
            doc["pipeline_trace"] = trace.to_dict()
    doc["llm_calls"] = tally.calls
    doc["tokens"] = tally.tokens
    doc["wall_clock_s"] = round(time.perf_counter() - started, 6)
    _atomic_write(path, json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))


@dataclass(frozen=True)
class CellSummary:
    method: str
    dataset: str
    instances: int
    correct: int
    incorrect: int
    abstain: int
    llm_calls: int
    tokens: int
    errors: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.instances if self.instances else 0.0


@dataclass
class RunSummary:
    run_id: str
    cells: list[CellSummary]
    wall_clock_s: float = 0.0

    def cell(self, method: str, dataset: str) -> CellSummary:
        for c in self.cells:
            if c.method == method and c.dataset == dataset:
                return c
        raise KeyError((method, dataset))

    def to_csv(self) -> str:
        # volatile fields (wall clock) stay out so cached reruns byte-match
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            [
                "method",
                "dataset",
                "instances",
                "correct",
                "incorrect",
                "abstain",
                "accuracy",
                "llm_calls",
                "tokens",
                "errors",
            ]
        )
        for c in self.cells:
            writer.writerow(
                [
                    c.method,
                    c.dataset,
                    c.instances,
                    c.correct,
                    c.incorrect,
                    c.abstain,
                    f"{c.accuracy:.4f}",
                    c.llm_calls,
                    c.tokens,
                    c.errors,
                ]
            )
        return buffer.getvalue()

    def table(self) -> str:
        """Aligned text table: methods as rows, datasets as columns."""
        datasets = sorted({c.dataset for c in self.cells})
        methods = sorted({c.method for c in self.cells})
        width = max([len(d) for d in datasets] + [8])
        mwidth = max([len(m) for m in methods] + [6])
        lines = [
            " ".join(["method".ljust(mwidth)] + [d.rjust(width) for d in datasets])
        ]
        for m in methods:
            row = [m.ljust(mwidth)]
            for d in datasets:
                try:
                    row.append(f"{self.cell(m, d).accuracy:.4f}".rjust(width))
                except KeyError:
                    row.append("-".rjust(width))
            lines.append(" ".join(row))
        return "\n".join(lines)


def summarize_traces(run_dir: str | Path) -> RunSummary:
    """Recount every trace file under a run directory (the re-scorer)."""
    run_dir = Path(run_dir)
    traces_root = run_dir / "traces"
    if not traces_root.is_dir():
        raise ConfigError(f"run_dir: no traces under {run_dir}")
    buckets: dict[tuple[str, str], dict] = {}
    run_id = run_dir.name
    for path in sorted(traces_root.rglob("*.json")):
        doc = json.loads(path.read_text(encoding="utf-8"))
        run_id = doc.get("run_id", run_id)
        key = (doc["method"]["name"], doc["dataset"])
        bucket = buckets.setdefault(
            key,
            {"instances": 0, "correct": 0, "abstain": 0, "calls": 0, "tokens": 0, "errors": 0},
        )
        predicted = doc["verdict"]["predicted"]
        bucket["instances"] += 1
        if predicted == ABSTAIN:
            bucket["abstain"] += 1
        elif _is_correct(predicted, doc["instance"]):
            bucket["correct"] += 1
        bucket["calls"] += doc.get("llm_calls", 0)
        bucket["tokens"] += doc.get("tokens", 0)
        if doc.get("error"):
            bucket["errors"] += 1
    cells = [
        CellSummary(
            method=method,
            dataset=dataset,
            instances=b["instances"],
            correct=b["correct"],
            incorrect=b["instances"] - b["correct"] - b["abstain"],
            abstain=b["abstain"],
            llm_calls=b["calls"],
            tokens=b["tokens"],
            errors=b["errors"],
        )
        for (method, dataset), b in sorted(buckets.items())
    ]
    return RunSummary(run_id=run_id, cells=cells)


def run_matrix(cfg: RunConfig, provider: Provider | None = None) -> RunSummary:
    """Answer every instance under every method; write traces and summaries."""
    started = time.perf_counter()
    if provider is None:
        provider = build_provider(cfg.provider, base_dir=cfg.base_dir)
    templates = TemplateSet.load(cfg.pipeline.template_set)
    run_dir = cfg.run_dir
    run_dir.mkdir(parents=True, exist_ok=True)
    config_snapshot = run_dir / "config.json"
    if not config_snapshot.exists():
        _atomic_write(
            config_snapshot,
            json.dumps(
                {
                    "run_id": cfg.run_id,
                    "parallelism": cfg.parallelism,
                    "pipeline": cfg.pipeline.to_dict(),
                    "datasets": [
                        {"family": d.family, "path": str(d.path), "name": d.display_name}
                        for d in cfg.datasets
                    ],
                    "methods": [m.name for m in cfg.methods],
                },
                sort_keys=True,
                indent=2,
            ),
        )

    tasks = []
    for desc in cfg.datasets:
        instances = load(desc)
        for method in cfg.methods:
            for instance in instances:
                tasks.append((desc.display_name, instance, method))

    def worker(task):
        dataset_name, instance, method = task
        _run_one(cfg, provider, templates, dataset_name, instance, method)

    if cfg.parallelism == 1:
        for task in tasks:
            worker(task)
    else:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            list(pool.map(worker, tasks))

    summary = summarize_traces(run_dir)
    summary.wall_clock_s = time.perf_counter() - started
    (run_dir / "summary.csv").write_text(summary.to_csv(), encoding="utf-8")
    (run_dir / "summary.txt").write_text(summary.table() + "\n", encoding="utf-8")
    return summary
