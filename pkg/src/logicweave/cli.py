"""Command-line interface.

Subcommands: ``deduce`` (closure over an expressions file), ``augment``
(five-stage pipeline on one instance), ``eval`` (method × dataset matrix),
``convert`` (dataset adapters), ``cache`` (store maintenance). Failures
print a machine-readable JSON object on stderr and exit nonzero.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click

from logicweave.datasets import FAMILIES, convert as convert_dataset
from logicweave.errors import LogicweaveError
from logicweave.gateway import (
    CACHE_DIR_ENV,
    MockProvider,
    ResponseCache,
    build_provider,
    load_provider_config,
)
from logicweave.harness import load_run_config, run_matrix, summarize_traces
from logicweave.logic import (
    ClosureLimits,
    ExpressionSet,
    LimitExceeded,
    closure,
    format_expression,
    parse_expression,
)
from logicweave.pipeline import McqaInstance, PipelineConfig, run_pipeline


def _fail(error: BaseException, code: int = 1):
    payload = {"error": type(error).__name__, "message": str(error)}
    click.echo(json.dumps(payload), err=True)
    sys.exit(code)


def failsafe(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (LogicweaveError, ValueError, OSError) as exc:
            _fail(exc)

    return wrapper


@click.group()
def main():
    """Deduce over LLM-extracted implications and evaluate prompting methods."""


@main.command()
@click.argument("exprs_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-antecedent", default=4, show_default=True)
@click.option("--max-derived", default=256, show_default=True)
@click.option("--max-rounds", default=16, show_default=True)
@click.option("--ascii", "ascii_style", is_flag=True, help="ASCII connectives in output.")
@failsafe
def deduce(exprs_file, max_antecedent, max_derived, max_rounds, ascii_style):
    """Deductively extend a file of implication expressions (one per line)."""
    style = "ascii" if ascii_style else "unicode"
    lines = Path(exprs_file).read_text(encoding="utf-8").splitlines()
    implications = tuple(
        parse_expression(line)
        for line in (l.strip() for l in lines)
        if line and not line.startswith("#")
    )
    limits = ClosureLimits(max_antecedent, max_derived, max_rounds)
    expressions = ExpressionSet(implications)
    try:
        derived = closure(expressions, limits)
        truncated = None
    except LimitExceeded as exc:
        derived = exc.partial
        truncated = exc
    for imp in derived:
        click.echo(f"{format_expression(imp, style)}  [{derived.rule_label(imp)}]")
    if truncated is not None:
        _fail(truncated)


def _instance_from_file(path: str) -> McqaInstance:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return McqaInstance(
        id=str(doc["id"]),
        question=str(doc["question"]),
        context=str(doc["context"]),
        options=tuple((str(l), str(t)) for l, t in doc["options"]),
        gold=str(doc["answer"]),
    )


@main.command()
@click.argument("instance_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), help="Provider TOML.")
@click.option("--mock-script", type=click.Path(exists=True), help="Scripted mock provider.")
@click.option("--k", type=int, default=None, help="Feedback iterations per stage.")
@click.option("--no-feedback", is_flag=True)
@click.option("--no-enhance", is_flag=True)
@click.option("--no-reorder", is_flag=True)
@click.option("--template-set", default=None)
@click.option("--trace", "trace_path", type=click.Path(), help="Where to write the trace JSON.")
@failsafe
def augment(
    instance_json,
    config_path,
    mock_script,
    k,
    no_feedback,
    no_enhance,
    no_reorder,
    template_set,
    trace_path,
):
    """Run the five-stage augmentation pipeline on one instance."""
    if mock_script:
        provider = MockProvider.from_file(mock_script)
    elif config_path:
        provider = build_provider(
            load_provider_config(config_path), base_dir=Path(config_path).parent
        )
    else:
        raise ValueError("augment needs --config or --mock-script")
    overrides = {}
    if k is not None:
        overrides["k"] = k
    if no_feedback:
        overrides["enable_feedback"] = False
    if no_enhance:
        overrides["enable_subject_quantifier_enhancement"] = False
    if no_reorder:
        overrides["enable_reordering"] = False
    if template_set:
        overrides["template_set"] = template_set
    cfg = PipelineConfig(**overrides)
    instance = _instance_from_file(instance_json)
    augmented, trace = run_pipeline(instance, cfg, provider)
    click.echo(augmented.context)
    if trace_path:
        Path(trace_path).write_text(trace.to_json(), encoding="utf-8")
        click.echo(f"trace written to {trace_path}", err=True)


@main.command("eval")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--rescore",
    "rescore_dir",
    type=click.Path(exists=True, file_okay=False),
    help="Recount an existing run directory instead of executing.",
)
@failsafe
def eval_cmd(config_path, rescore_dir):
    """Run the method × dataset matrix, or rescore an existing run."""
    if rescore_dir:
        summary = summarize_traces(rescore_dir)
        click.echo(summary.table())
        click.echo("", nl=False)
        click.echo(summary.to_csv(), nl=False)
        return
    if not config_path:
        raise ValueError("eval needs --config (or --rescore RUN_DIR)")
    cfg = load_run_config(config_path)
    summary = run_matrix(cfg)
    click.echo(f"run: {cfg.run_dir}")
    click.echo(summary.table())


@main.command()
@click.option("--family", required=True, type=click.Choice(FAMILIES))
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.argument("dst", type=click.Path(dir_okay=False))
@failsafe
def convert(family, src, dst):
    """Convert a raw dataset file into the canonical JSONL shape."""
    count = convert_dataset(family, src, dst)
    click.echo(f"wrote {count} records to {dst}")


def _resolve_cache_dir(cache_dir: str | None) -> Path:
    resolved = cache_dir or os.environ.get(CACHE_DIR_ENV)
    if not resolved:
        raise ValueError(f"no cache directory; pass --cache-dir or set {CACHE_DIR_ENV}")
    return Path(resolved)


@main.group()
def cache():
    """Response-cache maintenance."""


@cache.command("stats")
@click.option("--cache-dir", default=None)
@failsafe
def cache_stats(cache_dir):
    store = ResponseCache(_resolve_cache_dir(cache_dir))
    stats = store.stats()
    click.echo(json.dumps({"entries": stats.entries, "total_bytes": stats.total_bytes}))


@cache.command("prune")
@click.option("--cache-dir", default=None)
@click.option("--older-than", type=float, default=None, help="Only records older than N days.")
@failsafe
def cache_prune(cache_dir, older_than):
    store = ResponseCache(_resolve_cache_dir(cache_dir))
    removed = store.prune(older_than_days=older_than)
    click.echo(json.dumps({"removed": removed}))


if __name__ == "__main__":
    main()
