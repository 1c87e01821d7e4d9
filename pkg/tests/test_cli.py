import json
from pathlib import Path

from click.testing import CliRunner

from logicweave.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def invoke(*args, **kwargs):
    return CliRunner().invoke(main, list(args), **kwargs)


class TestDeduce:
    def test_worked_derivation_with_rule_labels(self, tmp_path):
        exprs = tmp_path / "exprs.txt"
        exprs.write_text("# inputs\n¬A→¬B\n¬B→¬C\n")
        result = invoke("deduce", str(exprs))
        assert result.exit_code == 0
        assert "C → A  [contraposition+chain]" in result.output
        assert "¬A → ¬C  [chain]" in result.output

    def test_ascii_style(self, tmp_path):
        exprs = tmp_path / "exprs.txt"
        exprs.write_text("~A -> ~B\n~B -> ~C\n")
        result = invoke("deduce", str(exprs), "--ascii")
        assert result.exit_code == 0
        assert "C -> A  [contraposition+chain]" in result.output

    def test_limit_exceeded_prints_partial_and_fails(self, tmp_path):
        exprs = tmp_path / "exprs.txt"
        exprs.write_text("A→B\nB→C\nC→D\nD→E\n")
        result = invoke("deduce", str(exprs), "--max-rounds", "1")
        assert result.exit_code == 1
        assert "A → C" in result.output
        error = json.loads(result.stderr)
        assert error["error"] == "LimitExceeded"

    def test_parse_error_is_machine_readable(self, tmp_path):
        exprs = tmp_path / "exprs.txt"
        exprs.write_text("A →\n")
        result = invoke("deduce", str(exprs))
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"] == "ParseError"


class TestAugment:
    def test_golden_instance_with_mock_script(self, tmp_path):
        trace_out = tmp_path / "trace.json"
        result = invoke(
            "augment",
            str(FIXTURES / "golden" / "bob_instance.json"),
            "--mock-script",
            str(FIXTURES / "golden" / "bob_script.json"),
            "--trace",
            str(trace_out),
        )
        assert result.exit_code == 0, result.output
        assert "Bob is white." in result.output
        doc = json.loads(trace_out.read_text())
        assert doc["instance_id"] == "bob-case-study"
        assert len(doc["derived"]) == 7
        assert doc["timings"]

    def test_flags_are_plumbed_into_trace(self, tmp_path):
        script = [
            {"match": "Task: extract causal statements.", "completions": ["- Bob is white.\n"]},
            {
                "match": "one symbol per predicate",
                "completions": [
                    "Propositions:\nA: white\nB: kind\n\nImplication Expressions:\nA → B\n"
                ],
            },
            {"match": "Task: translate", "completions": ["1. If not kind, then not white.\n"]},
        ]
        script_path = tmp_path / "script.json"
        script_path.write_text(json.dumps(script))
        trace_out = tmp_path / "trace.json"
        result = invoke(
            "augment",
            str(FIXTURES / "golden" / "bob_instance.json"),
            "--mock-script",
            str(script_path),
            "--no-feedback",
            "--no-enhance",
            "--no-reorder",
            "--k",
            "1",
            "--trace",
            str(trace_out),
        )
        assert result.exit_code == 0, result.output
        doc = json.loads(trace_out.read_text())
        cfg = doc["config"]
        assert cfg["enable_feedback"] is False
        assert cfg["enable_subject_quantifier_enhancement"] is False
        assert cfg["enable_reordering"] is False
        judge_kinds = [
            e["kind"] for s in doc["stages"] for e in s["exchanges"] if e["kind"] == "judge"
        ]
        assert judge_kinds == []

    def test_needs_provider(self):
        result = invoke("augment", str(FIXTURES / "golden" / "bob_instance.json"))
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"] == "ValueError"


class TestConvert:
    def test_convert_family(self, tmp_path):
        out = tmp_path / "out.jsonl"
        result = invoke("convert", "--family", "logiqa", str(FIXTURES / "logiqa.jsonl"), str(out))
        assert result.exit_code == 0
        assert "wrote 10 records" in result.output
        assert len(out.read_text().splitlines()) == 10

    def test_unknown_family_is_usage_error(self, tmp_path):
        result = invoke("convert", "--family", "webtext", "in", "out")
        assert result.exit_code == 2  # click usage error prints help


class TestCache:
    def test_stats_and_prune(self, tmp_path, monkeypatch):
        from logicweave.gateway import LlmRequest, LlmResponse, Message, ResponseCache, cache_key

        store = ResponseCache(tmp_path / "cache")
        request = LlmRequest(model="m", messages=(Message("user", "hi"),))
        store.put(cache_key(request), request, LlmResponse(("ok",)))
        result = invoke("cache", "stats", "--cache-dir", str(tmp_path / "cache"))
        assert result.exit_code == 0
        assert json.loads(result.output)["entries"] == 1
        result = invoke("cache", "prune", "--cache-dir", str(tmp_path / "cache"))
        assert json.loads(result.output)["removed"] == 1

    def test_env_var_resolution(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LOGICWEAVE_CACHE_DIR", str(tmp_path / "envcache"))
        result = invoke("cache", "stats")
        assert result.exit_code == 0
        assert json.loads(result.output)["entries"] == 0

    def test_no_cache_dir(self, monkeypatch):
        monkeypatch.delenv("LOGICWEAVE_CACHE_DIR", raising=False)
        result = invoke("cache", "stats")
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"] == "ValueError"


class TestEval:
    def make_run_config(self, tmp_path):
        import pipeline_fixtures as fx  # noqa: F401
        from test_harness import matrix_script

        (tmp_path / "generic.jsonl").write_text((FIXTURES / "generic.jsonl").read_text())
        (tmp_path / "script.json").write_text(json.dumps(matrix_script()))
        config = tmp_path / "run.toml"
        config.write_text(
            """
run_id = "cli-run"
parallelism = 1

[provider]
mock_script = "script.json"
model = "test-model"

[pipeline]
k = 1
enable_feedback = false
enable_reordering = false
model = "test-model"

[[datasets]]
family = "generic"
path = "generic.jsonl"
name = "fixture"

[[methods]]
kind = "cot"

[[methods]]
kind = "cot"
augment = true
"""
        )
        return config

    def test_eval_and_rescore(self, tmp_path):
        config = self.make_run_config(tmp_path)
        result = invoke("eval", "--config", str(config))
        assert result.exit_code == 0, result.output
        assert "cot+aug" in result.output
        run_dir = tmp_path / "runs" / "cli-run"
        summary_csv = (run_dir / "summary.csv").read_text()
        assert "cot,fixture,10,7,3,0,0.7000" in summary_csv
        assert "cot+aug,fixture,10,9,1,0,0.9000" in summary_csv

        rescore = invoke("eval", "--rescore", str(run_dir))
        assert rescore.exit_code == 0
        for line in summary_csv.splitlines():
            assert line in rescore.output

    def test_eval_without_args(self):
        result = invoke("eval")
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"] == "ValueError"

    def test_config_error_names_key(self, tmp_path):
        config = tmp_path / "bad.toml"
        config.write_text("[[methods]]\nkind = \"cot\"\n")
        result = invoke("eval", "--config", str(config))
        assert result.exit_code == 1
        error = json.loads(result.stderr)
        assert error["error"] == "ConfigError"
        assert "datasets" in error["message"]
