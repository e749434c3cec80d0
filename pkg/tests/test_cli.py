import json

import pytest

from stance_net.cli import main

from test_pipeline import write_corpus, write_jsonl


@pytest.fixture
def corpus(tmp_path):
    write_corpus(tmp_path)
    return tmp_path


def run_cli(*argv):
    return main([str(a) for a in argv])


class TestRun:
    def test_full_run(self, corpus, capsys):
        code = run_cli("run", "--config", corpus / "config.json")
        assert code == 0
        out = capsys.readouterr().out
        assert "targets: candidates=" in out
        assert "coverage: pass1=" in out
        assert "eval: accuracy=1.000 f1_average=1.000" in out

    def test_out_dir_override(self, corpus, capsys):
        other = corpus / "other"
        code = run_cli("run", "--config", corpus / "config.json", "--out-dir", other)
        assert code == 0
        assert (other / "stances.jsonl").is_file()

    def test_missing_config(self, tmp_path, capsys):
        code = run_cli("run", "--config", tmp_path / "nope.json")
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_stage_failure_exit_2(self, corpus, capsys):
        (corpus / "articles.jsonl").write_text("")
        code = run_cli("run", "--config", corpus / "config.json")
        assert code == 2
        assert "no candidate phrases" in capsys.readouterr().err

    def test_usage_error_exit_1(self, capsys):
        assert run_cli("run") == 1


class TestStagedCommands:
    def test_staged_matches_run(self, corpus, capsys):
        run_cli("run", "--config", corpus / "config.json")
        staged = corpus / "staged"
        assert (
            run_cli(
                "extract-targets",
                "--articles", corpus / "articles.jsonl",
                "--out", staged,
            )
            == 0
        )
        assert (
            run_cli(
                "build-network",
                "--articles", corpus / "articles.jsonl",
                "--targets", staged / "targets.jsonl",
                "--event-alias", "demonetization",
                "--lexicon", corpus / "lexicon.txt",
                "--out", staged,
            )
            == 0
        )
        assert (
            run_cli(
                "classify",
                "--messages", corpus / "messages.jsonl",
                "--network", staged / "network.json",
                "--lexicon", corpus / "lexicon.txt",
                "--out", staged / "stances.jsonl",
            )
            == 0
        )
        assert (staged / "stances.jsonl").read_bytes() == (
            corpus / "out" / "stances.jsonl"
        ).read_bytes()
        assert (staged / "targets.jsonl").read_bytes() == (
            corpus / "out" / "targets.jsonl"
        ).read_bytes()

    def test_build_network_from_assertions(self, corpus, capsys):
        run_cli("run", "--config", corpus / "config.json")
        staged = corpus / "from_assertions"
        code = run_cli(
            "build-network",
            "--assertions", corpus / "out" / "assertions.jsonl",
            "--targets", corpus / "out" / "targets.jsonl",
            "--event-alias", "demonetization",
            "--out", staged,
        )
        assert code == 0
        ours = json.loads((staged / "network.json").read_text())
        theirs = json.loads((corpus / "out" / "network.json").read_text())
        assert ours["edges"] == theirs["edges"]
        assert ours["resolved"] == theirs["resolved"]
        # input assertions are not rewritten
        assert not (staged / "assertions.jsonl").exists()

    def test_build_network_requires_alias(self, corpus, capsys):
        code = run_cli(
            "build-network",
            "--articles", corpus / "articles.jsonl",
            "--targets", corpus / "articles.jsonl",
            "--out", corpus / "x",
        )
        assert code == 1
        assert "--event-alias" in capsys.readouterr().err

    def test_build_network_requires_articles_or_assertions(self, corpus, capsys):
        run_cli(
            "extract-targets", "--articles", corpus / "articles.jsonl",
            "--out", corpus / "t",
        )
        code = run_cli(
            "build-network",
            "--targets", corpus / "t" / "targets.jsonl",
            "--event-alias", "demonetization",
            "--out", corpus / "x",
        )
        assert code == 1

    def test_classify_malformed_network(self, corpus, capsys):
        bad = corpus / "bad.json"
        bad.write_text('{"nodes": []}')
        code = run_cli(
            "classify",
            "--messages", corpus / "messages.jsonl",
            "--network", bad,
            "--out", corpus / "s.jsonl",
        )
        assert code == 1
        assert "malformed network record" in capsys.readouterr().err

    def test_extract_targets_stats_line(self, corpus, capsys):
        code = run_cli(
            "extract-targets", "--articles", corpus / "articles.jsonl",
            "--out", corpus / "t",
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "candidates=" in out and "threshold=" in out
        stats = json.loads((corpus / "t" / "target_stats.json").read_text())
        assert set(stats) == {
            "candidates",
            "selected",
            "max_importance",
            "mean_importance",
            "sd_importance",
            "threshold",
            "key_players",
        }


class TestEvaluate:
    def test_evaluate_prints_report(self, corpus, capsys):
        run_cli("run", "--config", corpus / "config.json")
        capsys.readouterr()
        code = run_cli(
            "evaluate",
            "--pred", corpus / "out" / "stances.jsonl",
            "--gold", corpus / "gold.jsonl",
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["accuracy"] == 1.0
        assert report["f1_average"] == 1.0

    def test_evaluate_missing_prediction(self, corpus, capsys):
        run_cli("run", "--config", corpus / "config.json")
        write_jsonl(
            corpus / "more_gold.jsonl",
            [{"id": "m1", "stance": "Positive"}, {"id": "zz", "stance": "Negative"}],
        )
        code = run_cli(
            "evaluate",
            "--pred", corpus / "out" / "stances.jsonl",
            "--gold", corpus / "more_gold.jsonl",
        )
        assert code == 1
        assert "zz" in capsys.readouterr().err

    def test_neutral_policy_flag(self, corpus, capsys):
        run_cli("run", "--config", corpus / "config.json")
        write_jsonl(corpus / "g.jsonl", [{"id": "m3", "stance": "Positive"}])
        capsys.readouterr()
        run_cli(
            "evaluate",
            "--pred", corpus / "out" / "stances.jsonl",
            "--gold", corpus / "g.jsonl",
            "--neutral-policy", "Exclude",
        )
        report = json.loads(capsys.readouterr().out)
        assert report["excluded"] == 1
        assert report["evaluated"] == 0


class TestTopLevel:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as err:
            run_cli("--version")
        assert err.value.code == 0

    def test_unknown_subcommand(self, capsys):
        assert run_cli("frobnicate") == 1
