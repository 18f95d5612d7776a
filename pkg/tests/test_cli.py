"""CLI behavior: subcommands, exit codes, formats, determinism."""

import json
import subprocess
import sys

import pytest

from kgbertscore.cli import build_parser, config_from_args, main

from conftest import build_corpus, build_embedding_pairs, write_corpus_file, write_embedding_file


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestScore:
    def test_table_output(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        code, out, err = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 0
        assert out.startswith("system_id")
        assert "sysA" in out and "sysB" in out

    def test_json_output_structure(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        code, out, _ = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "json", "--alpha", "0.3"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert {r["system_id"] for r in doc["systems"]} == {"sysA", "sysB"}
        assert all(r["alpha"] == 0.3 for r in doc["systems"])

    def test_csv_written_to_output_file(self, corpus_with_embeddings, tmp_path, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        out_path = tmp_path / "report.csv"
        code, out, _ = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "csv", "-o", str(out_path)],
            capsys,
        )
        assert code == 0
        assert out == ""
        text = out_path.read_text(encoding="utf-8")
        assert text.startswith("system_id,lang_pair,alpha,n,")

    def test_per_sentence_json_inline(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        code, out, _ = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "json", "--per-sentence"],
            capsys,
        )
        doc = json.loads(out)
        assert len(doc["sentences"]) == corpus.n
        assert doc["sentences"][0]["pair_id"] == "p0000"

    def test_per_sentence_csv_writes_sibling_file(self, corpus_with_embeddings, tmp_path, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        out_path = tmp_path / "report.csv"
        code, _, _ = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "csv", "--per-sentence", "-o", str(out_path)],
            capsys,
        )
        assert code == 0
        sibling = tmp_path / "report.sentences.csv"
        lines = sibling.read_text(encoding="utf-8").strip().split("\n")
        assert len(lines) == 1 + corpus.n

    def test_per_sentence_csv_to_stdout_is_data_error(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        code, _, err = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "csv", "--per-sentence"],
            capsys,
        )
        assert code == 1
        assert "--output" in err


class TestExitCodes:
    def test_missing_corpus_file_is_exit_1(self, tmp_path, capsys):
        emb_path = tmp_path / "e.kgbe"
        write_embedding_file(build_embedding_pairs(2), emb_path)
        code, _, err = run_cli(
            ["score", "--corpus", str(tmp_path / "nope.jsonl"),
             "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 1
        assert "error:" in err

    def test_malformed_corpus_is_exit_1_with_locator(self, tmp_path, capsys):
        corpus_path = tmp_path / "bad.jsonl"
        corpus_path.write_text('{"pair_id": "p1"}\n', encoding="utf-8")
        emb_path = tmp_path / "e.kgbe"
        write_embedding_file(build_embedding_pairs(1), emb_path)
        code, _, err = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 1
        assert "line 1" in err and "bad.jsonl" in err

    def test_truncated_embeddings_is_exit_1_with_offset(self, tmp_path, capsys):
        from kgbertscore import write_embeddings

        corpus_path = tmp_path / "c.jsonl"
        write_corpus_file(build_corpus(2), corpus_path)
        emb_path = tmp_path / "e.kgbe"
        emb_path.write_bytes(write_embeddings(build_embedding_pairs(2))[:-7])
        code, _, err = run_cli(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 1
        assert "byte offset" in err

    def test_alpha_out_of_range_is_exit_2(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        with pytest.raises(SystemExit) as exc_info:
            main(["score", "--corpus", str(corpus_path),
                  "--embeddings", str(emb_path), "--alpha", "1.5"])
        assert exc_info.value.code == 2

    def test_unknown_subcommand_is_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["frobnicate"])
        assert exc_info.value.code == 2

    def test_bad_threads_value_is_exit_2(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        with pytest.raises(SystemExit) as exc_info:
            main(["score", "--corpus", str(corpus_path),
                  "--embeddings", str(emb_path), "--threads", "0"])
        assert exc_info.value.code == 2


class TestSweep:
    def test_default_grid_csv(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        code, out, _ = run_cli(
            ["sweep", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.strip().split("\n")
        n_systems = len(corpus.system_keys())
        assert len(lines) == 1 + 7 * n_systems
        alphas = {line.split(",")[2] for line in lines[1:]}
        assert alphas == {"0.0", "0.2", "0.4", "0.5", "0.6", "0.8", "1.0"}

    def test_custom_alpha_list(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        code, out, _ = run_cli(
            ["sweep", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--alphas", "0.1,0.9", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["alphas"] == [0.1, 0.9]

    def test_bad_alpha_in_list_is_exit_2(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        with pytest.raises(SystemExit) as exc_info:
            main(["sweep", "--corpus", str(corpus_path),
                  "--embeddings", str(emb_path), "--alphas", "0.1,2.0"])
        assert exc_info.value.code == 2


class TestCorrelate:
    def test_end_to_end(self, corpus_with_embeddings, human_scores_file, capsys):
        corpus_path, emb_path, _ = corpus_with_embeddings
        code, out, _ = run_cli(
            ["correlate", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--human-scores", str(human_scores_file), "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "lang_pair,metric,n_systems,pearson_r"
        assert lines[1].startswith("en-zh,f_kg_bert,2,")
        assert lines[2].startswith("mean,")

    def test_missing_human_scores_for_requested_pair_is_exit_1(
        self, corpus_with_embeddings, human_scores_file, capsys
    ):
        corpus_path, emb_path, _ = corpus_with_embeddings
        code, _, err = run_cli(
            ["correlate", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--human-scores", str(human_scores_file), "--lang-pairs", "fr-en"],
            capsys,
        )
        assert code == 1
        assert "fr-en" in err


class TestValidate:
    def test_summary_contents(self, corpus_with_embeddings, capsys):
        corpus_path, emb_path, corpus = corpus_with_embeddings
        code, out, _ = run_cli(
            ["validate", "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 0
        assert f"pairs: {corpus.n}" in out
        assert "dim: 8" in out
        assert "sysA" in out and "en-zh" in out
        assert "alignment: OK" in out
        assert out.rstrip().endswith("valid")

    def test_corpus_only(self, corpus_with_embeddings, capsys):
        corpus_path, _, _ = corpus_with_embeddings
        code, out, _ = run_cli(["validate", "--corpus", str(corpus_path)], capsys)
        assert code == 0
        assert "embeddings" not in out

    def test_pair_count_mismatch_is_exit_1(self, tmp_path, capsys):
        corpus_path = tmp_path / "c.jsonl"
        write_corpus_file(build_corpus(3), corpus_path)
        emb_path = tmp_path / "e.kgbe"
        write_embedding_file(build_embedding_pairs(2), emb_path)
        code, _, err = run_cli(
            ["validate", "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capsys,
        )
        assert code == 1
        assert "2 pairs but corpus has 3" in err


class TestRunConfig:
    def test_threads_flag_beats_env(self, corpus_with_embeddings, monkeypatch):
        corpus_path, emb_path, _ = corpus_with_embeddings
        monkeypatch.setenv("KGB_THREADS", "4")
        args = build_parser().parse_args(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--threads", "2"]
        )
        assert config_from_args(args).threads == 2

    def test_env_beats_auto(self, corpus_with_embeddings, monkeypatch):
        corpus_path, emb_path, _ = corpus_with_embeddings
        monkeypatch.setenv("KGB_THREADS", "3")
        args = build_parser().parse_args(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path)]
        )
        assert config_from_args(args).threads == 3

    def test_invalid_env_falls_back_with_warning(self, corpus_with_embeddings, monkeypatch):
        corpus_path, emb_path, _ = corpus_with_embeddings
        monkeypatch.setenv("KGB_THREADS", "bananas")
        args = build_parser().parse_args(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path)]
        )
        assert config_from_args(args).threads >= 1

    def test_threads_auto_accepted(self, corpus_with_embeddings):
        corpus_path, emb_path, _ = corpus_with_embeddings
        args = build_parser().parse_args(
            ["score", "--corpus", str(corpus_path), "--embeddings", str(emb_path),
             "--threads", "auto"]
        )
        assert config_from_args(args).threads >= 1


class TestConsoleScript:
    def test_installed_entry_point_runs(self, corpus_with_embeddings):
        corpus_path, emb_path, _ = corpus_with_embeddings
        proc = subprocess.run(
            [sys.executable, "-m", "kgbertscore.cli", "validate",
             "--corpus", str(corpus_path), "--embeddings", str(emb_path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert "valid" in proc.stdout
