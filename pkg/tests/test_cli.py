import json

from alphatag.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeq:
    def test_json_document(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "--alpha", "2", "--count", "9")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "sequence"
        assert doc["payload"]["terms"] == ["0", "1", "2", "3", "5", "8", "13", "21", "34"]
        assert doc["meta"]["alpha"] == "2/1"

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "--alpha", "7/2", "--count", "10", "--format", "text")
        assert code == 0
        assert out.strip() == "0,1,2,3,4,6,8,11,15,21"

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "--alpha", "2", "--count", "4", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index,term"
        assert lines[-1] == "3,3"

    def test_max_value_horizon(self, capsys):
        code, out, _ = run_cli(
            capsys, "seq", "--alpha", "2", "--max-value", "300", "--format", "text"
        )
        assert code == 0
        assert out.strip().endswith(",233")

    def test_alpha_below_one_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "seq", "--alpha", "0.5", "--count", "5")
        assert code == 1
        assert "alpha must be >= 1" in err

    def test_decimal_alpha_parsed_exactly(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "--alpha", "3.5", "--count", "10", "--format", "text")
        assert code == 0
        assert out.strip() == "0,1,2,3,4,6,8,11,15,21"

    def test_output_is_byte_stable(self, capsys):
        _, first, _ = run_cli(capsys, "seq", "--alpha", "11/3", "--count", "12")
        _, second, _ = run_cli(capsys, "seq", "--alpha", "11/3", "--count", "12")
        assert first == second


class TestRoundTrip:
    def test_document_reproduces_from_parsed_payload(self, capsys):
        _, out, _ = run_cli(capsys, "seq", "--alpha", "9/2", "--count", "11")
        doc = json.loads(out)
        alpha = doc["meta"]["alpha"]
        count = doc["meta"]["horizon"]["count"]
        _, again, _ = run_cli(capsys, "seq", "--alpha", alpha, "--count", str(count))
        assert json.loads(again) == doc


class TestSmallCommands:
    def test_window(self, capsys):
        code, out, _ = run_cli(capsys, "window", "--alpha", "3", "--index", "5")
        doc = json.loads(out)
        assert code == 0
        assert doc["payload"]["owner_term"] == "6"
        assert doc["payload"]["member_terms"] == ["15"]

    def test_zeck(self, capsys):
        code, out, _ = run_cli(capsys, "zeck", "--alpha", "2", "--n", "10")
        doc = json.loads(out)
        assert code == 0
        assert doc["payload"]["parts"] == ["2", "8"]

    def test_classify_with_advice(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--alpha", "2", "--pile", "13")
        doc = json.loads(out)
        assert code == 0
        assert doc["payload"]["outcome"] == "P"
        assert doc["payload"]["advice"]["winning"] is False

    def test_classify_beyond_limit_guides(self, capsys):
        code, _, err = run_cli(capsys, "classify", "--alpha", "2", "--pile", "5000")
        assert code == 1
        assert "sequence generator" in err

    def test_s_seq(self, capsys):
        code, out, _ = run_cli(capsys, "s-seq", "--alpha", "7/2", "--count", "13")
        doc = json.loads(out)
        assert code == 0
        assert doc["payload"]["values"] == [3, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5]

    def test_diag(self, capsys):
        code, out, _ = run_cli(capsys, "diag", "--alpha", "9/2", "--count", "40")
        doc = json.loads(out)
        assert code == 0
        assert doc["payload"]["degree"] == 7
        assert doc["payload"]["min_q"] == "14/3"

    def test_usage_error_on_unknown_command(self, capsys):
        assert run_cli(capsys, "frobnicate")[0] == 1


class TestCutoffsAndGamma:
    def test_cutoffs_with_cache_resume_is_byte_identical(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        out_path = tmp_path / "cutoffs.json"
        code, _, _ = run_cli(
            capsys,
            "cutoffs", "--to", "4.5", "--cache", str(cache), "--out", str(out_path),
        )
        assert code == 0
        first = out_path.read_bytes()
        assert cache.exists()
        code, _, _ = run_cli(
            capsys,
            "cutoffs", "--to", "4.5", "--cache", str(cache), "--out", str(out_path),
        )
        assert code == 0
        assert out_path.read_bytes() == first
        doc = json.loads(first)
        assert doc["payload"]["cutoffs"][-1] == "9/2"
        assert doc["payload"]["gamma"] == 11

    def test_cache_env_var_controls_location(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TAG_CACHE_DIR", str(tmp_path / "envcache"))
        code, _, _ = run_cli(capsys, "cutoffs", "--to", "3")
        assert code == 0
        assert (tmp_path / "envcache" / "cutoffs.json").exists()

    def test_gamma_rows(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        code, out, _ = run_cli(capsys, "gamma", "--upto", "6", "--cache", str(cache))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,gamma,gamma_over_n_squared"
        counts = [line.split(",")[1] for line in lines[1:]]
        assert counts == ["3", "4", "5", "8", "11", "14", "18", "21"]
        ratios = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(r > 0 for r in ratios)

    def test_gamma_json_document(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        code, out, _ = run_cli(
            capsys, "gamma", "--upto", "4", "--format", "json", "--cache", str(cache)
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "gamma"
        rows = doc["payload"]["rows"]
        assert [r["n"] for r in rows] == ["5/2", "3/1", "7/2", "4/1"]
        assert [r["gamma"] for r in rows] == [3, 4, 5, 8]

    def test_verify_passes_at_desk_scale(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        code, out, _ = run_cli(
            capsys, "verify", "--half-limit", "9/2", "--cache", str(cache)
        )
        assert code == 0
        assert "integers 2..10 are cutoffs: ok" in out
        assert "FAIL" not in out

    def test_verify_failure_exits_two(self, capsys, monkeypatch):
        from alphatag.cutoffs import IntegerCutoffReport

        monkeypatch.setattr(
            "alphatag.cli.verify_integer_cutoffs",
            lambda max_n, cache=None: IntegerCutoffReport(max_n, (), (2,)),
        )
        code, out, _ = run_cli(capsys, "verify", "--half-limit", "5/2", "--no-cache")
        assert code == 2
        assert "FAIL" in out

    def test_computation_error_exits_two(self, capsys, monkeypatch):
        from alphatag.cutoffs import CutoffComputationError

        def boom(*args, **kwargs):
            raise CutoffComputationError("synthetic failure")

        monkeypatch.setattr("alphatag.cli.enumerate_cutoffs", boom)
        code, _, err = run_cli(capsys, "cutoffs", "--to", "3", "--no-cache")
        assert code == 2
        assert "verification failure" in err


class TestPlay:
    def test_scripted_session(self, capsys, monkeypatch):
        feeds = iter(["3", "2", "1"])
        monkeypatch.setattr("builtins.input", lambda prompt="": next(feeds))
        code = main(["play", "--alpha", "2", "--pile", "10"])
        out = capsys.readouterr().out
        assert code == 0
        assert "engine took the last stone: engine wins" in out

    def test_illegal_input_reprompts(self, capsys, monkeypatch):
        feeds = iter(["99", "x", "2"])
        monkeypatch.setattr("builtins.input", lambda prompt="": next(feeds))
        code = main(["play", "--alpha", "2", "--pile", "3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "illegal: legal range is 1..2" in out
        assert "enter a number" in out

    def test_losing_warning(self, capsys, monkeypatch):
        feeds = iter(["q"])
        monkeypatch.setattr("builtins.input", lambda prompt="": next(feeds))
        code = main(["play", "--alpha", "2", "--pile", "13"])
        out = capsys.readouterr().out
        assert code == 0
        assert "losing position" in out
