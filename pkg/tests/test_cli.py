import contextlib
import io
import json
from pathlib import Path

import pytest

from qverify import load_algorithm
from qverify.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

# (golden file, argv, expected exit code)
GOLDEN_CASES = [
    ("run_n4_1100_trace.json", ["run", "--n", "4", "--input", "1100", "--trace", "--json"], 0),
    ("verify_n4.json", ["verify", "--n", "4", "--json"], 0),
    ("sensitivity_n6.json", ["sensitivity", "--n", "6", "--json"], 0),
    ("classical_n4_0100.json", ["classical", "--n", "4", "--input", "0100", "--json"], 0),
    ("equal_10_01.json", ["equal", "--y", "10", "--z", "01", "--json"], 1),
    ("build_n2.json", ["build", "--n", "2"], 0),
]


def cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(argv)
    return code, out.getvalue()


class TestGolden:
    @pytest.mark.parametrize("name,argv,expected_code", GOLDEN_CASES,
                             ids=[c[0] for c in GOLDEN_CASES])
    def test_output_matches_golden_file(self, name, argv, expected_code):
        code, out = cli(argv)
        assert code == expected_code
        assert out == (GOLDEN_DIR / name).read_text(encoding="utf-8")

    @pytest.mark.parametrize("name,argv,expected_code", GOLDEN_CASES,
                             ids=[c[0] for c in GOLDEN_CASES])
    def test_output_is_stable_across_runs(self, name, argv, expected_code):
        assert cli(argv) == cli(argv)


class TestRun:
    def test_text_output(self, capsys):
        assert main(["run", "--n", "4", "--input", "0011"]) == 0
        out = capsys.readouterr().out
        assert "output: 1" in out
        assert "exact: yes" in out

    def test_trace_lists_every_step(self, capsys):
        main(["run", "--n", "4", "--input", "0000", "--trace"])
        out = capsys.readouterr().out
        for step in ("start", "after U1", "after Q1", "after U2", "after Q2", "final"):
            assert step in out

    def test_json_payload(self):
        code, out = cli(["run", "--n", "4", "--input", "1010", "--json"])
        payload = json.loads(out)
        assert code == 0
        assert payload["output"] == 0
        assert payload["exact"] is True
        assert payload["final_state"] == pytest.approx([0, 0, 0, 1], abs=1e-9)

    def test_rejects_bad_word(self, capsys):
        assert main(["run", "--n", "4", "--input", "10x1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_rejects_wrong_length(self):
        assert main(["run", "--n", "4", "--input", "101"]) == 2


class TestVerify:
    def test_passes_for_built_algorithm(self, capsys):
        assert main(["verify", "--n", "6"]) == 0
        out = capsys.readouterr().out
        assert "inputs tested: 64" in out
        assert "result: exact" in out

    def test_parallel_output_is_identical(self):
        assert cli(["verify", "--n", "8", "--json"]) == \
            cli(["verify", "--n", "8", "--parallel", "--json"])

    def test_rejects_odd_n(self):
        assert main(["verify", "--n", "5"]) == 2


class TestBuild:
    def test_document_round_trips_through_file(self, tmp_path):
        path = tmp_path / "alg.json"
        assert main(["build", "--n", "6", "--out", str(path)]) == 0
        alg = load_algorithm(path)
        assert (alg.n_vars, alg.t_queries, alg.dim) == (6, 3, 8)

    def test_build_load_build_is_byte_stable(self, tmp_path):
        first = tmp_path / "a.json"
        main(["build", "--n", "4", "--out", str(first)])
        code, stdout_doc = cli(["build", "--n", "4"])
        assert code == 0
        assert stdout_doc == first.read_text(encoding="utf-8")

    def test_text_format(self, capsys):
        assert main(["build", "--n", "2", "--format", "text"]) == 0
        out = capsys.readouterr().out
        assert "U1 =" in out and "Q1 = diag((-1)^x1, (-1)^x2)" in out

    def test_rejects_bad_n(self, capsys):
        assert main(["build", "--n", "7"]) == 2
        assert "error" in capsys.readouterr().err


class TestEqual:
    def test_equal_strings_exit_zero(self, capsys):
        assert main(["equal", "--y", "101", "--z", "101"]) == 0
        assert capsys.readouterr().out.strip() == "equal"

    def test_unequal_strings_exit_one(self, capsys):
        assert main(["equal", "--y", "0", "--z", "1"]) == 1
        assert capsys.readouterr().out.strip() == "not equal"

    def test_length_mismatch_is_usage_error(self):
        assert main(["equal", "--y", "10", "--z", "100"]) == 2


class TestClassical:
    def test_worst_case_word(self):
        code, out = cli(["classical", "--n", "4", "--input", "1111", "--json"])
        payload = json.loads(out)
        assert code == 0
        assert payload["output"] == 1
        assert payload["queries_used"] == 4
        assert payload["query_sequence"] == [1, 2, 3, 4]


class TestCheck:
    def test_stored_algorithm_passes(self, tmp_path, capsys):
        path = tmp_path / "alg.json"
        main(["build", "--n", "4", "--out", str(path)])
        assert main(["check", "--algorithm", str(path)]) == 0
        out = capsys.readouterr().out
        assert "matrices unitary: yes" in out
        assert "result: exact" in out

    def test_tampered_document_fails_with_counterexample(self, tmp_path):
        path = tmp_path / "alg.json"
        main(["build", "--n", "4", "--out", str(path)])
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc["stages"][0]["unitary"][0][0] *= -1.0
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out = cli(["check", "--algorithm", str(path), "--json"])
        payload = json.loads(out)
        assert code == 1
        assert payload["exact"] is False
        assert payload["unitary"] is False
        assert payload["counterexample"] == "0000"

    def test_against_truth_table_document(self, tmp_path):
        alg_path = tmp_path / "alg.json"
        main(["build", "--n", "2", "--out", str(alg_path)])
        fn_path = tmp_path / "fn.json"
        fn_path.write_text(json.dumps({"schema_version": 1, "arity": 2,
                                       "table": [1, 0, 0, 1]}), encoding="utf-8")
        assert main(["check", "--algorithm", str(alg_path),
                     "--function", str(fn_path)]) == 0

    def test_missing_file_is_usage_error(self, capsys):
        assert main(["check", "--algorithm", "/nonexistent.json"]) == 2
        assert "error" in capsys.readouterr().err


class TestUsage:
    def test_no_arguments(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


def regenerate_golden_files() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv, expected_code in GOLDEN_CASES:
        code, out = cli(argv)
        assert code == expected_code, (name, code)
        (GOLDEN_DIR / name).write_text(out, encoding="utf-8")
        print(f"wrote {name} ({len(out)} bytes)")


if __name__ == "__main__":
    regenerate_golden_files()
