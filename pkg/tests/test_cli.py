"""Command-line surface: formats, exit codes, determinism."""

import json
from pathlib import Path

from rrweights.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    main,
)

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyCommand:
    def test_single_identity_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--id", "miniprop", "--order", "40"
        )
        assert code == EXIT_OK
        assert "PASS miniprop order=60" in out
        assert out.endswith("1 passed, 0 failed\n")

    def test_param_binding(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--id", "twopartM", "--param", "7", "--order", "40"
        )
        assert code == EXIT_OK
        assert "twopartM[M=7]" in out

    def test_order_floor(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--id", "rr2", "--order", "20"
        )
        assert code == EXIT_USAGE
        assert "at least 30" in err

    def test_unknown_id_rejected_before_compute(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--id", "made_up")
        assert code == EXIT_USAGE
        assert "unknown identity id" in err

    def test_inadmissible_param(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--id", "twopartM", "--param", "3"
        )
        assert code == EXIT_USAGE

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--id", "weirdeq", "--format", "json"
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["failed"] == 0
        (result,) = doc["results"]
        assert result == {
            "id": "weirdeq", "params": {}, "order": 60, "status": "pass",
        }

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "--id", "firsttw")
        _, second, _ = run_cli(capsys, "verify", "--id", "firsttw")
        assert first == second

    def test_env_default_order(self, capsys, monkeypatch):
        monkeypatch.setenv("RRWEIGHTS_ORDER", "45")
        code, out, _ = run_cli(capsys, "verify", "--id", "weirdeq")
        assert code == EXIT_OK
        assert "order=60" in out  # raised to the entry minimum
        monkeypatch.setenv("RRWEIGHTS_ORDER", "65")
        code, out, _ = run_cli(capsys, "verify", "--id", "weirdeq")
        assert "order=65" in out

    def test_bad_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("RRWEIGHTS_ORDER", "lots")
        code, _, err = run_cli(capsys, "verify", "--id", "weirdeq")
        assert code == EXIT_USAGE


class TestEnumerateCommand:
    def test_empty_partition_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--class", "diff2_star", "--n", "0"
        )
        assert code == EXIT_OK
        assert out == "()\n"

    def test_text_listing(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--class", "mod5_23", "--n", "7"
        )
        assert code == EXIT_OK
        assert out.splitlines() == ["(7)", "(3,2^2)"]

    def test_custom_congruence_rule(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--modulus", "5", "--residues", "2,3",
            "--forbid", "3", "--allow", "5", "--n", "5",
        )
        assert code == EXIT_OK
        assert out == "(5)\n"

    def test_csv_and_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--class", "diff2", "--n", "5",
            "--format", "csv",
        )
        assert code == EXIT_OK
        assert out.splitlines()[0] == '"partition"'
        code, out, _ = run_cli(
            capsys, "enumerate", "--class", "diff2", "--n", "5",
            "--format", "json",
        )
        doc = json.loads(out)
        assert doc["count"] == 2
        assert doc["partitions"] == ["5", "4,1"]

    def test_unknown_class(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "--class", "zzz", "--n", "3")
        assert code == EXIT_USAGE


class TestTableCommand:
    def test_bigcomb_csv_matches_golden(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--id", "bigcomb", "--n", "19", "--format", "csv"
        )
        assert code == EXIT_OK
        want = (GOLDEN / "table_bigcomb_n19.csv").read_text(encoding="utf-8")
        assert out == want

    def test_restricted_table_matches_golden(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--id", "generalminithm", "--param", "2",
            "--restrict", "2", "--n", "22", "--format", "csv",
        )
        assert code == EXIT_OK
        want = (GOLDEN / "table_generalminithm_M3_k2_n22.csv").read_text(
            encoding="utf-8"
        )
        assert out == want

    def test_text_table_has_header_and_rows(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--id", "bigcomb", "--n", "19")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].split(" | ")[0].strip() == "mu"
        assert len(lines) == 27

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--id", "firstbigcomb", "--n", "22",
            "--format", "json",
        )
        doc = json.loads(out)
        assert len(doc["rows"]) == 26
        assert doc["rows"][-1] == {
            "mu": "2^11", "lambda": "22", "col": "1^20",
            "signature": [11, 0, 0],
        }

    def test_unknown_statement(self, capsys):
        code, _, err = run_cli(capsys, "table", "--id", "nope", "--n", "5")
        assert code == EXIT_USAGE


class TestRefineCheckCommand:
    def test_single_statement(self, capsys):
        code, out, _ = run_cli(
            capsys, "refine-check", "--id", "spec3", "--n-max", "24"
        )
        assert code == EXIT_OK
        assert "PASS spec3" in out

    def test_param_bound_statement(self, capsys):
        code, out, _ = run_cli(
            capsys, "refine-check", "--id", "general2partcor", "--param", "7",
            "--n-max", "20",
        )
        assert code == EXIT_OK
        assert "general2partcor[M=7]" in out

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "refine-check", "--id", "spec1", "--n-max", "18",
            "--format", "json",
        )
        doc = json.loads(out)
        assert doc["failed"] == 0


class TestDiscoverCommand:
    def test_solves_problem_file(self, capsys, tmp_path):
        doc = {
            "target": {"catalog_id": "miniprop"},
            "fixed": {
                "catalog_id": "miniprop",
                "term_indices": [0],
                "include_tail": True,
            },
            "templates": [
                {
                    "q_shift": 2,
                    "denominator": [["t", 2]],
                    "max_degree": 1,
                    "monomials": ["1", "t"],
                }
            ],
            "match_order": 20,
        }
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run_cli(capsys, "discover", "--problem", str(path))
        assert code == EXIT_OK
        assert "numerator[0] = t + q" in out
        assert "soundness check: pass" in out

    def test_inconsistent_problem_exits_nonzero(self, capsys, tmp_path):
        doc = {
            "target": {"catalog_id": "rr2"},
            "fixed": {"catalog_id": "rr1", "include_tail": True},
            "templates": [],
            "match_order": 20,
        }
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run_cli(capsys, "discover", "--problem", str(path))
        assert code == EXIT_CHECK_FAILED
        assert "inconsistent" in out

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "discover", "--problem", "/no/such.json")
        assert code == EXIT_USAGE


class TestOutputFile:
    def test_output_flag_writes_file(self, capsys, tmp_path):
        path = tmp_path / "out.txt"
        code, out, _ = run_cli(
            capsys, "verify", "--id", "rr2", "--output", str(path)
        )
        assert code == EXIT_OK
        assert out == ""
        assert "PASS rr2" in path.read_text(encoding="utf-8")
