"""Tests for the command-line interface: outputs, formats, and exit codes."""

import csv
import io
import json

import pytest

from tautint.cli import CSV_COLUMNS, OutputRecord, main
from tautint.strata import delta_graph, format_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPsiCommand:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (("psi", "--genus", "1", "--k", "1"), "1/24"),
            (("psi", "--genus", "0", "--k", "0,0,0"), "1"),
            (("psi", "--genus", "1", "--k", "2,0"), "1/24"),
            (("psi", "--genus", "0", "--k", "1,1,0,0"), "0"),
        ],
    )
    def test_values(self, capsys, argv, expected):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert out == expected + "\n"

    def test_json_record_round_trips(self, capsys):
        code, out, _ = run(capsys, "psi", "--genus", "1", "--k", "1", "--json")
        assert code == 0
        record = OutputRecord.from_json(out)
        assert record == OutputRecord(
            command="psi",
            inputs={"genus": 1, "k": [1]},
            results=[{"method": "string-dilaton", "value": "1/24"}],
        )
        assert OutputRecord.from_json(record.to_json()) == record

    def test_unstable_space_is_domain_error(self, capsys):
        code, out, err = run(capsys, "psi", "--genus", "0", "--k", "0,0")
        assert code == 1
        assert out == ""
        assert "unstable" in err

    def test_malformed_exponents_usage_error(self, capsys):
        code, _, _ = run(capsys, "psi", "--genus", "1", "--k", "one")
        assert code == 2

    def test_genus_out_of_range_usage_error(self, capsys):
        code, _, _ = run(capsys, "psi", "--genus", "2", "--k", "4")
        assert code == 2


class TestPullbackCommand:
    @pytest.mark.parametrize(
        "graph, k, expected",
        [
            ("delta", "2", "1/24"),
            ("delta0", "2", "1"),
            ("gamma-psi", "2", "1/12"),
            ("delta", "2,1", "1/8"),
        ],
    )
    def test_builtin_graphs(self, capsys, graph, k, expected):
        code, out, _ = run(capsys, "pullback", "--graph", graph, "--k", k)
        assert code == 0
        assert out == expected + "\n"

    def test_graph_from_file(self, capsys, tmp_path):
        path = tmp_path / "delta.graph"
        path.write_text(format_graph(delta_graph()), encoding="utf-8")
        code, out, _ = run(capsys, "pullback", "--graph", f"file:{path}", "--k", "2")
        assert code == 0
        assert out == "1/24\n"

    def test_invalid_graph_file_prints_report(self, capsys, tmp_path):
        path = tmp_path / "broken.graph"
        path.write_text("v0 genus=0\nleg a v0\nleg b v0\n", encoding="utf-8")
        code, out, err = run(capsys, "pullback", "--graph", f"file:{path}", "--k", "2")
        assert code == 1
        assert out == ""
        assert "unstable-vertex" in err

    def test_unparseable_graph_file(self, capsys, tmp_path):
        path = tmp_path / "garbage.graph"
        path.write_text("wibble\n", encoding="utf-8")
        code, _, err = run(capsys, "pullback", "--graph", f"file:{path}", "--k", "2")
        assert code == 1
        assert "line 1" in err

    def test_missing_graph_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "pullback", "--graph", f"file:{tmp_path}/nope", "--k", "2")
        assert code == 1
        assert "cannot load graph" in err

    def test_unknown_graph_name_usage_error(self, capsys):
        code, _, err = run(capsys, "pullback", "--graph", "banana", "--k", "2")
        assert code == 2
        assert "unknown graph" in err


class TestLambda2Command:
    def test_default_method(self, capsys):
        code, out, _ = run(capsys, "lambda2", "--k", "2")
        assert code == 0
        assert out == "7/5760\n"

    @pytest.mark.parametrize("method", ["closed", "eq5", "eq3"])
    def test_methods_agree(self, capsys, method):
        code, out, _ = run(capsys, "lambda2", "--k", "2,1", "--method", method)
        assert code == 0
        assert out == "7/1920\n"

    def test_bad_partition_is_domain_error(self, capsys):
        code, _, err = run(capsys, "lambda2", "--k", "2,2")
        assert code == 1
        assert "sum to" in err


class TestVerifyCommand:
    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "2", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == list(CSV_COLUMNS)
        assert len(rows) == 4
        assert rows[1] == ["1", "2", "1/24", "1/24", "1/24",
                           "7/5760", "7/5760", "7/5760", "7/5760", "true"]
        assert [row[1] for row in rows[1:]] == ["2", "3+0", "2+1"]
        assert all(row[-1] == "true" for row in rows[1:])

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "1")
        assert code == 0
        assert "AGREE" in out
        assert out.endswith("1 partitions checked, all routes agree\n")

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "2", "--format", "json")
        assert code == 0
        records = json.loads(out)
        assert len(records) == 3
        first = OutputRecord.from_dict(records[0])
        assert first.command == "verify"
        assert first.inputs == {"n": 1, "partition": [2]}
        assert first.agree is True
        assert {entry["method"] for entry in first.results} == set(CSV_COLUMNS[2:-1])

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "verify", "--n-max", "3", "--format", "csv")
        _, second, _ = run(capsys, "verify", "--n-max", "3", "--format", "csv")
        assert first == second

    def test_n_max_zero_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "--n-max", "0")
        assert code == 2

    def test_large_n_max_needs_hard_flag(self, capsys):
        code, out, err = run(capsys, "verify", "--n-max", "13", "--format", "csv")
        assert code == 2
        assert out == ""
        assert "--hard" in err


class TestParser:
    def test_no_command_usage_error(self, capsys):
        assert run(capsys, *[])[0] == 2

    def test_unknown_command_usage_error(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2


class TestOutputRecord:
    def test_agree_field_round_trips(self):
        record = OutputRecord(
            command="verify",
            inputs={"n": 1, "partition": [2]},
            results=[{"method": "delta_closed", "value": "1/24"}],
            agree=True,
        )
        assert OutputRecord.from_json(record.to_json()) == record
        assert "agree" in record.to_dict()

    def test_agree_omitted_when_unset(self):
        record = OutputRecord(command="psi", inputs={}, results=[])
        assert "agree" not in record.to_dict()
