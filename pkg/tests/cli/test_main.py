"""Test script for argument parsing, output formats and exit codes

Usage:
    # Method 1: Run directly (from project root)
    python tests/cli/test_main.py

    # Method 2: Run with pytest
    pytest tests/cli/test_main.py

    # Method 3: Run a specific test with pytest
    pytest tests/cli/test_main.py::test_exit_codes -v
"""

import importlib
import json
import sys
from pathlib import Path

import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

import factored_info.cli.verify as verify_module
from factored_info.cli.io import write_json
from factored_info.cli.main import build_parser, main
from factored_info.cli.scenarios import ScenarioCatalog

main_module = importlib.import_module("factored_info.cli.main")


# Test configuration
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


def test_parser_options():
    args = build_parser().parse_args(
        ["atlas", "--N", "2", "--n", "2", "--pairing", "2,1", "--margins", "00,11;01,10", "--base", "2"]
    )
    assert args.pairing == [2, 1]
    assert args.margins == [["00", "11"], ["01", "10"]]
    assert args.base == "2" and args.format == "json"
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--all", "--scenario", "codes-counting"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["measure", "p.json", "--measure", "H"])


def test_json_output(capsys):
    assert main(["codes", "--N", "2", "--n", "3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 4


def test_table_output(capsys):
    assert main(["codes", "--N", "3", "--n", "2", "--format", "table"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("6 codes for N=3, n=2")
    assert "words" in out


def test_verify_single_scenario(capsys):
    assert main(["verify", "--scenario", "codes-counting"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"]
    assert "uncoveredOperations" not in payload


def test_exit_codes(tmp_path, capsys):
    assert main(["measure", str(tmp_path / "missing.json"), "--measure", "I"]) == EXIT_INPUT_ERROR

    write_json({"cardinalities": [2], "entries": [{"state": [0, 1], "prob": "1"}]}, tmp_path / "bad.json")
    assert main(["measure", str(tmp_path / "bad.json"), "--measure", "I"]) == EXIT_INPUT_ERROR
    assert "entries" in capsys.readouterr().err

    write_json({"cardinalities": [2], "entries": [{"state": [0], "prob": "1/3"}]}, tmp_path / "short.json")
    assert main(["measure", str(tmp_path / "short.json"), "--measure", "I"]) == EXIT_INPUT_ERROR

    assert main(["codes", "--N", "5", "--n", "5"]) == EXIT_CAP_EXCEEDED
    assert "code_cap" in capsys.readouterr().err

    assert main(["optimize", "--measure", "FMI", "--N", "2", "--n", "3", "--restarts", "0"]) == EXIT_INPUT_ERROR
    assert main(["verify", "--scenario", "no-such-scenario"]) == EXIT_INPUT_ERROR


def test_verification_failure(monkeypatch, capsys):
    catalog = ScenarioCatalog.model_validate({
        "schema_version": 1,
        "scenarios": [{"name": "broken", "kind": "no_such_kind"}],
    })
    monkeypatch.setattr(verify_module, "load_catalog", lambda: catalog)
    assert main(["verify", "--scenario", "broken"]) == EXIT_VERIFICATION_FAILED
    payload = json.loads(capsys.readouterr().out)
    assert not payload["passed"]
    assert "no_such_kind" in payload["scenarios"][0]["error"]


def test_unexpected_error_is_reported(monkeypatch, capsys):
    def failing(args):
        raise ZeroDivisionError("division by zero")

    monkeypatch.setattr(main_module, "dispatch", failing)
    assert main(["codes", "--N", "2", "--n", "2"]) == EXIT_VERIFICATION_FAILED
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error: ZeroDivisionError: division by zero" in captured.err


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
