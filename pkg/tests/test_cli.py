import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from pretzel_pcsc import cli


def run_cli(argv):
    return cli.main(argv)


def run_cli_capture(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.fixture(scope="module")
def schema():
    text = resources.files("pretzel_pcsc").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


class TestInvariants:
    def test_minus237(self, capsys, schema):
        code, doc = run_cli_capture(["invariants", "(-2,3,7)"], capsys)
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        assert doc["results"]["genus"]["value"] == 5
        assert doc["results"]["crossing_bound"] == 12

    def test_trefoil_document(self, capsys, schema):
        code, doc = run_cli_capture(["invariants", "(1,1,1)"], capsys)
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        res = doc["results"]
        assert res["jones_closed_form"] == [[-8, -1], [-6, 1], [-2, 1]]
        assert res["jones_methods_agree"] is True
        assert res["a2_jones"] == 1

    def test_zero_parameter_message(self, capsys):
        code = run_cli(["invariants", "(0,3,5)"])
        err = capsys.readouterr().err
        assert code == cli.EXIT_PARSE
        assert "connected sum" in err

    def test_parse_error(self, capsys):
        assert run_cli(["invariants", "(nope)"]) == cli.EXIT_PARSE

    def test_link_invariants(self, capsys, schema):
        code, doc = run_cli_capture(["invariants", "(3,3)"], capsys)
        assert code == cli.EXIT_OK
        assert doc["results"]["a1"] == -3


class TestCheck:
    def test_tau_verdict(self, capsys, schema):
        code, doc = run_cli_capture(["check", "(3,5,7,9,11)"], capsys)
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        assert doc["results"]["verdict"] == "HoldsByTau"

    def test_unsupported_exit(self, capsys):
        assert run_cli(["check", "(4,6,8)"]) == cli.EXIT_DOMAIN

    def test_link_exit(self, capsys):
        assert run_cli(["check", "(3,3)"]) == cli.EXIT_DOMAIN


class TestSlopes:
    def test_p5(self, capsys, schema):
        code, doc = run_cli_capture(["slopes", "-p", "5", "--cap-q", "10"], capsys)
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        assert doc["results"]["admissible_q"] == [2, 3, 7, 8]

    def test_p7_empty(self, capsys):
        _, doc = run_cli_capture(["slopes", "-p", "7", "--cap-q", "100"], capsys)
        assert doc["results"]["admissible_q"] == []


class TestSweep:
    def test_small_sweep_csv_and_json(self, tmp_path, capsys, schema):
        csv_path = tmp_path / "rows.csv"
        json_path = tmp_path / "summary.json"
        code = run_cli([
            "sweep", "--max-abs", "3", "--max-n", "4",
            "--csv", str(csv_path), "--out", str(json_path),
        ])
        assert code == cli.EXIT_OK
        doc = json.loads(json_path.read_text())
        jsonschema.validate(doc, schema)
        assert doc["results"]["residual_count"] == 0
        header = csv_path.read_text().splitlines()[0]
        assert header.split(",") == cli.CSV_COLUMNS
        assert doc["results"]["total"] == len(csv_path.read_text().splitlines()) - 1

    def test_sweep_deterministic_bytes(self, tmp_path):
        csv_path = tmp_path / "rows.csv"
        json_path = tmp_path / "summary.json"
        outs = []
        for _ in range(2):  # identical flags, rerun overwrites
            assert run_cli([
                "sweep", "--max-abs", "3", "--max-n", "3",
                "--csv", str(csv_path), "--out", str(json_path),
            ]) == cli.EXIT_OK
            outs.append((csv_path.read_bytes(), json_path.read_bytes()))
        assert outs[0] == outs[1]

    def test_sweep_cache_resume(self, tmp_path):
        cache = tmp_path / "cache.jsonl"
        csv1 = tmp_path / "one.csv"
        csv2 = tmp_path / "two.csv"
        args = ["sweep", "--max-abs", "3", "--max-n", "3", "--cache", str(cache)]
        assert run_cli(args + ["--csv", str(csv1), "--out", str(tmp_path / "x.json")]) == 0
        assert cache.exists() and cache.stat().st_size > 0
        size_after_first = cache.stat().st_size
        assert run_cli(args + ["--csv", str(csv2), "--out", str(tmp_path / "y.json")]) == 0
        assert cache.stat().st_size == size_after_first  # fully cached: no appends
        assert csv1.read_bytes() == csv2.read_bytes()

    def test_residual_locus_mode(self, tmp_path, capsys, schema):
        code, doc = run_cli_capture(
            ["sweep", "--only-residual-locus", "--max-abs", "5"], capsys
        )
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        assert doc["results"]["residual"] == []
        assert doc["results"]["case2_zeroes"] == 0


class TestEnvCap:
    def test_bracket_cap_env(self):
        code = subprocess.run(
            [sys.executable, "-m", "pretzel_pcsc.cli", "check", "(3,3,5,-3,-3)"],
            env={"PATH": "/usr/bin:/bin", "PRETZEL_PCSC_BRACKET_CAP": "10"},
            capture_output=True,
            text=True,
        )
        # a2 route decides without the bracket, so the low cap is harmless
        assert code.returncode == 0
        doc = json.loads(code.stdout)
        assert doc["results"]["verdict"] == "HoldsByA2"

    def test_timings_flag_breaks_nothing(self, capsys, schema):
        code, doc = run_cli_capture(["check", "(1,1,1)", "--timings"], capsys)
        assert code == cli.EXIT_OK
        jsonschema.validate(doc, schema)
        assert "timings" in doc
