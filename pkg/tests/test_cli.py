"""Command-line interface: flags, formats, exit codes, determinism."""

import json
import math
from fractions import Fraction

from opseries import EgfSeries, from_json_dict
from opseries.cli import main

XEMX = ",".join(str((-1) ** (m - 1) * m) for m in range(1, 8))  # x e^{-x} to order 7
XEMX_ARGS = ["invert", "--order", "6", "--coeffs", "0," + XEMX]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInvert:
    def test_log_method_json(self, capsys):
        code, out, _ = run(XEMX_ARGS + ["--method", "log", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["c"] == ["1", "1", "3", "16", "125", "1296", "16807"]
        inverse = from_json_dict(payload["inverse"])
        assert list(inverse.coeffs) == [0, 1, 2, 9, 64, 625, 7776]

    def test_log_method_text(self, capsys):
        code, out, _ = run(XEMX_ARGS + ["--method", "log"], capsys)
        assert code == 0
        assert "b: 1, 2, 9, 64, 625, 7776" in out
        assert "c: 1, 1, 3, 16, 125, 1296, 16807" in out

    def test_all_methods_agree(self, capsys):
        code, out, _ = run(
            ["invert", "--order", "6", "--coeffs", "0,1,0,0,0,0,0,0", "--method", "all"],
            capsys,
        )
        assert code == 0
        assert "agree: true" in out
        assert "inverse: x" in out

    def test_all_methods_json_round_trip(self, capsys):
        code, out, _ = run(XEMX_ARGS + ["--method", "all", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["agree"] is True
        for blob in payload["results"].values():
            assert from_json_dict(blob) == from_json_dict(payload["inverse"])

    def test_ogf_conversion(self, capsys):
        # f = x + x^2 given with ordinary coefficients
        code, out, _ = run(
            [
                "invert",
                "--order",
                "5",
                "--coeffs",
                "0,1,1,0,0,0,0",
                "--convention",
                "ogf",
                "--method",
                "newton",
                "--format",
                "json",
            ],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["inverse"]["convention"] == "ogf"
        g = from_json_dict(payload["inverse"])
        f = EgfSeries([0] + [math.factorial(m) * c for m, c in enumerate([1, 1, 0, 0, 0], start=1)])
        assert f.truncate(5).compose(g) == EgfSeries.identity(5)

    def test_input_file(self, tmp_path, capsys):
        path = tmp_path / "series.json"
        path.write_text(
            json.dumps(
                {
                    "convention": "egf",
                    "order": 7,
                    "coeffs": ["0"] + [str((-1) ** (m - 1) * m) for m in range(1, 8)],
                }
            )
        )
        code, out, _ = run(
            ["invert", "--order", "6", "--input", str(path), "--method", "classical",
             "--format", "json"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert from_json_dict(payload["inverse"]).coeffs[1:] == (1, 2, 9, 64, 625, 7776)

    def test_zero_linear_coefficient_exits_2(self, capsys):
        code, _, err = run(
            ["invert", "--order", "4", "--coeffs", "0,0,1,1,1,1"], capsys
        )
        assert code == 2
        assert "a1 must be nonzero" in err

    def test_insufficient_order_exits_2(self, capsys):
        code, _, err = run(["invert", "--order", "6", "--coeffs", "0,1,1"], capsys)
        assert code == 2
        assert "order" in err

    def test_bad_coefficients_exit_2(self, capsys):
        code, _, err = run(["invert", "--order", "2", "--coeffs", "0,one,2"], capsys)
        assert code == 2


class TestVerify:
    def test_compos_example(self, capsys):
        code, out, _ = run(["verify", "compos", "--m", "3", "--seed", "7", "--n", "2"], capsys)
        assert code == 0
        assert "PASS" in out
        assert "summands=5" in out

    def test_stirling_trivial(self, capsys):
        code, out, _ = run(["verify", "stirling", "--m", "1"], capsys)
        assert code == 0
        assert "1/1 passed" in out

    def test_inversion_trials(self, capsys):
        code, out, _ = run(
            ["verify", "inversion", "--trials", "50", "--order", "8", "--seed", "1",
             "--format", "json"],
            capsys,
        )
        assert code == 0
        reports = json.loads(out)
        assert len(reports) == 50
        assert all(r["passed"] for r in reports)

    def test_unknown_theorem_exits_2(self, capsys):
        code, _, _ = run(["verify", "prop99"], capsys)
        assert code == 2

    def test_json_output_deterministic(self, capsys):
        args = ["verify", "prop1", "--trials", "3", "--seed", "42", "--format", "json"]
        _, first, _ = run(args, capsys)
        _, second, _ = run(args, capsys)
        assert first == second


class TestEnumerationCommands:
    def test_partitions_text(self, capsys):
        code, out, _ = run(["partitions", "3"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert set(lines[:-1]) == {"1-2-3", "12-3", "13-2", "1-23", "123"}
        assert lines[-1] == "count: 5"

    def test_partitions_json(self, capsys):
        code, out, _ = run(["partitions", "4", "--format", "json"], capsys)
        payload = json.loads(out)
        assert payload["count"] == 15
        assert len(payload["partitions"]) == 15

    def test_partitions_over_cap_exits_2(self, capsys):
        code, _, err = run(["partitions", "13"], capsys)
        assert code == 2

    def test_bell_text(self, capsys):
        code, out, _ = run(["bell", "3"], capsys)
        assert code == 0
        assert out.strip() == "x1^3 + 3*x1*x2 + x3"

    def test_bell_json(self, capsys):
        code, out, _ = run(["bell", "4", "--format", "json"], capsys)
        payload = json.loads(out)
        assert payload["coefficients"] == {
            "1^4": 1,
            "1^2 2^1": 6,
            "1^1 3^1": 4,
            "2^2": 3,
            "4^1": 1,
        }

    def test_usage_error_exits_2(self, capsys):
        code, _, _ = run(["frobnicate"], capsys)
        assert code == 2
