import json

import pytest
from click.testing import CliRunner

from secantkit.cli import main
from secantkit.reports import (
    CommandError,
    canonical_json,
    jsonable,
    run_command,
)

TC_TEXT = """ring R vars x0 x1 x2 x3;
ideal TC = x0*x2-x1^2, x1*x3-x2^2, x0*x3-x1*x2;
point P = (1 : 1 : 1 : 1);
"""


class TestJsonable:
    def test_integers_become_strings(self):
        assert jsonable({"a": 3, "b": [1, True, None]}) == {
            "a": "3", "b": ["1", True, None]
        }

    def test_floats_banned(self):
        with pytest.raises(TypeError):
            jsonable(1.5)

    def test_fractions(self):
        from fractions import Fraction

        assert jsonable(Fraction(2, 3)) == "2/3"
        assert jsonable(Fraction(4, 2)) == "2"


class TestRunCommand:
    def test_gb_from_text(self):
        r = run_command("gb", input_text=TC_TEXT)
        assert r.payload["size"] == "3"
        assert r.ok

    def test_named_ideal_missing(self):
        with pytest.raises(CommandError):
            run_command("gb", input_text=TC_TEXT, ideal_name="NOPE")

    def test_unknown_command(self):
        with pytest.raises(CommandError):
            run_command("frobnicate", input_text=TC_TEXT)

    def test_family_and_check(self):
        r = run_command("check-k2", family="rational-normal-curve:3")
        assert r.payload["holds"] is True

    def test_check_k2_ci_false_but_exit_ok(self):
        r = run_command("check-k2", family="complete-intersection:2,2")
        assert r.payload["holds"] is False
        assert r.ok  # a verdict, not a violation

    def test_fiber_point_on_base_scheme_rejected(self):
        from secantkit.secant import BasePointError

        # (1:1:1:1) lies on the twisted cubic: a base point of the system
        with pytest.raises(BasePointError):
            run_command("fiber", input_text=TC_TEXT, options={"point": "P"})

    def test_fiber_with_named_point(self):
        text = TC_TEXT + "point Q = (1 : 0 : 0 : 1);\n"
        r = run_command("fiber", input_text=text, options={"point": "Q"})
        # Sec of the twisted cubic fills P^3: every off-curve point lies on
        # a secant line, so the fiber is that line
        assert r.payload["kind"] == "linear"
        assert r.payload["fiber_dim"] == "1"

    def test_determinism_identical_payloads(self):
        a = run_command("deficiency", family="veronese:2:2")
        b = run_command("deficiency", family="veronese:2:2")
        assert canonical_json(a.document()) == canonical_json(b.document())

    def test_vanish_scan_ok_flag(self):
        r = run_command("vanish-scan", family="rational-normal-curve:3",
                        options={"a_min": 1, "a_max": 1, "window": 2})
        assert r.ok and r.payload["violations"] == []


class TestCli:
    def test_gb_json_output(self, tmp_path):
        src = tmp_path / "tc.ring"
        src.write_text(TC_TEXT)
        runner = CliRunner()
        result = runner.invoke(main, ["gb", str(src)])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["size"] == "3"

    def test_out_file_and_text_format(self, tmp_path):
        src = tmp_path / "tc.ring"
        src.write_text(TC_TEXT)
        out = tmp_path / "report.json"
        runner = CliRunner()
        result = runner.invoke(main, ["check-k2", str(src), "--out", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["payload"]["holds"] is True
        text = runner.invoke(main, ["check-k2", str(src), "--format", "text"])
        assert "holds: True" in text.output

    def test_syntax_error_exit_2(self, tmp_path):
        src = tmp_path / "bad.ring"
        src.write_text("ring R vars x;\nideal I = x^-1;\n")
        runner = CliRunner()
        result = runner.invoke(main, ["gb", str(src)])
        assert result.exit_code == 2

    def test_degree_cap_exit_3(self, tmp_path):
        src = tmp_path / "cap.ring"
        src.write_text("ring R vars x y;\nideal I = x^5-y^4, x*y^3-x;\n")
        runner = CliRunner()
        result = runner.invoke(main, ["gb", str(src), "--degree-cap", "3"])
        assert result.exit_code == 3

    def test_corpus_emission_parses_back(self, tmp_path):
        runner = CliRunner()
        result = runner.invoke(main, ["corpus", "--family", "veronese:2:2"])
        assert result.exit_code == 0
        from secantkit.inputlang import parse_input

        model = parse_input(result.output)
        assert len(model.ideals["X"]) == 6

    def test_thresholds(self):
        runner = CliRunner()
        result = runner.invoke(main, [
            "thresholds", "--variant", "second", "--n", "4", "--r", "1",
            "--a", "2",
        ])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["condition"] == "a > 0"
        assert doc["payload"]["twist"] == "3"

    def test_flip_verify(self):
        runner = CliRunner()
        result = runner.invoke(main, ["flip-verify"])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["kv_rewrite_symbolic"] is True
        assert doc["payload"]["kv_rewrite_sweep"] is True

    def test_gb_over_prime_field(self, tmp_path):
        src = tmp_path / "tc.ring"
        src.write_text(TC_TEXT)
        runner = CliRunner()
        result = runner.invoke(main, ["gb", str(src), "--field", "gfp:32003"])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["size"] == "3"
        assert doc["parameters"]["field"] == "gfp:32003"

    def test_cohomology_command(self):
        runner = CliRunner()
        result = runner.invoke(main, [
            "cohomology", "--family", "rational-normal-curve:3",
            "--a", "1", "--k-min", "1", "--k-max", "3",
        ])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["h"]["2"] == ["3", "0", "0", "0"]
        assert doc["payload"]["euler_consistent"] is True

    def test_vanish_scan_second_variant(self):
        runner = CliRunner()
        result = runner.invoke(main, [
            "vanish-scan", "--family", "rational-normal-curve:4",
            "--variant", "second", "--a-min", "2", "--a-max", "2",
        ])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["violations"] == []
        assert doc["payload"]["bounds"] == {"2": "3"}

    def test_vanish_scan_violation_exits_1(self):
        # the boundary cell of the squared twisted-cubic ideal
        runner = CliRunner()
        result = runner.invoke(main, [
            "vanish-scan", "--family", "rational-normal-curve:3",
            "--a-min", "2", "--a-max", "2", "--window", "0",
        ])
        assert result.exit_code == 1
        doc = json.loads(result.output.split("# wall_ms")[0])
        assert doc["payload"]["violations"] == [
            {"a": "2", "bound": "2", "h": "1", "i": "1", "k": "2"}
        ]

    def test_deficiency_command(self):
        runner = CliRunner()
        result = runner.invoke(main, ["deficiency", "--family", "veronese:2:2"])
        assert result.exit_code == 0
        doc = json.loads(result.output.split("# wall_ms")[0])
        payload = doc["payload"]
        assert payload["deficiency"] == "1"
        assert payload["dim_y"] == "2"
        assert payload["formula_consistent"] is True
