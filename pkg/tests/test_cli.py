"""Tests for the command-line interface: output shapes and exit codes."""

import json

import pytest

from monofour import checks
from monofour.cli import main
from monofour.reports import validate_report_dict


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReduce:
    def test_weyl_json(self, capsys):
        code, out, err = run_cli(capsys, "reduce", "--algebra", "weyl", "dx*(x-1)")
        assert code == 0 and not err
        data = json.loads(out)
        assert data["normal_form"] == "1 - dx + x*dx"
        assert data["algebra"] == "weyl"

    def test_shift_kernel_relation(self, capsys):
        code, out, _ = run_cli(capsys, "reduce", "--algebra", "shift", "(s+1) - Ti*s")
        assert code == 0
        assert json.loads(out)["normal_form"] == "Ti*(-s) + (1 + s)"

    def test_pretty_is_plain_text(self, capsys):
        code, out, _ = run_cli(
            capsys, "reduce", "--algebra", "weyl", "dx*x", "--pretty"
        )
        assert code == 0
        assert "normal form" in out and "x*dx" in out

    def test_json_keys_sorted(self, capsys):
        _, out, _ = run_cli(capsys, "reduce", "--algebra", "weyl", "x")
        assert out.strip() == json.dumps(json.loads(out), sort_keys=True)

    def test_syntax_error_exits_1(self, capsys):
        code, out, err = run_cli(capsys, "reduce", "--algebra", "shift", "s + +")
        assert code == 1 and not out
        assert "offset 4" in err

    def test_wrong_algebra_atom_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "reduce", "--algebra", "weyl", "T*s")
        assert code == 1
        assert "shift" in err


class TestMellinAndFourier:
    def test_mellin_euler_operator(self, capsys):
        code, out, _ = run_cli(capsys, "mellin", "x*dx")
        assert code == 0
        data = json.loads(out)
        assert data["shift_normal_form"] == "s"

    def test_mellin_variable_becomes_shift(self, capsys):
        _, out, _ = run_cli(capsys, "mellin", "x")
        assert json.loads(out)["shift_normal_form"] == "T"

    def test_fourier_variable(self, capsys):
        code, out, _ = run_cli(capsys, "fourier", "--rank", "1", "x")
        assert code == 0
        assert json.loads(out)["transformed"] == "-dx"

    def test_fourier_default_rank(self, capsys):
        code, out, _ = run_cli(capsys, "fourier", "dx")
        assert code == 0
        assert json.loads(out)["transformed"] == "x"


class TestTrace:
    def test_kernel_table(self, capsys):
        code, out, _ = run_cli(capsys, "trace", "--q", "5", "--object", "B")
        assert code == 0
        data = json.loads(out)
        values = {row["point"]: row["value"] for row in data["values"]}
        assert values == {"0": "1", "1": "-4", "2": "1", "3": "1", "4": "1"}

    def test_power_count_table(self, capsys):
        _, out, _ = run_cli(capsys, "trace", "--q", "5", "--object", "I0:2")
        data = json.loads(out)
        values = {row["point"]: row["value"] for row in data["values"]}
        assert values == {"0": "0", "1": "2", "2": "0", "3": "0", "4": "2"}

    def test_psi_table(self, capsys):
        _, out, _ = run_cli(capsys, "trace", "--q", "3", "--object", "psi")
        data = json.loads(out)
        assert [row["value"] for row in data["values"]] == ["1", "z3", "-1 - z3"]

    def test_pretty_table_lexicographic(self, capsys):
        code, out, _ = run_cli(
            capsys, "trace", "--q", "3", "--object", "B", "--pretty"
        )
        assert code == 0
        lines = [ln.split() for ln in out.strip().splitlines()[1:]]
        assert [ln[0] for ln in lines] == ["0", "1", "2"]

    def test_unknown_object_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "trace", "--q", "5", "--object", "Z")
        assert code == 1 and "Z" in err

    def test_nonprime_power_q_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "trace", "--q", "6", "--object", "B")
        assert code == 1 and err


class TestVerify:
    def test_pass_exit_0(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "keythm", "--q", "3", "--d", "1")
        assert code == 0
        data = json.loads(out)
        validate_report_dict(data)
        assert data["verdict"] == "pass"
        assert data["parameters"]["q"] == 3

    def test_diagnostic_exit_2(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "propB3-diagnostic", "--q", "3", "--n", "1")
        assert code == 2
        assert json.loads(out)["verdict"] == "diagnostic"

    def test_chi_flag_reaches_check(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "propDmod3", "--chi", "1/2", "--n", "2", "--window", "6"
        )
        assert code == 0
        assert json.loads(out)["parameters"]["chi"] == "1/2"

    def test_inapplicable_flag_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "verify", "keythm", "--ell", "3")
        assert code == 1 and "ell" in err

    def test_unknown_check_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "verify", "nonsense")
        assert code == 1 and err

    def test_pretty_shows_statement(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "appendix-tensor", "--pretty")
        assert code == 0
        assert "verdict:   pass" in out
        assert checks.CHECKS["appendix-tensor"].statement in out


class TestVerifyAll:
    @pytest.fixture()
    def tiny_profile(self, monkeypatch):
        monkeypatch.setitem(
            checks.PROFILES,
            "quick",
            lambda: [
                ("keythm", {"q": 2, "d": 1}),
                ("gauss-g-diagnostic", {"q": 3, "n": 1}),
            ],
        )

    def test_exit_0_when_no_failures(self, capsys, tiny_profile):
        code, out, _ = run_cli(capsys, "verify-all", "--profile", "quick")
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] == "pass"
        assert data["counts"] == {"pass": 1, "fail": 0, "diagnostic": 1}
        for rep in data["reports"]:
            validate_report_dict(rep)

    def test_exit_1_on_any_failure(self, capsys, monkeypatch):
        canned = {
            "profile": "quick",
            "seed": None,
            "counts": {"pass": 0, "fail": 1, "diagnostic": 0},
            "verdict": "fail",
            "reports": [],
        }
        monkeypatch.setattr(checks, "run_all", lambda *a, **k: canned)
        code, out, _ = run_cli(capsys, "verify-all")
        assert code == 1
        assert json.loads(out)["verdict"] == "fail"

    def test_seed_flag_threaded_through(self, capsys, tiny_profile):
        code, out, _ = run_cli(capsys, "verify-all", "--seed", "123")
        assert code == 0
        data = json.loads(out)
        assert data["seed"] == 123
        keythm = data["reports"][0]
        assert keythm["parameters"]["seed"] == 123

    def test_pretty_summary_line(self, capsys, tiny_profile):
        code, out, _ = run_cli(capsys, "verify-all", "--pretty")
        assert code == 0
        assert "verdict=pass" in out.splitlines()[-1]


class TestUsageErrors:
    def test_unknown_subcommand_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "bogus")
        assert code == 1 and err

    def test_missing_required_flag_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "reduce", "dx")
        assert code == 1 and err

    def test_no_subcommand_exits_1(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 1 and err

    def test_help_exits_0(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        assert "verify-all" in out
