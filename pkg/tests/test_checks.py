"""Tests for the check registry, dispatch, and profile runner."""

import json

import pytest

from monofour import checks, groupalg, mellin, ore, trace
from monofour.reports import validate_report_dict

ENGINES = {"trace": trace, "mellin": mellin, "ore": ore, "groupalg": groupalg}

DIAGNOSTIC_CHECKS = {"gauss-g-diagnostic", "propB3-diagnostic"}


def stripped(report_dict):
    return {k: v for k, v in report_dict.items() if k != "elapsed"}


class TestRegistry:
    def test_registry_has_24_checks(self):
        assert len(checks.CHECK_IDS) == 24
        assert len(set(checks.CHECK_IDS)) == 24

    @pytest.mark.parametrize("check_id", checks.CHECK_IDS)
    def test_statement_nonempty(self, check_id):
        assert checks.CHECKS[check_id].statement.strip()

    @pytest.mark.parametrize("check_id", checks.CHECK_IDS)
    def test_engine_mapping_resolves(self, check_id):
        engine = checks.CHECKS[check_id].engine
        module_name, _, operation = engine.partition(".")
        assert module_name in ENGINES, engine
        assert hasattr(ENGINES[module_name], operation), engine

    def test_each_check_maps_to_one_operation(self):
        for spec in checks.CHECKS.values():
            assert spec.engine.count(".") == 1

    def test_every_engine_module_is_covered(self):
        modules = {spec.engine.split(".")[0] for spec in checks.CHECKS.values()}
        assert modules == set(ENGINES)


class TestRunCheck:
    @pytest.mark.parametrize("check_id", checks.CHECK_IDS)
    def test_default_run_produces_valid_report(self, check_id):
        report = checks.run_check(check_id)
        assert report.check == check_id
        data = report.to_dict()
        validate_report_dict(data)
        if check_id in DIAGNOSTIC_CHECKS:
            assert report.verdict == "diagnostic"
            assert report.exit_code == 2
        else:
            assert report.verdict == "pass"
            assert report.exit_code == 0

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError):
            checks.run_check("nonsense")

    def test_unknown_parameter_rejected(self):
        with pytest.raises(ValueError):
            checks.run_check("keythm", {"ell": 3})

    def test_none_parameters_use_defaults(self):
        a = checks.run_check("p2b", {"q": None})
        b = checks.run_check("p2b")
        assert stripped(a.to_dict()) == stripped(b.to_dict())

    def test_parameters_merge_overrides(self):
        report = checks.run_check("keythm", {"q": 5})
        assert report.parameters["q"] == 5
        assert report.parameters["d"] == 1

    def test_chi_accepts_fraction_strings(self):
        report = checks.run_check("propDmod1", {"chi": "1/2", "n": 2})
        assert report.verdict == "pass"
        assert report.witness["chi"] == "1/2" or str(report.witness["chi"]) == "1/2"

    def test_deterministic_given_seed(self):
        a = checks.run_check("mon-test", {"seed": 11, "count": 5})
        b = checks.run_check("mon-test", {"seed": 11, "count": 5})
        assert stripped(a.to_dict()) == stripped(b.to_dict())

    def test_statement_embedded_in_report(self):
        report = checks.run_check("appendix-tensor")
        assert report.statement == checks.CHECKS["appendix-tensor"].statement


class TestNegativeControls:
    def test_exp_square_control_must_fail_for_pass(self):
        report = checks.run_check("exp-square")
        assert report.witness["control_verdict"] is False

    def test_nzd_control_present_when_modulus_large(self):
        report = checks.run_check("appendix-nzd", {"ell": 3, "r": 1, "n": 4})
        assert report.witness["control_applicable"] is True
        assert report.witness["control"]["verdict"] is False

    def test_nzd_control_skipped_at_modulus_two(self):
        report = checks.run_check("appendix-nzd", {"ell": 2, "r": 1, "n": 3})
        assert report.witness["control_applicable"] is False
        assert report.verdict == "pass"

    def test_embed_rejection_is_part_of_verdict(self):
        report = checks.run_check("mellin-b-embed")
        assert report.witness["rejection"]

    def test_fb_fl_refusal_recorded(self):
        report = checks.run_check("fb-fl-agree")
        assert report.witness["control_refused"] is True
        assert report.witness["control_diagnostic"]


class TestProfiles:
    def test_unknown_profile_rejected(self):
        with pytest.raises(ValueError):
            checks.profile_tasks("overnight")

    def test_quick_covers_every_check(self):
        covered = {check_id for check_id, _ in checks.profile_tasks("quick")}
        assert covered == set(checks.CHECK_IDS)

    def test_full_extends_quick(self):
        quick = checks.profile_tasks("quick")
        full = checks.profile_tasks("full")
        assert len(full) > len(quick)
        assert full[: len(quick)] == quick

    def test_profile_params_are_valid(self):
        for profile in ("quick", "full"):
            for check_id, params in checks.profile_tasks(profile):
                defaults = checks.CHECKS[check_id].defaults
                unknown = set(params) - set(defaults)
                assert not unknown, (profile, check_id, unknown)

    def test_profile_enumeration_is_deterministic(self):
        assert checks.profile_tasks("quick") == checks.profile_tasks("quick")
        assert checks.profile_tasks("full") == checks.profile_tasks("full")

    def test_seed_reaches_only_seeded_checks(self):
        tasks = checks.profile_tasks("quick")
        seeded = {cid for cid, _ in tasks if checks.CHECKS[cid].seeded}
        assert "mon-test" in seeded and "fourier-antipode" in seeded
        assert "p2b" not in seeded


class TestRunAllSmall:
    """run_all plumbing on a tiny synthetic profile; the real quick/full
    grids are exercised by the acceptance suite."""

    @pytest.fixture()
    def tiny_profile(self, monkeypatch):
        tasks = [
            ("keythm", {"q": 2, "d": 1}),
            ("propB3-diagnostic", {"q": 3, "n": 1}),
            ("appendix-tensor", {}),
            ("keythm", {"q": 3, "d": 1}),
        ]
        monkeypatch.setitem(checks.PROFILES, "tiny", lambda: list(tasks))
        return tasks

    def test_reports_merged_by_check_then_order(self, tiny_profile):
        out = checks.run_all("tiny")
        got = [(r["check"], r["parameters"].get("q")) for r in out["reports"]]
        assert got == [
            ("keythm", 2),
            ("keythm", 3),
            ("propB3-diagnostic", 3),
            ("appendix-tensor", None),
        ]

    def test_counts_and_verdict(self, tiny_profile):
        out = checks.run_all("tiny")
        assert out["counts"] == {"pass": 3, "fail": 0, "diagnostic": 1}
        assert out["verdict"] == "pass"

    def test_seed_recorded_and_applied(self, tiny_profile):
        out = checks.run_all("tiny", seed=99)
        assert out["seed"] == 99
        keythm_reports = [r for r in out["reports"] if r["check"] == "keythm"]
        assert all(r["parameters"]["seed"] == 99 for r in keythm_reports)
        diag = [r for r in out["reports"] if r["check"] == "propB3-diagnostic"]
        assert "seed" not in diag[0]["parameters"]

    def test_deterministic_json(self, tiny_profile):
        def strip_all(d):
            return json.dumps(
                {
                    **d,
                    "reports": [stripped(r) for r in d["reports"]],
                },
                sort_keys=True,
            )

        a = checks.run_all("tiny", seed=5)
        b = checks.run_all("tiny", seed=5)
        assert strip_all(a) == strip_all(b)

    def test_reports_validate(self, tiny_profile):
        out = checks.run_all("tiny")
        for rep in out["reports"]:
            validate_report_dict(rep)
