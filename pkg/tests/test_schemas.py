import pytest
from pydantic import ValidationError

from core.schemas import EvalReport, FoldResult, PenaltyParams, RunConfig, SuiteResult, VerifyReport


class TestRunConfig:
    def test_defaults_from_config(self):
        config = RunConfig()
        assert config.mode == "p"
        assert config.delta == 0.05
        assert config.resample_target == 5000
        assert config.folds == 10

    @pytest.mark.parametrize("alias, mode", [("optimistic", "o"), ("Pessimistic", "p"), ("∅", "none"), ("NONE", "none")])
    def test_mode_aliases(self, alias, mode):
        assert RunConfig(mode=alias).mode == mode

    @pytest.mark.parametrize("field, value", [("mode", "x"), ("delta", 0.0), ("delta", 1.0), ("folds", 1), ("resample_target", 0)])
    def test_invalid(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(**{field: value})

    def test_penalty_params(self):
        params = RunConfig(delta=0.1, resample_target=300, seed=4).penalty_params(offset=2)
        assert params == PenaltyParams(delta=0.1, resample_target=300, seed=6)

    def test_with_seed(self):
        config = RunConfig(mode="o", seed=1)
        copy = config.with_seed(9)
        assert copy.seed == 9 and copy.mode == "o"
        assert config.seed == 1


class TestEvalReport:
    def _folds(self):
        return [FoldResult(fold=0, error_pct=10.0, r_dc=2, l_dc=5), FoldResult(fold=1, error_pct=20.0, r_dc=4, l_dc=7)]

    def test_from_folds(self):
        report = EvalReport.from_folds(self._folds(), 1.5, RunConfig(seed=3))
        assert report.mean_error_pct == pytest.approx(15.0)
        assert report.mean_r_dc == pytest.approx(3.0)
        assert report.mean_l_dc == pytest.approx(6.0)
        assert report.seed == 3
        assert report.target_rate() is None

    def test_inconsistent_means_rejected(self):
        with pytest.raises(ValidationError):
            EvalReport(
                folds=self._folds(), mean_error_pct=99.0, mean_r_dc=3.0, mean_l_dc=6.0,
                wall_time_sec=0.0, seed=0, config=RunConfig(),
            )

    def test_target_rate(self):
        folds = [FoldResult(fold=i, error_pct=0.0, r_dc=3, l_dc=9, contains_target=i % 2 == 0) for i in range(4)]
        assert EvalReport.from_folds(folds, 0.1, RunConfig()).target_rate() == pytest.approx(0.5)


class TestVerifyReport:
    def test_passed(self):
        ok = SuiteResult(name="a", count=3, failures=0, max_deviation=0.0)
        bad = SuiteResult(name="b", count=3, failures=1, max_deviation=0.2)
        assert VerifyReport(seed=0, suites=[ok]).passed
        assert not VerifyReport(seed=0, suites=[ok, bad]).passed
        assert VerifyReport(seed=0, suites=[ok], diagnostics=[bad]).passed
