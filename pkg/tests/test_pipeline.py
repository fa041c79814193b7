import numpy as np
import pytest

from core.errors import PreconditionError
from core.model import Monomial, Sample, classify, error_rate, size_metrics
from core.model_io import dumps_committee
from core.pipeline import (
    assign_votes,
    cross_validate,
    fold_frame,
    noise_sweep,
    sweep_frame,
    train,
    write_sweep_csv,
)
from core.schemas import RunConfig
from core.utils import noise_levels
from core.xd6 import XD6_IRRELEVANT, contains_target, gen_xd6

TOL = 1e-9


@pytest.fixture(scope="module")
def xd6_noisy() -> Sample:
    return gen_xd6(256, class_noise=0.1, seed=11)


class TestAssignVotes:
    def test_zero_vector_rules_dropped(self, separable_sample):
        rules = assign_votes(separable_sample, [Monomial.from_indices(pos=[1]), Monomial.from_indices(pos=[0])])
        # x1 tidak relevan: distribusi kelas seimbang → vektor nol
        assert [rule.monomial for rule in rules] == [Monomial.from_indices(pos=[0])]
        assert rules[0].votes == (-1, 1)


class TestTrain:
    def test_single_class(self, single_class_sample):
        result = train(single_class_sample, RunConfig(mode="p"))
        assert result.committee.rules == ()
        assert classify(result.committee, "01") == 1

    def test_separable(self, separable_sample):
        result = train(separable_sample, RunConfig(mode="p"))
        assert size_metrics(result.committee) == (1, 1)
        assert error_rate(result.committee, separable_sample) == 0.0

    def test_empty_sample(self):
        sample = Sample(np.zeros((0, 2), dtype=bool), np.zeros((0, 2), dtype=bool))
        with pytest.raises(PreconditionError):
            train(sample)

    @pytest.mark.parametrize("mode", ["o", "p", "none"])
    def test_deterministic(self, xd6_noisy, mode):
        config = RunConfig(mode=mode, seed=5, resample_target=500)
        first = train(xd6_noisy, config).committee
        second = train(xd6_noisy, config).committee
        assert dumps_committee(first) == dumps_committee(second)

    def test_pruning_never_grows(self, xd6_noisy):
        unpruned = train(xd6_noisy, RunConfig(mode="none")).committee
        for mode in ("o", "p"):
            pruned = train(xd6_noisy, RunConfig(mode=mode, resample_target=500)).committee
            assert len(pruned.rules) <= len(unpruned.rules)
            assert set(pruned.rules) <= set(unpruned.rules)

    def test_pessimistic_error_not_worse(self, xd6_noisy):
        result = train(xd6_noisy, RunConfig(mode="p"))
        assert error_rate(result.committee, xd6_noisy) <= error_rate(result.unpruned, xd6_noisy) + TOL

    def test_timings_and_trace(self, xd6_noisy):
        result = train(xd6_noisy, RunConfig(mode="p"))
        assert {"grow", "vote", "prune", "total"} <= set(result.timings)
        assert result.prune_trace is not None
        assert len(result.grow_trace) >= len(result.grown)


class TestCrossValidate:
    def test_separable_zero_error(self, separable_sample):
        report = cross_validate(separable_sample, RunConfig(mode="p", folds=5), progress=False)
        assert report.mean_error_pct == 0.0
        assert len(report.folds) == 5

    def test_means_match_folds(self, xd6_noisy):
        report = cross_validate(xd6_noisy, RunConfig(mode="p", folds=4), target_check=contains_target, progress=False)
        frame = fold_frame(report)
        assert report.mean_error_pct == pytest.approx(frame["error_pct"].mean(), abs=TOL)
        assert report.mean_l_dc == pytest.approx(frame["l_dc"].mean(), abs=TOL)
        assert report.target_rate() is not None

    def test_reproducible(self, xd6_noisy):
        config = RunConfig(mode="p", folds=3, seed=2)
        first = cross_validate(xd6_noisy, config, progress=False)
        second = cross_validate(xd6_noisy, config, progress=False)
        assert first.model_dump(exclude={"wall_time_sec"}) == second.model_dump(exclude={"wall_time_sec"})


class TestNoiseSweep:
    def test_rows(self, tmp_path):
        config = RunConfig(mode="p", folds=2)
        rows = noise_sweep(config, kinds=("class",), examples=60, step=0.2, limit=0.4)
        assert [row.level for row in rows] == noise_levels(0.2, 0.4)
        assert rows[0].bayes_error_pct == pytest.approx(0.0, abs=1e-9)
        assert rows[1].bayes_error_pct == pytest.approx(20.0)
        frame = sweep_frame(rows)
        assert list(frame.columns)[:3] == ["noise_kind", "level", "mean_error_pct"]
        path = write_sweep_csv(rows, tmp_path / "sweep.csv")
        assert path.read_text().splitlines()[0].startswith("noise_kind,level")

    def test_unknown_kind(self):
        with pytest.raises(PreconditionError):
            noise_sweep(RunConfig(folds=2), kinds=("label",), examples=30, step=0.2, limit=0.2)


@pytest.mark.slow
class TestXd6Reproduction:
    def test_ten_percent_class_noise(self):
        reports = [
            cross_validate(gen_xd6(512, class_noise=0.1, seed=seed), RunConfig(mode="p", seed=seed), progress=False)
            for seed in range(5)
        ]
        assert np.mean([r.mean_error_pct for r in reports]) <= 25.0
        assert 8.0 <= np.mean([r.mean_l_dc for r in reports]) <= 40.0

    def test_noise_free_recovers_target(self):
        found = 0
        for seed in range(10):
            committee = train(gen_xd6(512, seed=seed), RunConfig(mode="p", seed=seed)).committee
            found += contains_target(committee)
            assert not any(rule.monomial.has_variable(XD6_IRRELEVANT) for rule in committee.rules)
        assert found >= 5

    def test_class_noise_sweep_endpoints(self):
        rows = noise_sweep(RunConfig(mode="p"), kinds=("class",))
        assert all(row.mean_l_dc <= 60 for row in rows)
        assert rows[0].mean_error_pct <= rows[-1].mean_error_pct
