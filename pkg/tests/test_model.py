import numpy as np
import pytest

from core.errors import DimensionError, PreconditionError
from core.model import (
    DecisionCommittee,
    Example,
    Literal,
    Monomial,
    Rule,
    Sample,
    classify,
    compute_default_vector,
    error_rate,
    predict_batch,
    satisfies,
    size_metrics,
    vote,
)

TOL = 1e-9

ONLY_RULE1 = "1100"
BOTH_RULES = "1111"
NO_RULE = "0000"


class TestMonomial:
    def test_satisfies_positive_literals(self):
        assert satisfies("1100", Monomial.from_indices(pos=[0, 1]))

    def test_negative_literal_mismatch(self):
        assert not satisfies("1100", Monomial.from_indices(pos=[0], neg=[1]))

    def test_empty_monomial_always_satisfied(self):
        for obs in ("0000", "1111", "1010"):
            assert satisfies(obs, Monomial())

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            satisfies("110", Monomial.from_indices(pos=[0]), n=4)

    def test_contradiction_unrepresentable(self):
        with pytest.raises(PreconditionError):
            Monomial(pos=0b1, neg=0b1)
        with pytest.raises(PreconditionError):
            Monomial.from_indices(pos=[2]).with_literal(Literal(2, False))

    def test_covers_matches_satisfies(self):
        rng = np.random.default_rng(3)
        X = rng.integers(0, 2, size=(50, 5)).astype(bool)
        monomial = Monomial.from_indices(pos=[1], neg=[3])
        expected = [satisfies(row, monomial) for row in X]
        assert monomial.covers(X).tolist() == expected

    def test_render(self):
        monomial = Monomial.from_indices(pos=[0], neg=[2])
        assert monomial.render() == "x0 ∧ ¬x2"
        assert monomial.render(["a", "b", "c"]) == "a ∧ ¬c"
        assert monomial.literal_count() == 2


class TestCommittee:
    def test_duplicate_monomials_rejected(self):
        rule = Rule(Monomial.from_indices(pos=[0]), (1, -1))
        with pytest.raises(PreconditionError):
            DecisionCommittee(2, 2, (rule, rule))

    def test_vote_dimension_checked(self):
        with pytest.raises(DimensionError):
            DecisionCommittee(2, 3, (Rule(Monomial.from_indices(pos=[0]), (1, -1)),))

    def test_vote_component_range(self):
        with pytest.raises(PreconditionError):
            Rule(Monomial(), (2, 0))

    def test_default_uniform_when_missing(self):
        dc = DecisionCommittee(2, 4)
        assert dc.default == pytest.approx((0.25,) * 4)

    def test_describe_lists_rules_and_default(self, figure3_dc):
        text = figure3_dc.describe()
        assert "x0 ∧ x1" in text
        assert "default D" in text
        assert "0.68" in text


class TestVoteAndClassify:
    def test_vote_single_rule(self, figure3_dc):
        assert vote(figure3_dc, ONLY_RULE1).tolist() == [-1, -1, 1]

    def test_vote_both_rules(self, figure3_dc):
        assert vote(figure3_dc, BOTH_RULES).tolist() == [0, -2, 2]

    def test_vote_no_rule(self, figure3_dc):
        assert vote(figure3_dc, NO_RULE).tolist() == [0, 0, 0]

    def test_vote_matches_loop(self, figure3_dc):
        rng = np.random.default_rng(7)
        for row in rng.integers(0, 2, size=(30, 4)):
            expected = np.zeros(3)
            for rule in figure3_dc.rules:
                if satisfies(row, rule.monomial):
                    expected += rule.votes
            assert vote(figure3_dc, row).tolist() == expected.tolist()

    def test_classify_unique_argmax(self, figure3_dc):
        assert classify(figure3_dc, ONLY_RULE1) == 2

    def test_classify_uses_default_on_tie(self, figure3_dc):
        assert classify(figure3_dc, NO_RULE) == 1

    def test_residual_tie_seeded(self):
        dc = DecisionCommittee(2, 3)
        picks = {classify(dc, "00", tie_seed=11) for _ in range(5)}
        assert len(picks) == 1
        assert picks.pop() in range(3)

    def test_predict_batch_matches_classify(self, figure3_dc):
        X = np.array([[1, 1, 0, 0], [1, 1, 1, 1], [0, 0, 0, 0]], dtype=bool)
        assert predict_batch(figure3_dc, X).tolist() == [classify(figure3_dc, row) for row in X]


class TestDefaultVector:
    def test_all_ambiguous_one_class(self):
        sample = Sample.from_labels(np.zeros((3, 1), dtype=bool), [0, 0, 0], 3)
        assert compute_default_vector(DecisionCommittee(1, 3), sample) == pytest.approx((1.0, 0.0, 0.0))

    def test_fallback_without_ambiguous(self):
        X = np.array([[1]] * 10, dtype=bool)
        sample = Sample.from_labels(X, [0] * 6 + [1] * 4, 2)
        dc = DecisionCommittee(1, 2, (Rule(Monomial.from_indices(pos=[0]), (1, -1)),))
        assert compute_default_vector(dc, sample) == pytest.approx((0.6, 0.4))

    def test_weighted_ambiguous_distribution(self):
        X = np.array([[0], [0], [1]], dtype=bool)
        sample = Sample.from_labels(X, [0, 1, 1], 2, w=[0.1, 0.3, 0.6])
        dc = DecisionCommittee(1, 2, (Rule(Monomial.from_indices(pos=[0]), (-1, 1)),))
        assert compute_default_vector(dc, sample) == pytest.approx((0.25, 0.75))

    def test_empty_sample(self):
        sample = Sample(np.zeros((0, 1), dtype=bool), np.zeros((0, 2), dtype=bool))
        with pytest.raises(PreconditionError):
            compute_default_vector(DecisionCommittee(1, 2), sample)


class TestMetrics:
    def test_size_metrics(self, figure3_dc):
        assert size_metrics(figure3_dc) == (2, 5)
        assert size_metrics(DecisionCommittee(3, 2)) == (0, 0)
        one = DecisionCommittee(3, 2, (Rule(Monomial.from_indices(pos=[0, 1], neg=[2]), (1, 0)),))
        assert size_metrics(one) == (1, 3)

    def test_error_rate_majority(self):
        sample = Sample.from_labels(np.zeros((10, 1), dtype=bool), [0] * 6 + [1] * 4, 2)
        dc = DecisionCommittee(1, 2, default=(1.0, 0.0))
        assert error_rate(dc, sample) == pytest.approx(0.4, abs=TOL)

    def test_error_rate_figure3_cases(self, figure3_dc):
        X = np.array([[1, 1, 0, 0], [1, 1, 1, 1], [0, 0, 0, 0]], dtype=bool)
        sample = Sample.from_labels(X, [2, 2, 1], 3)
        assert error_rate(figure3_dc, sample) == 0.0

    def test_unreached_rule_does_not_change_error(self, figure3_dc):
        X = np.array([[1, 1, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1]], dtype=bool)
        sample = Sample.from_labels(X, [2, 1, 0], 3)
        reduced = figure3_dc.without_rule(1)
        assert error_rate(reduced, sample) == error_rate(figure3_dc, sample)

    def test_multilabel_prediction_correct_if_bit_set(self):
        examples = [Example((False,), (True, True), 1.0)]
        sample = Sample.from_examples(examples, 1, 2)
        dc = DecisionCommittee(1, 2, default=(0.0, 1.0))
        assert error_rate(dc, sample) == 0.0


class TestSample:
    def test_weights_normalized(self):
        sample = Sample.from_labels(np.zeros((4, 1), dtype=bool), [0, 1, 0, 1], 2, w=[1, 1, 1, 5])
        assert sample.w.sum() == pytest.approx(1.0, abs=TOL)

    def test_example_requires_class_bit(self):
        with pytest.raises(PreconditionError):
            Example((True,), (False, False), 1.0)

    def test_nonpositive_weight(self):
        with pytest.raises(PreconditionError):
            Example((True,), (True, False), 0.0)
