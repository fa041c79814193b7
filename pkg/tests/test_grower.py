import numpy as np
import pytest

from core.errors import PreconditionError
from core.grower import (
    Z_DECREASE_EPS,
    PartitionState,
    grow_committee,
    grow_monomial,
    partition_z,
    refine_with_literal,
    z_from_tallies,
)
from core.model import Literal, Monomial, Sample
from core.xd6 import XD6_IRRELEVANT

TOL = 1e-9


def _random_instance(rng, max_n=12, max_m=200):
    n = int(rng.integers(2, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    c = int(rng.integers(2, 5))
    X = rng.random((m, n)) < 0.5
    sample = Sample.from_labels(X, rng.integers(0, c, size=m), c, w=rng.random(m) + 0.05)
    monomials = []
    for _ in range(int(rng.integers(1, 4))):
        chosen = rng.permutation(n)[: int(rng.integers(0, min(n - 1, 3) + 1))]
        split = int(rng.integers(0, len(chosen) + 1))
        monomials.append(Monomial.from_indices(pos=chosen[:split].tolist(), neg=chosen[split:].tolist()))
    return sample, monomials


class TestPartitionZ:
    def test_pure_groups(self):
        tallies = np.array([[0.3, 0.0], [0.0, 0.7]])
        assert z_from_tallies(tallies, tallies.sum(axis=1)) == 0.0

    def test_single_mixed_group(self):
        tallies = np.array([[0.5, 0.5]])
        assert z_from_tallies(tallies, np.array([1.0])) == pytest.approx(2.0, abs=TOL)

    def test_two_mixed_groups(self):
        tallies = np.array([[0.4, 0.1], [0.1, 0.4]])
        assert z_from_tallies(tallies, np.array([0.5, 0.5])) == pytest.approx(1.6, abs=TOL)

    def test_groups_follow_signatures(self, separable_sample):
        state = PartitionState.build(separable_sample, [Monomial.from_indices(pos=[0])])
        assert state.n_groups == 2
        groups = state.groups()
        assert sorted(len(rows) for rows in groups.values()) == [20, 20]
        for rows in groups.values():
            assert len({bool(separable_sample.X[i, 0]) for i in rows}) == 1

    def test_invariant_under_reordering(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            sample, monomials = _random_instance(rng)
            rows = rng.permutation(sample.m)
            shuffled = Sample(sample.X[rows], sample.Y[rows], sample.w[rows])
            reordered = [monomials[i] for i in rng.permutation(len(monomials))]
            expected = partition_z(PartitionState.build(sample, monomials))
            assert partition_z(PartitionState.build(shuffled, reordered)) == pytest.approx(expected, abs=TOL)


class TestRefine:
    def test_irrelevant_literal_keeps_z(self):
        X = np.array([[1, 0], [1, 0], [0, 0], [0, 0]], dtype=bool)
        sample = Sample.from_labels(X, [1, 0, 1, 0], 2)
        state = PartitionState.build(sample, [Monomial.from_indices(pos=[0])])
        refined = refine_with_literal(state, 0, Literal(1, False))
        assert refined.n_groups == state.n_groups
        assert partition_z(refined) == pytest.approx(partition_z(state), abs=TOL)

    def test_split_into_pure_groups_decreases(self, separable_sample):
        state = PartitionState.build(separable_sample, [Monomial()])
        refined = refine_with_literal(state, 0, Literal(0, True))
        assert partition_z(refined) < partition_z(state)
        assert partition_z(refined) == pytest.approx(0.0, abs=TOL)

    def test_refine_equals_rebuild(self, separable_sample):
        state = PartitionState.build(separable_sample, [Monomial.from_indices(pos=[1])])
        refined = refine_with_literal(state, 0, Literal(0, False))
        rebuilt = PartitionState.build(separable_sample, [Monomial.from_indices(pos=[1], neg=[0])])
        assert refined.monomials == rebuilt.monomials
        assert np.array_equal(refined.covers, rebuilt.covers)
        assert np.allclose(refined.tallies, rebuilt.tallies)

    def test_refine_equals_rebuild_random(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            sample, monomials = _random_instance(rng)
            index = int(rng.integers(0, len(monomials)))
            free = [var for var in range(sample.n) if not monomials[index].has_variable(var)]
            literal = Literal(int(rng.choice(free)), bool(rng.integers(0, 2)))
            refined = refine_with_literal(PartitionState.build(sample, monomials), index, literal)
            monomials[index] = monomials[index].with_literal(literal)
            rebuilt = PartitionState.build(sample, monomials)
            assert refined.monomials == rebuilt.monomials
            assert np.array_equal(refined.covers, rebuilt.covers)
            assert np.array_equal(refined.group_ids, rebuilt.group_ids)
            assert np.allclose(refined.tallies, rebuilt.tallies, atol=TOL)
            assert np.allclose(refined.totals, rebuilt.totals, atol=TOL)
            assert partition_z(refined) == pytest.approx(partition_z(rebuilt), abs=TOL)

    def test_refine_merges_into_existing_group(self):
        X = np.array([[1, 1], [1, 0], [0, 1], [0, 0]], dtype=bool)
        sample = Sample.from_labels(X, [0, 1, 0, 1], 2)
        monomials = [Monomial.from_indices(pos=[0]), Monomial.from_indices(pos=[1])]
        state = PartitionState.build(sample, monomials)
        refined = refine_with_literal(state, 0, Literal(1, True))
        assert state.n_groups == 4
        assert refined.n_groups == 3
        assert refined.group_ids[1] == refined.group_ids[3]

    def test_variable_already_used(self, separable_sample):
        state = PartitionState.build(separable_sample, [Monomial.from_indices(pos=[0])])
        with pytest.raises(PreconditionError):
            refine_with_literal(state, 0, Literal(0, False))


class TestGrowMonomial:
    def test_perfect_partition_returns_none(self, separable_sample):
        assert grow_monomial(separable_sample, [Monomial.from_indices(pos=[0])]) is None

    def test_single_example(self):
        sample = Sample.from_labels(np.array([[1, 0]], dtype=bool), [0], 2)
        assert grow_monomial(sample) is None

    def test_separable_picks_positive_literal_first(self, separable_sample):
        assert grow_monomial(separable_sample) == Monomial.from_indices(pos=[0])

    def test_xd6_first_monomial_avoids_irrelevant(self, xd6_clean):
        monomial = grow_monomial(xd6_clean)
        assert monomial is not None
        assert not monomial.has_variable(XD6_IRRELEVANT)


class TestGrowCommittee:
    def test_single_class_gives_empty(self, single_class_sample):
        assert grow_committee(single_class_sample) == []

    def test_empty_sample(self):
        sample = Sample(np.zeros((0, 2), dtype=bool), np.zeros((0, 2), dtype=bool))
        with pytest.raises(PreconditionError):
            grow_committee(sample)

    def test_separable_matches_best_single_literal(self, separable_sample):
        committee = grow_committee(separable_sample)
        best = min(
            partition_z(PartitionState.build(separable_sample, [Monomial().with_literal(Literal(var, positive))]))
            for var in range(separable_sample.n)
            for positive in (True, False)
        )
        assert committee == [Monomial.from_indices(pos=[0])]
        assert partition_z(PartitionState.build(separable_sample, committee)) == pytest.approx(best, abs=TOL)

    def test_xd6_reduces_z(self, xd6_clean):
        committee = grow_committee(xd6_clean)
        trivial = partition_z(PartitionState.build(xd6_clean, []))
        assert partition_z(PartitionState.build(xd6_clean, committee)) < trivial

    def test_trace_strictly_decreasing(self, xd6_clean):
        trace = []
        grow_committee(xd6_clean, trace=trace)
        values = [step.z for step in trace]
        assert values
        assert all(b < a - Z_DECREASE_EPS for a, b in zip(values, values[1:]))

    def test_caps_respected(self, xd6_clean):
        committee = grow_committee(xd6_clean, max_rules=2, max_literals=2)
        assert len(committee) <= 2
        assert all(monomial.literal_count() <= 2 for monomial in committee)
        assert len(set(committee)) == len(committee)
