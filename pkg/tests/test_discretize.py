import numpy as np
import pytest

from core.discretize import best_cut, class_entropy, discretize, mdl_accepts
from core.errors import DimensionError


class TestEntropy:
    def test_pure(self):
        assert class_entropy(np.array([5, 0])) == 0.0

    def test_balanced(self):
        assert class_entropy(np.array([3, 3])) == pytest.approx(1.0)

    def test_empty(self):
        assert class_entropy(np.array([0, 0])) == 0.0


class TestBestCut:
    def test_clean_boundary(self):
        values = np.arange(10, dtype=float)
        labels = np.array([0] * 4 + [1] * 6)
        position, split_entropy, left, right = best_cut(values, labels)
        assert position == 3
        assert split_entropy == pytest.approx(0.0)
        assert left.tolist() == [4, 0]
        assert right.tolist() == [0, 6]

    def test_constant_values(self):
        assert best_cut(np.ones(5), np.array([0, 1, 0, 1, 0])) is None

    def test_tie_goes_left(self):
        values = np.arange(120, dtype=float)
        labels = np.array([0] * 40 + [1] * 40 + [0] * 40)
        position, *_ = best_cut(values, labels)
        assert position == 39


class TestMdl:
    def test_clean_split_accepted(self):
        total, left, right = np.array([10.0, 10.0]), np.array([10.0, 0.0]), np.array([0.0, 10.0])
        assert mdl_accepts(total, left, right, 0.0)

    def test_no_gain_rejected(self):
        total, left, right = np.array([10.0, 10.0]), np.array([5.0, 5.0]), np.array([5.0, 5.0])
        assert not mdl_accepts(total, left, right, 1.0)


class TestDiscretize:
    def test_single_threshold(self):
        assert discretize(np.arange(20), [0] * 10 + [1] * 10) == [9.5]

    def test_two_thresholds(self):
        labels = [0] * 40 + [1] * 40 + [0] * 40
        assert discretize(np.arange(120), labels) == [39.5, 79.5]

    def test_max_thresholds(self):
        labels = [0] * 40 + [1] * 40 + [0] * 40
        assert discretize(np.arange(120), labels, max_thresholds=1) == [39.5]

    def test_noise_gives_nothing(self):
        assert discretize(np.arange(20), [i % 2 for i in range(20)]) == []

    def test_unsorted_input(self):
        values = np.array([15, 3, 12, 1, 18, 7, 10, 0, 19, 5, 14, 2, 17, 8, 11, 4, 16, 9, 13, 6])
        labels = (values >= 10).astype(int)
        assert discretize(values, labels) == [9.5]

    def test_constant_column(self):
        assert discretize(np.full(8, 3.0), [0, 1] * 4) == []

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            discretize([1.0, 2.0, 3.0], [0, 1])
