import math

import numpy as np
import pytest

from xisis import DegenerateInput, InvalidInput, dcor_score, pearson_score, point_biserial
from xisis.baselines import batch_dcor_scores


def dcov2_triple_sum(x, y):
    """Definitional V-statistic via the S1 + S2 - 2*S3 triple sums."""
    n = len(x)
    ax = np.abs(np.subtract.outer(x, x))
    ay = np.abs(np.subtract.outer(y, y))
    s1 = (ax * ay).sum() / n**2
    s2 = (ax.sum() / n**2) * (ay.sum() / n**2)
    s3 = sum(
        abs(x[i] - x[j]) * abs(y[i] - y[k])
        for i in range(n)
        for j in range(n)
        for k in range(n)
    ) / n**3
    return s1 + s2 - 2 * s3


def dcor_triple_sum(x, y):
    return math.sqrt(
        dcov2_triple_sum(x, y) / math.sqrt(dcov2_triple_sum(x, x) * dcov2_triple_sum(y, y))
    )


class TestPearson:
    def test_exact_linear(self):
        assert pearson_score([1, 2, 3], [2, 4, 6]) == 1.0

    def test_absolute_value(self):
        assert pearson_score([1, 2, 3], [6, 4, 2]) == 1.0

    def test_even_function(self):
        assert pearson_score([-1, 0, 1], [1, 0, 1]) == pytest.approx(0.0, abs=1e-15)

    def test_affine_invariance(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=60)
        y = rng.normal(size=60)
        base = pearson_score(x, y)
        assert pearson_score(2.0 * x + 5.0, y) == pytest.approx(base, abs=1e-12)
        assert pearson_score(x, 0.1 * y - 3.0) == pytest.approx(base, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            pearson_score([1, 1, 1], [1, 2, 3])
        with pytest.raises(DegenerateInput):
            pearson_score([1, 2, 3], [4, 4, 4])


class TestDcor:
    def test_proportional_distances(self):
        assert dcor_score([1, 2, 3, 4], [2, 4, 6, 8]) == 1.0

    def test_two_points(self):
        assert dcor_score([1, 2], [5, 9]) == 1.0

    def test_six_point_parabola_vs_triple_sum(self):
        x = np.array([-2.0, -1.0, 0.0, 1.0, 2.0, 3.0])
        y = x**2
        val = dcor_score(x, y)
        assert val == pytest.approx(0.70445449042342467, abs=1e-12)
        assert val == pytest.approx(dcor_triple_sum(x, y), abs=1e-12)

    def test_matches_triple_sum_on_random_samples(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            n = int(rng.integers(3, 12))
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            assert dcor_score(x, y) == pytest.approx(dcor_triple_sum(x, y), abs=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=40)
        y = rng.normal(size=40)
        assert dcor_score(x, y) == dcor_score(y, x)

    def test_range(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            x = rng.normal(size=20)
            y = rng.normal(size=20)
            assert 0.0 <= dcor_score(x, y) <= 1.0

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            dcor_score([2, 2, 2], [1, 2, 3])

    def test_batch_matches_scalar_across_block_edges(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(30, 7))
        y = rng.normal(size=30)
        batch = batch_dcor_scores(X, y, block=3)
        for k in range(7):
            assert batch[k] == pytest.approx(dcor_score(X[:, k], y), abs=1e-12)


class TestPointBiserial:
    def test_two_point_sample(self):
        assert point_biserial([-1.0, 1.0], [0.0, 1.0]) == pytest.approx(1.0, abs=1e-15)

    def test_equal_class_means(self):
        assert point_biserial([1, 1, 2, 2], [0, 1, 0, 1]) == 0.0

    def test_errors(self):
        with pytest.raises(InvalidInput):
            point_biserial([1.0, 2.0, 3.0], [0.0, 1.0, 2.0])
        with pytest.raises(InvalidInput):
            point_biserial([1.0, 2.0], [0.0, 0.0])
        with pytest.raises(DegenerateInput):
            point_biserial([3.0, 3.0], [0.0, 1.0])

    def test_range_and_pearson_equivalence(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(4, 50))
            x = rng.normal(size=n)
            y = np.zeros(n)
            y[rng.permutation(n)[: int(rng.integers(1, n))]] = 1.0
            if y.sum() in (0, n):
                continue
            r_pb = point_biserial(x, y)
            assert -1.0 <= r_pb <= 1.0
            assert abs(r_pb) == pytest.approx(pearson_score(x, y), abs=1e-10)

    def test_agreement_with_pearson_and_dcor_on_affine_data(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        y = 2.0 * x - 1.0
        assert pearson_score(x, y) == 1.0
        assert dcor_score(x, y) == pytest.approx(1.0, abs=1e-12)
