import numpy as np
import pytest
from scipy.stats import rankdata

from segmeta.errors import LengthMismatch
from segmeta.stats import (
    compensated_sum,
    covariance,
    dense_ranks,
    mean,
    pairwise_differences,
    pearson,
    spearman,
    variance,
)


def test_compensated_sum_is_exact():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert compensated_sum(np.full(200_000, 0.1)) == pytest.approx(20_000.0, abs=1e-9)


def test_population_moments():
    assert mean([1, 2, 3, 4]) == 2.5
    assert variance([1, 2, 3, 4]) == 1.25
    assert covariance([1, 2, 3], [2, 4, 6]) == pytest.approx(4 / 3)


def test_pearson_basic():
    assert pearson([1, 2, 3], [2, 4, 6]).value == pytest.approx(1.0)
    assert pearson([1, 2, 3], [3, 2, 1]).value == pytest.approx(-1.0)
    result = pearson([1, 2, 3, 4], [1, 3, 2, 4])
    assert result.value == pytest.approx(0.8)
    assert result.n == 4


@pytest.mark.parametrize(
    "u, v",
    [([1.0], [2.0]), ([], []), ([3, 3, 3], [1, 2, 3]), ([1, 2, 3], [0, 0, 0])],
)
def test_pearson_undefined(u, v):
    result = pearson(u, v)
    assert not result.defined
    assert result.value_or(0.0) == 0.0


def test_pearson_length_mismatch():
    with pytest.raises(LengthMismatch):
        pearson([1, 2, 3], [1, 2])


def test_pearson_stays_in_range():
    rng = np.random.default_rng(3)
    for _ in range(200):
        u = rng.normal(size=5)
        value = pearson(u, 3.0 * u + 1.0).value
        assert -1.0 <= value <= 1.0
        assert value == pytest.approx(1.0)


def test_spearman_uses_average_ranks():
    u = [1.0, 2.0, 2.0, 3.0, 7.0]
    v = [0.5, 0.1, 0.9, 0.9, 2.0]
    expected = pearson(rankdata(u), rankdata(v)).value
    assert spearman(u, v).value == pytest.approx(expected)
    assert spearman([1, 2, 3, 4], [10, 20, 30, 400]).value == pytest.approx(1.0)


def test_pairwise_differences_order():
    np.testing.assert_array_equal(
        pairwise_differences([1.0, 2.0, 4.0]), [-1.0, -3.0, 1.0, -2.0, 3.0, 2.0]
    )
    assert pairwise_differences([1.0, 2.0, 4.0], include_self=True).size == 9


def test_pearson_of_differences_equals_pearson():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(2, 31))
        u = rng.normal(size=n)
        v = 0.5 * u + rng.normal(size=n)
        expected = pearson(u, v).value
        for include_self in (False, True):
            du = pairwise_differences(u, include_self)
            dv = pairwise_differences(v, include_self)
            assert abs(pearson(du, dv).value - expected) < 1e-10


def test_dense_ranks():
    assert dense_ranks([0.5, 0.9, 0.5, 0.1]) == [2, 1, 2, 3]
    assert dense_ranks([0.1234, 0.1231]) == [1, 1]
    assert dense_ranks([0.1234, 0.1231], decimals=None) == [1, 2]
    assert dense_ranks([]) == []


@pytest.mark.parametrize("n", [2, 3, 7, 30])
def test_pairwise_difference_moments(n):
    u = np.random.default_rng(n).normal(5.0, 3.0, n)
    differences = pairwise_differences(u, include_self=True)
    assert abs(mean(differences)) < 1e-12
    assert variance(differences) == pytest.approx(2 * variance(u), rel=1e-10)


def test_spearman_ignores_monotone_maps():
    rng = np.random.default_rng(11)
    u, v = rng.normal(size=40), rng.normal(size=40)
    assert spearman(np.exp(u), v ** 3).value == pytest.approx(spearman(u, v).value)
