import numpy as np
import pytest

from segmeta.errors import NoPairs, NoUsableSegments, TooFewCells
from segmeta.matrix import PairedData, ScoreMatrix
from segmeta.metametrics import (
    ALL_STATISTICS,
    Statistic,
    acc_eq,
    build_pairwise_diffs,
    calibrate_acc_eq,
    global_pearson,
    parse_statistics,
    pdp,
    score,
    score_all,
    segmentwise_pearson,
)
from segmeta.stats import pearson


def _random_pair(rng, systems, segments, integers=False):
    axes = (
        tuple("sys{}".format(i) for i in range(systems)),
        tuple("seg{}".format(j) for j in range(segments)),
    )
    if integers:
        x = rng.integers(-5, 6, size=(systems, segments)).astype(float)
        y = rng.integers(-3, 4, size=(systems, segments)).astype(float)
    else:
        y = rng.normal(size=(systems, segments))
        x = y + rng.normal(size=(systems, segments))
    return PairedData(ScoreMatrix(*axes, x), ScoreMatrix(*axes, y))


def test_self_agreement(matrix):
    y = matrix([[-1, -5, 0], [0, -2, -3], [-6, -2, -1], [-1, 0, -25]])
    d = PairedData(y, y)
    for statistic in (Statistic.GLOBAL_PEARSON, Statistic.SEGWISE_PEARSON, Statistic.PDP):
        assert score(statistic, d).value == pytest.approx(1.0)
    result = score(Statistic.ACC_EQ, d)
    assert result.value == 1.0
    assert result.detail["epsilon"] == 0.0


def test_constant_within_segment_metric(matrix):
    y = matrix([[-1, -5, 0], [0, -2, -3], [-6, -2, -1]])
    x = matrix([[-2, -3, 4], [-2, -3, 4], [-2, -3, 4]])
    d = PairedData(x, y)
    result = pdp(d)
    assert result.value == 0.0
    assert result.detail["undefined"]
    segwise = segmentwise_pearson(d)
    assert segwise.value == 0.0
    assert segwise.detail["undefined"] == 3


def test_single_segment_collapse():
    rng = np.random.default_rng(17)
    for _ in range(200):
        d = _random_pair(rng, int(rng.integers(2, 21)), 1)
        g = global_pearson(d).value
        assert abs(pdp(d).value - g) < 1e-10
        assert abs(segmentwise_pearson(d).value - g) < 1e-10


def test_pdp_affine_invariance():
    rng = np.random.default_rng(5)
    d = _random_pair(rng, 6, 10, integers=True)
    reference = pdp(d).value
    for a, b in ((2.0, 0.0), (0.5, 3.0), (4.0, -8.0)):
        scaled = PairedData(d.x.with_values(a * d.x.values + b), d.y)
        assert pdp(scaled).value == pytest.approx(reference, abs=1e-12)


def test_pdp_ignores_segment_offsets():
    rng = np.random.default_rng(8)
    d = _random_pair(rng, 5, 12, integers=True)
    offsets = rng.integers(-50, 50, size=12)[np.newaxis, :]
    shifted = PairedData(d.x.with_values(d.x.values + offsets), d.y)
    assert pdp(shifted).value == pytest.approx(pdp(d).value, abs=1e-12)
    assert segmentwise_pearson(shifted).value == pytest.approx(
        segmentwise_pearson(d).value, abs=1e-12
    )


def test_segmentwise_skips_and_zeroes(matrix):
    x = matrix([[1, 5, 7], [2, 5, None], [3, 5, None]])
    y = matrix([[1, 1, 2], [2, 2, 3], [3, 3, 4]])
    result = segmentwise_pearson(PairedData(x, y))
    assert result.value == pytest.approx(0.5)
    assert result.detail == {"segments": 2, "skipped": 1, "undefined": 1}


def test_missing_cells_are_skipped_pairwise(matrix):
    x = matrix([[1, None], [2, 4], [3, 6]])
    y = matrix([[1, 9], [2, None], [3, 3]])
    d = PairedData(x, y)
    assert global_pearson(d).detail["cells"] == 4
    diffs = build_pairwise_diffs(d)
    assert len(diffs) == 6
    assert set(diffs.segment_ids) == {"seg0"}


def test_pairwise_diffs_layout(matrix):
    x = matrix([[1, 10], [2, 20], [4, 40]])
    y = matrix([[0, 0], [1, 1], [3, 3]])
    diffs = build_pairwise_diffs(PairedData(x, y))
    assert len(diffs) == 12
    assert diffs.sys_pairs[:6] == [
        ("sys0", "sys1"),
        ("sys0", "sys2"),
        ("sys1", "sys0"),
        ("sys1", "sys2"),
        ("sys2", "sys0"),
        ("sys2", "sys1"),
    ]
    np.testing.assert_array_equal(diffs.dx[:6], [-1, -3, 1, -2, 3, 2])
    one = diffs.one_direction()
    assert len(one) == 6
    assert all(a < b for a, b in one.sys_pairs)


def test_acc_eq_toy(matrix):
    y = matrix([[0], [0], [-1]])
    x = matrix([[0.1], [0.0], [-1.0]])
    d = PairedData(x, y)
    assert acc_eq(d, 0.0).value == pytest.approx(2 / 3)
    assert acc_eq(d, 0.1).value == 1.0
    calibrated = calibrate_acc_eq(d)
    assert calibrated.value == 1.0
    assert calibrated.detail["epsilon"] == 0.1
    assert calibrated.detail["human_ties"] == 1
    assert calibrated.detail["pairs"] == 3


def test_acc_eq_rejects_negative_epsilon(matrix):
    y = matrix([[0], [1]])
    with pytest.raises(ValueError):
        acc_eq(PairedData(y, y), -0.5)


def test_acc_eq_calibration_is_exhaustive():
    rng = np.random.default_rng(99)
    for _ in range(100):
        d = _random_pair(rng, 4, 6, integers=True)
        diffs = build_pairwise_diffs(d, mirrored=False)
        dx, dy = diffs.dx, diffs.dy
        grid = np.linspace(0.0, np.abs(dx).max() + 1.0, 10_001)
        tie = dy == 0
        predicted_tie = np.abs(dx)[np.newaxis, :] <= grid[:, np.newaxis]
        concordant = np.sign(dx) == np.sign(dy)
        correct = (tie & predicted_tie) | (~tie & ~predicted_tie & concordant)
        brute_force = int(correct.sum(axis=1).max()) / dx.size
        calibrated = calibrate_acc_eq(d)
        assert calibrated.value == brute_force
        assert acc_eq(d, calibrated.detail["epsilon"]).value == calibrated.value


def test_degenerate_inputs(matrix):
    one_system = matrix([[1, 2, 3]])
    d = PairedData(one_system, one_system)
    with pytest.raises(NoUsableSegments):
        segmentwise_pearson(d)
    with pytest.raises(NoPairs):
        calibrate_acc_eq(d)
    assert pdp(d).value == 0.0
    with pytest.raises(TooFewCells):
        global_pearson(PairedData(matrix([[1.0]]), matrix([[2.0]])))


def test_score_all_and_parse():
    assert parse_statistics("pdp, acceq,pdp") == [Statistic.PDP, Statistic.ACC_EQ]
    with pytest.raises(ValueError):
        parse_statistics("pdp,kendall")
    rng = np.random.default_rng(1)
    results = score_all(_random_pair(rng, 4, 5), ALL_STATISTICS)
    assert list(results) == list(ALL_STATISTICS)
    assert all(result.statistic is statistic for statistic, result in results.items())


@pytest.mark.parametrize(
    "a, b", [(2.0, 0.0), (2.0, 1.0), (1000.0, 0.5), (0.3, 0.0), (0.3, -7.0), (0.1, 0.0)]
)
def test_calibrated_acc_eq_affine_invariance(a, b):
    rng = np.random.default_rng(3)
    for _ in range(100):
        d = _random_pair(rng, 4, 6, integers=True)
        reference = calibrate_acc_eq(d)
        scaled = calibrate_acc_eq(PairedData(d.x.with_values(a * d.x.values + b), d.y))
        assert scaled.value == reference.value
        assert scaled.detail["epsilon"] == pytest.approx(a * reference.detail["epsilon"])


def test_acc_eq_merges_rounding_noise(matrix):
    # 0.3 on a human tie, 0.1 + 0.2 on a human difference
    x = matrix([[0.0, 0.0], [0.3, 0.1 + 0.2]])
    y = matrix([[0.0, 0.0], [0.0, 1.0]])
    d = PairedData(x, y)
    assert len(set(np.abs(build_pairwise_diffs(d, mirrored=False).dx))) == 2
    calibrated = calibrate_acc_eq(d)
    assert calibrated.value == 0.5
    assert calibrated.detail["epsilon"] == 0.0
    assert acc_eq(d, 0.3).value == 0.5


def test_antisymmetry():
    rng = np.random.default_rng(21)
    d = _random_pair(rng, 5, 8)
    flipped = PairedData(d.x.with_values(-d.x.values), d.y)
    for statistic in (pdp, global_pearson, segmentwise_pearson):
        assert statistic(flipped).value == pytest.approx(-statistic(d).value, abs=1e-12)
    assert acc_eq(flipped, 0.0).value == pytest.approx(1.0 - acc_eq(d, 0.0).value)


def test_self_pairs_do_not_move_pdp():
    rng = np.random.default_rng(6)
    d = _random_pair(rng, 6, 9)
    diffs = build_pairwise_diffs(d)
    assert abs(diffs.dx.mean()) < 1e-12
    zeros = np.zeros(int(d.joint.sum()))
    with_self = pearson(np.concatenate([diffs.dx, zeros]), np.concatenate([diffs.dy, zeros]))
    assert abs(with_self.value - pdp(d).value) < 1e-10


def test_global_pearson_follows_segment_offsets(matrix):
    x = matrix([[0, 0], [1, 1]])
    y = matrix([[0, 10], [1, 11]])
    d = PairedData(x, y)
    assert global_pearson(d).value == pytest.approx(1 / 101 ** 0.5)
    assert pdp(d).value == pytest.approx(1.0)
    aligned = global_pearson(PairedData(x, x)).value
    assert aligned - global_pearson(d).value > 0.01
