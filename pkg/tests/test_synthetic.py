import numpy as np
import pytest

from segmeta.matrix import PairedData
from segmeta.metametrics import pdp, segmentwise_pearson
from segmeta.synthetic import mqm_like_scores, sentinel_scores


def test_mqm_like_scores_shape_and_ids():
    scores = mqm_like_scores(20, 500, seed=1)
    assert scores.shape == (20, 500)
    assert scores.systems[0] == "sys-00"
    assert scores.segments[-1] == "seg-499"
    assert scores.present.all()


def test_mqm_like_scores_range(synthetic_human):
    values = synthetic_human.values
    assert values.min() >= -100.0
    assert values.max() <= 0.0
    np.testing.assert_array_equal(values, np.round(values))
    assert (values >= -25.0).mean() >= 0.9


def test_mqm_like_scores_deterministic():
    a = mqm_like_scores(3, 4, seed=9)
    b = mqm_like_scores(3, 4, seed=9)
    np.testing.assert_array_equal(a.values, b.values)
    with pytest.raises(ValueError):
        mqm_like_scores(0, 4, seed=9)


@pytest.mark.parametrize("kind", ["src", "ref"])
def test_segment_sentinels_score_zero(synthetic_human, kind):
    sentinel = sentinel_scores(synthetic_human, kind, seed=2)
    assert (sentinel.values == sentinel.values[0]).all()
    d = PairedData(sentinel, synthetic_human)
    assert pdp(d).value == 0.0
    assert segmentwise_pearson(d).value == 0.0


def test_candidate_sentinel_varies(synthetic_human):
    sentinel = sentinel_scores(synthetic_human, "cand", seed=2)
    assert pdp(PairedData(sentinel, synthetic_human)).value > 0.3


def test_sentinel_keeps_missing(matrix):
    y = matrix([[-1, None], [-5, -2], [0, -3]])
    for kind in ("src", "ref", "cand"):
        np.testing.assert_array_equal(sentinel_scores(y, kind, seed=0).present, y.present)
    with pytest.raises(ValueError):
        sentinel_scores(y, "hyp", seed=0)
