# -*- coding:utf-8 -*-
#
# Copyright (C) 2025, The segmeta authors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Synthetic score matrices: an MQM-like ground truth and the sentinel metrics
used to exercise meta-evaluation statistics.

The ground truth mimics MQM totals. Every translation collects minor (-1) and
major (-5) errors at a rate depending on the system's quality and the
segment's difficulty; a small share are non-translations scoring -25. Scores
are clipped to [-100, 0].
"""

import logging

import numpy as np

from segmeta.matrix import ScoreMatrix

# public objects
__all__ = [
    "SENTINEL_SRC",
    "SENTINEL_REF",
    "SENTINEL_CAND",
    "SENTINEL_KINDS",
    "MINOR_WEIGHT",
    "MAJOR_WEIGHT",
    "NON_TRANSLATION_WEIGHT",
    "mqm_like_scores",
    "sentinel_scores",
]

# logger
logger = logging.getLogger(__name__)

MINOR_WEIGHT = 1.0
MAJOR_WEIGHT = 5.0
NON_TRANSLATION_WEIGHT = 25.0

_MINOR_RATE = 0.9
_MAJOR_RATE = 0.45
_NON_TRANSLATION_RATE = 0.01
_SCORE_FLOOR = -100.0

SENTINEL_SRC = "src"
SENTINEL_REF = "ref"
SENTINEL_CAND = "cand"
SENTINEL_KINDS = (SENTINEL_SRC, SENTINEL_REF, SENTINEL_CAND)

# standard deviation of the noise each sentinel puts on top of the human scores
_SENTINEL_NOISE = {SENTINEL_SRC: 4.0, SENTINEL_REF: 2.0, SENTINEL_CAND: 3.0}


def _identifiers(prefix, count):
    width = len(str(count - 1))
    return tuple("{}-{:0{}d}".format(prefix, i, width) for i in range(count))


def mqm_like_scores(systems, segments, seed):
    """
    Generate an MQM-like ground truth matrix.

    :param systems: number of systems, at least 1
    :param segments: number of segments, at least 1
    :param seed: seed of the generator, the output is a function of it
    :rtype: :class:`~segmeta.matrix.ScoreMatrix` without missing cells
    """
    if systems < 1 or segments < 1:
        raise ValueError("need at least one system and one segment")
    rng = np.random.default_rng(seed)
    quality = rng.uniform(0.4, 1.6, size=systems)
    difficulty = rng.gamma(2.0, 0.5, size=segments)
    rate = np.outer(quality, difficulty)
    minor = rng.poisson(_MINOR_RATE * rate)
    major = rng.poisson(_MAJOR_RATE * rate)
    scores = -(MINOR_WEIGHT * minor + MAJOR_WEIGHT * major)
    non_translation = rng.random(rate.shape) < _NON_TRANSLATION_RATE
    scores[non_translation] = -NON_TRANSLATION_WEIGHT
    scores = np.clip(scores, _SCORE_FLOOR, 0.0)
    logger.debug(
        "generated %dx%d MQM-like scores, mean %.3f", systems, segments, scores.mean()
    )
    return ScoreMatrix(
        _identifiers("sys", systems), _identifiers("seg", segments), scores
    )


def sentinel_scores(y, kind, seed):
    """
    Scores of a sentinel metric for the human scores ``y``.

    ``src`` and ``ref`` sentinels only see the segment, so they give every
    translation of a segment the same score (the segment's mean human score
    plus noise). The ``cand`` sentinel sees each translation and returns a
    noisy copy of its human score. Missing cells stay missing.
    """
    if kind not in SENTINEL_KINDS:
        raise ValueError(
            "unknown sentinel {!r}, choose from {}".format(kind, ", ".join(SENTINEL_KINDS))
        )
    rng = np.random.default_rng(seed)
    present = y.present
    sigma = _SENTINEL_NOISE[kind]
    if kind == SENTINEL_CAND:
        values = y.values + rng.normal(0.0, sigma, size=y.shape)
    else:
        counts = present.sum(axis=0)
        totals = np.where(present, y.values, 0.0).sum(axis=0)
        means = np.divide(
            totals, counts, out=np.zeros_like(totals), where=counts > 0
        )
        per_segment = means + rng.normal(0.0, sigma, size=means.size)
        values = np.broadcast_to(per_segment, y.shape).copy()
    values[~present] = np.nan
    return y.with_values(values)
