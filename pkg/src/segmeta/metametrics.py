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
Segment-level meta-evaluation statistics comparing metric scores with human
scores:

- Global Pearson: Pearson's correlation over all jointly present cells.
- Segment-Wise Pearson: unweighted mean of the per-segment correlations.
- acc_eq: pairwise ranking accuracy which also credits correctly predicted
  ties, with a calibrated tie threshold on the metric differences.
- Pairwise Difference Pearson (PDP): Pearson's correlation over the
  intra-segment pairwise differences of both matrices.

Undefined correlations are reported as 0 and flagged with
``detail["undefined"]``.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import logging
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np

from segmeta.errors import NoPairs, NoUsableSegments, TooFewCells
from segmeta.matrix import PairedData, joint_segments
from segmeta.stats import compensated_sum, pearson

# public objects
__all__ = [
    "Statistic",
    "MetaScore",
    "PairwiseDiffSet",
    "global_pearson",
    "segmentwise_pearson",
    "build_pairwise_diffs",
    "pdp",
    "acc_eq",
    "calibrate_acc_eq",
    "score",
    "score_all",
    "parse_statistics",
    "ALL_STATISTICS",
    "DIFF_TOLERANCE",
]

# logger
logger = logging.getLogger(__name__)

# metric differences closer than this, relative to the largest metric score,
# are the same difference
DIFF_TOLERANCE = 1e-9


class Statistic(str, enum.Enum):
    GLOBAL_PEARSON = "global"
    SEGWISE_PEARSON = "segwise"
    ACC_EQ = "acceq"
    PDP = "pdp"

    @property
    def label(self):
        return _LABELS[self]

    def __str__(self):
        return self.value


_LABELS = {
    Statistic.GLOBAL_PEARSON: "Global Pearson",
    Statistic.SEGWISE_PEARSON: "Segment-Wise Pearson",
    Statistic.ACC_EQ: "acc_eq",
    Statistic.PDP: "PDP",
}

ALL_STATISTICS = (
    Statistic.SEGWISE_PEARSON,
    Statistic.GLOBAL_PEARSON,
    Statistic.ACC_EQ,
    Statistic.PDP,
)


def parse_statistics(text: str) -> List[Statistic]:
    """
    Parse a comma separated statistic list such as ``"pdp,acceq"``.
    Duplicates are dropped, order is kept.
    """
    names = [name.strip().lower() for name in text.split(",") if name.strip()]
    if not names:
        raise ValueError("no statistic selected")
    try:
        return list(dict.fromkeys(Statistic(name) for name in names))
    except ValueError:
        raise ValueError(
            "unknown statistic in {!r}, choose from {}".format(
                text, ",".join(s.value for s in Statistic)
            )
        )


@dataclasses.dataclass(frozen=True)
class MetaScore:
    """
    The value of one statistic for one metric.

    :param detail: statistic specific metadata, e.g. the calibrated epsilon
        of acc_eq or the number of skipped segments of Segment-Wise Pearson
    """

    statistic: Statistic
    value: float
    detail: Dict[str, Any] = dataclasses.field(default_factory=dict)


@dataclasses.dataclass(frozen=True, eq=False)
class PairwiseDiffSet:
    """
    Intra-segment pairwise differences of metric (``dx``) and human (``dy``)
    scores. Entry ``k`` compares system ``first[k]`` with system
    ``second[k]`` on segment ``segment_index[k]``; indices refer to
    :attr:`systems` and :attr:`segments`.
    """

    systems: Tuple[str, ...]
    segments: Tuple[str, ...]
    segment_index: np.ndarray
    first: np.ndarray
    second: np.ndarray
    dx: np.ndarray
    dy: np.ndarray

    def __len__(self):
        return self.dx.size

    @property
    def segment_ids(self) -> List[str]:
        return [self.segments[j] for j in self.segment_index]

    @property
    def sys_pairs(self) -> List[Tuple[str, str]]:
        return [
            (self.systems[a], self.systems[b]) for a, b in zip(self.first, self.second)
        ]

    def one_direction(self) -> "PairwiseDiffSet":
        """
        Keep one entry per unordered system pair. The result is not a PDP
        input: its differences no longer average to zero, so their Pearson
        correlation differs from the mirrored one.
        """
        keep = self.first < self.second
        return PairwiseDiffSet(
            self.systems,
            self.segments,
            self.segment_index[keep],
            self.first[keep],
            self.second[keep],
            self.dx[keep],
            self.dy[keep],
        )


@functools.lru_cache(maxsize=None)
def _pair_indices(k, mirrored):
    if mirrored:
        return np.nonzero(~np.eye(k, dtype=bool))
    return np.triu_indices(k, 1)


def build_pairwise_diffs(d: PairedData, mirrored=True) -> PairwiseDiffSet:
    """
    Collect the intra-segment pairwise differences of ``d``.

    :param mirrored: emit both ``(a, b)`` and ``(b, a)`` for every unordered
        system pair; otherwise only ``a < b`` in matrix order
    :rtype: :class:`PairwiseDiffSet` ordered by segment, then row-major by
        system pair
    """
    parts = []
    for j, rows, x, y in joint_segments(d):
        if rows.size < 2:
            continue
        i, k = _pair_indices(rows.size, mirrored)
        parts.append((np.full(i.size, j), rows[i], rows[k], x[i] - x[k], y[i] - y[k]))
    if not parts:
        empty_index = np.empty(0, dtype=np.intp)
        empty = np.empty(0, dtype=np.float64)
        return PairwiseDiffSet(
            d.systems, d.segments, empty_index, empty_index, empty_index, empty, empty
        )
    columns = [np.concatenate(column) for column in zip(*parts)]
    return PairwiseDiffSet(d.systems, d.segments, *columns)


def global_pearson(d: PairedData) -> MetaScore:
    """
    Pearson's correlation over all jointly present cells.

    :raises TooFewCells: fewer than two jointly present cells
    """
    joint = d.joint
    cells = int(joint.sum())
    if cells < 2:
        raise TooFewCells(
            "Global Pearson needs at least 2 jointly present cells, got {}".format(
                cells
            )
        )
    result = pearson(d.x.values[joint], d.y.values[joint])
    return MetaScore(
        Statistic.GLOBAL_PEARSON,
        result.value_or(0.0),
        {"cells": cells, "undefined": not result.defined},
    )


def segmentwise_pearson(d: PairedData) -> MetaScore:
    """
    Unweighted mean of the per-segment Pearson correlations. Segments with
    fewer than two jointly present systems are skipped; a segment whose
    correlation is undefined contributes 0.

    :raises NoUsableSegments: every segment was skipped
    """
    values = []
    skipped = 0
    undefined = 0
    for _, rows, x, y in joint_segments(d):
        if rows.size < 2:
            skipped += 1
            continue
        result = pearson(x, y)
        if not result.defined:
            undefined += 1
        values.append(result.value_or(0.0))
    if not values:
        raise NoUsableSegments(
            "Segment-Wise Pearson needs a segment with at least 2 jointly "
            "present systems"
        )
    if skipped:
        logger.debug("segment-wise pearson skipped %d segment(s)", skipped)
    return MetaScore(
        Statistic.SEGWISE_PEARSON,
        compensated_sum(values) / len(values),
        {"segments": len(values), "skipped": skipped, "undefined": undefined},
    )


def pdp(d: PairedData) -> MetaScore:
    """
    Pairwise Difference Pearson: Global Pearson applied to the intra-segment
    pairwise differences. Empty or constant differences give 0.
    """
    diffs = build_pairwise_diffs(d)
    result = pearson(diffs.dx, diffs.dy)
    if not result.defined:
        logger.debug("pdp undefined on %d differences, reporting 0", len(diffs))
    return MetaScore(
        Statistic.PDP,
        result.value_or(0.0),
        {"pairs": len(diffs), "undefined": not result.defined},
    )


def _unordered(d):
    diffs = build_pairwise_diffs(d, mirrored=False)
    if not len(diffs):
        raise NoPairs("acc_eq needs at least one intra-segment system pair")
    return diffs


def _merge_close(values, tolerance):
    # values chained by gaps within tolerance collapse onto their smallest member
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    starts = np.concatenate(([True], np.diff(ordered) > tolerance))
    merged = ordered[starts][np.cumsum(starts) - 1]
    merged[merged <= tolerance] = 0.0
    out = np.empty_like(values)
    out[order] = merged
    return out


def _resolved_dx(d, diffs):
    """
    ``|dx|`` and ``sign(dx)`` with rounding noise removed: differences within
    :data:`DIFF_TOLERANCE` times the largest metric score of each other are
    equal, and those within it of zero are ties.
    """
    abs_dx = np.abs(diffs.dx)
    scale = float(np.abs(d.x.values[d.joint]).max(initial=0.0))
    tolerance = DIFF_TOLERANCE * scale
    if abs_dx.size and tolerance > 0:
        abs_dx = _merge_close(abs_dx, tolerance)
    return abs_dx, np.where(abs_dx == 0, 0.0, np.sign(diffs.dx))


def acc_eq(d: PairedData, epsilon: float) -> MetaScore:
    """
    Pairwise accuracy with tie credit. An unordered system pair is correct
    when the human scores tie and ``|dx| <= epsilon``, or when they differ,
    ``|dx| > epsilon`` and the metric orders the pair like the humans do.

    :raises NoPairs: no intra-segment system pair
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    diffs = _unordered(d)
    correct = _correct(*_resolved_dx(d, diffs), diffs.dy, epsilon)
    return MetaScore(
        Statistic.ACC_EQ,
        int(correct.sum()) / len(diffs),
        {
            "epsilon": float(epsilon),
            "pairs": len(diffs),
            "correct": int(correct.sum()),
            "human_ties": int((diffs.dy == 0).sum()),
        },
    )


def _correct(abs_dx, sign_dx, dy, epsilon):
    tie = dy == 0
    predicted_tie = abs_dx <= epsilon
    concordant = sign_dx == np.sign(dy)
    return (tie & predicted_tie) | (~tie & ~predicted_tie & concordant)


def _candidates(abs_dx):
    distinct = np.unique(abs_dx)
    midpoints = (distinct[:-1] + distinct[1:]) / 2
    return np.unique(np.concatenate(([0.0], distinct, midpoints)))


def calibrate_acc_eq(d: PairedData) -> MetaScore:
    """
    acc_eq at the epsilon maximizing it. The objective is piecewise constant
    in epsilon, so searching 0, every distinct ``|dx|`` and the midpoints
    between them is exhaustive. Ties go to the smallest epsilon. Differences
    equal up to rounding count as one value, so the result does not move
    under ``X -> aX + b``.

    :raises NoPairs: no intra-segment system pair
    """
    diffs = _unordered(d)
    abs_dx, sign_dx = _resolved_dx(d, diffs)
    tie = diffs.dy == 0
    candidates = _candidates(abs_dx)

    tie_abs = np.sort(abs_dx[tie])
    concordant_abs = np.sort(abs_dx[~tie & (sign_dx == np.sign(diffs.dy))])
    correct = np.searchsorted(tie_abs, candidates, side="right") + (
        concordant_abs.size - np.searchsorted(concordant_abs, candidates, side="right")
    )
    best = int(np.argmax(correct))
    epsilon = float(candidates[best])
    logger.debug(
        "calibrated epsilon %r over %d candidates (%d of %d pairs correct)",
        epsilon,
        candidates.size,
        correct[best],
        len(diffs),
    )
    return MetaScore(
        Statistic.ACC_EQ,
        int(correct[best]) / len(diffs),
        {
            "epsilon": epsilon,
            "pairs": len(diffs),
            "correct": int(correct[best]),
            "human_ties": int(tie.sum()),
            "calibrated": True,
        },
    )


_SCORERS = {
    Statistic.GLOBAL_PEARSON: global_pearson,
    Statistic.SEGWISE_PEARSON: segmentwise_pearson,
    Statistic.ACC_EQ: calibrate_acc_eq,
    Statistic.PDP: pdp,
}


def score(statistic: Statistic, d: PairedData) -> MetaScore:
    """Compute ``statistic`` on ``d``; acc_eq is tie calibrated."""
    return _SCORERS[Statistic(statistic)](d)


def score_all(d: PairedData, statistics: Iterable[Statistic]) -> Dict[Statistic, MetaScore]:
    return {Statistic(statistic): score(statistic, d) for statistic in statistics}
