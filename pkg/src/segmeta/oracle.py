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
Oracle metrics built from MQM annotations. The oracle of an error category
scores every translation with the penalties of that category only. How well a
statistic rewards the oracles of the heavier categories tells whether it
follows the error weighting of the human scores.

MQM scores are stored as negated penalty totals, so higher is better and an
unannotated translation scores 0.
"""

from __future__ import annotations

import contextlib
import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Tuple

import numpy as np

from pymqm import CategoryStats, MqmStore
from segmeta.errors import TooFewCategories, UnknownCell
from segmeta.matrix import PairedData, ScoreMatrix
from segmeta.metametrics import Statistic, score
from segmeta.stats import CorrelationResult, dense_ranks, spearman

# public objects
__all__ = [
    "AlignmentReport",
    "ALIGNMENT_TARGETS",
    "template_from_records",
    "total_human_scores",
    "oracle_metric",
    "alignment_report",
]

# logger
logger = logging.getLogger(__name__)

ALIGNMENT_TARGETS = ("importance", "avg_weight", "count")

_MIN_CATEGORIES = 3


def template_from_records(records) -> ScoreMatrix:
    """
    Axes spanned by the annotated cells, systems and segments in order of
    first appearance. Every cell of the template is present.
    """
    if not records:
        raise ValueError("cannot derive score axes from no records")
    systems = tuple(dict.fromkeys(record.system_id for record in records))
    segments = tuple(dict.fromkeys(record.segment_id for record in records))
    return ScoreMatrix(systems, segments, np.zeros((len(systems), len(segments))))


@contextlib.contextmanager
def _opened(records):
    if isinstance(records, MqmStore):
        yield records
    else:
        with MqmStore(records) as store:
            yield store


def _penalty_matrix(penalties, axes):
    rows = {system: i for i, system in enumerate(axes.systems)}
    columns = {segment: j for j, segment in enumerate(axes.segments)}
    values = np.zeros(axes.shape)
    for (segment, system), penalty in penalties.items():
        try:
            i, j = rows[system], columns[segment]
        except KeyError:
            raise UnknownCell(
                "MQM record for system {!r} on segment {!r} is outside the "
                "score axes".format(system, segment)
            )
        values[i, j] = 0.0 - penalty
    return ScoreMatrix(axes.systems, axes.segments, values)


def total_human_scores(records, axes: ScoreMatrix) -> ScoreMatrix:
    """
    Human scores from MQM annotations: every cell of ``axes`` scores minus the
    sum of its weights, 0 without records.

    :param records: MQM records or an open :class:`~pymqm.MqmStore`
    :raises UnknownCell: a record outside the axes of ``axes``
    """
    with _opened(records) as store:
        return _penalty_matrix(store.penalties(), axes)


def oracle_metric(records, category: str, axes: ScoreMatrix) -> ScoreMatrix:
    """
    Scores of the oracle of ``category``: minus the sum of the weights of the
    cell's records in that category. A category without records gives an
    all-zero matrix.
    """
    with _opened(records) as store:
        penalties = store.penalties(category)
    if not penalties:
        logger.warning("no MQM records of category %r, its oracle scores 0", category)
    return _penalty_matrix(penalties, axes)


@dataclasses.dataclass(frozen=True)
class AlignmentReport:
    """
    Oracle scores per category and statistic with the rank correlation of
    those scores with the category statistics.

    :param categories: per category statistics, sorted by category name
    :param scores: per statistic, one score per entry of ``categories``
    :param ranks: per statistic, dense rank of each oracle (1 is best)
    :param alignment: per statistic, Spearman correlation with every entry
        of :data:`ALIGNMENT_TARGETS`
    """

    categories: Tuple[CategoryStats, ...]
    statistics: Tuple[Statistic, ...]
    scores: Dict[Statistic, Tuple[float, ...]]
    ranks: Dict[Statistic, Tuple[int, ...]]
    alignment: Dict[Statistic, Dict[str, CorrelationResult]]

    def target(self, name) -> List[float]:
        return [float(getattr(stats, name)) for stats in self.categories]

    def target_ranks(self, name) -> List[int]:
        """Dense ranks of the categories by ``name``, 1 for the largest."""
        return dense_ranks(self.target(name))


def _score_oracle(oracle, human, statistics):
    d = PairedData(oracle, human)
    return [score(statistic, d).value for statistic in statistics]


def alignment_report(
    records, axes: ScoreMatrix, statistics: Sequence[Statistic], workers=None
) -> AlignmentReport:
    """
    Score the oracle of every category against the total human scores under
    each statistic and correlate the scores with category importance,
    average weight and count. The result does not depend on record order.

    :param records: MQM records or an open :class:`~pymqm.MqmStore`
    :param workers: threads scoring the oracles, default chosen by
        :class:`~concurrent.futures.ThreadPoolExecutor`
    :raises TooFewCategories: fewer than three categories
    """
    statistics = tuple(Statistic(statistic) for statistic in statistics)
    with _opened(records) as store:
        categories = tuple(store.category_stats())
        if len(categories) < _MIN_CATEGORIES:
            raise TooFewCategories(
                "alignment needs at least {} error categories, got {}".format(
                    _MIN_CATEGORIES, len(categories)
                )
            )
        human = total_human_scores(store, axes)
        oracles = [oracle_metric(store, stats.category, axes) for stats in categories]
    logger.info(
        "scoring %d oracles under %s",
        len(categories),
        ", ".join(str(statistic) for statistic in statistics),
    )
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="oracle") as pool:
        rows = list(pool.map(lambda oracle: _score_oracle(oracle, human, statistics), oracles))
    report = AlignmentReport(categories, statistics, {}, {}, {})
    for k, statistic in enumerate(statistics):
        values = [row[k] for row in rows]
        report.scores[statistic] = tuple(values)
        report.ranks[statistic] = tuple(dense_ranks(values))
        report.alignment[statistic] = {
            name: spearman(values, report.target(name)) for name in ALIGNMENT_TARGETS
        }
    return report
