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
Ranking tables and oracle reports as TSV or JSON.

Values are printed with :data:`REPORT_PRECISION` decimals. Ranks are dense
(equal values share a rank, the next value takes the next rank) and are
computed on the values rounded to the printed precision, so two metrics tie
exactly when their printed scores are equal. Every report starts with the run
configuration: ``#`` lines in TSV, a ``config`` object in JSON.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from segmeta.metametrics import MetaScore, Statistic
from segmeta.oracle import ALIGNMENT_TARGETS, AlignmentReport
from segmeta.stats import RANK_PRECISION, CorrelationResult, spearman
from segmeta.stats import dense_ranks as _dense_ranks

# public objects
__all__ = [
    "REPORT_PRECISION",
    "MIN_AGREEMENT_METRICS",
    "RankingTable",
    "dense_ranks",
    "format_value",
    "build_ranking",
    "ranking_agreement",
    "write_ranking",
    "write_oracle_report",
]

# logger
logger = logging.getLogger(__name__)

REPORT_PRECISION = RANK_PRECISION
MIN_AGREEMENT_METRICS = 3

_NA = "NA"
_FORMATS = ("tsv", "json")
_CATEGORY_COLUMNS = ("importance", "count", "avg_weight")


def format_value(value: Optional[float]) -> str:
    """Fixed precision text of ``value``; ``NA`` for ``None``, no ``-0.000``."""
    if value is None:
        return _NA
    text = "{:.{}f}".format(value, REPORT_PRECISION)
    if float(text) == 0.0:
        text = "{:.{}f}".format(0.0, REPORT_PRECISION)
    return text


def _rounded(value):
    return float(format_value(value))


def dense_ranks(values: Sequence[float]) -> List[int]:
    """Dense ranks at report precision, 1 for the highest value."""
    return _dense_ranks(values, REPORT_PRECISION)


@dataclasses.dataclass(frozen=True)
class RankingTable:
    """
    Scores and ranks of several metrics under several statistics, rows in
    display order.
    """

    metrics: Tuple[str, ...]
    statistics: Tuple[Statistic, ...]
    scores: Dict[str, Dict[Statistic, MetaScore]]
    ranks: Dict[str, Dict[Statistic, int]]

    def column(self, statistic) -> List[float]:
        return [self.scores[metric][statistic].value for metric in self.metrics]


def build_ranking(
    results: Mapping[str, Mapping[Statistic, MetaScore]],
    statistics: Sequence[Statistic],
) -> RankingTable:
    """
    Rank the metrics of ``results`` under every statistic. Rows are sorted by
    PDP rank when PDP is selected, else by the rank of the first statistic;
    equal ranks keep the input order.
    """
    statistics = tuple(Statistic(statistic) for statistic in statistics)
    if not statistics:
        raise ValueError("no statistic selected")
    metrics = list(results)
    ranks = {metric: {} for metric in metrics}
    for statistic in statistics:
        column = [results[metric][statistic].value for metric in metrics]
        for metric, rank in zip(metrics, dense_ranks(column)):
            ranks[metric][statistic] = rank
    key = Statistic.PDP if Statistic.PDP in statistics else statistics[0]
    metrics.sort(key=lambda metric: ranks[metric][key])
    return RankingTable(
        tuple(metrics),
        statistics,
        {metric: dict(results[metric]) for metric in metrics},
        ranks,
    )


def ranking_agreement(
    table: RankingTable,
) -> List[Tuple[Statistic, Statistic, CorrelationResult]]:
    """
    Spearman correlation between the metric scores of every pair of
    statistics. Empty with fewer than :data:`MIN_AGREEMENT_METRICS` metrics
    or a single statistic.
    """
    if len(table.metrics) < MIN_AGREEMENT_METRICS:
        return []
    return [
        (a, b, spearman(table.column(a), table.column(b)))
        for a, b in itertools.combinations(table.statistics, 2)
    ]


def _config_lines(config):
    for key, value in config.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(item) for item in value)
        yield "# {}={}\n".format(key, "" if value is None else value)


def _json_dump(document, fh):
    json.dump(document, fh, indent=2, sort_keys=False, ensure_ascii=False)
    fh.write("\n")


def _json_value(value):
    return None if value is None else _rounded(value)


def _check_format(format):
    if format not in _FORMATS:
        raise ValueError("unknown report format {!r}".format(format))


def write_ranking(
    table: RankingTable, fh, config: Mapping[str, Any], format="tsv"
) -> None:
    """
    Write ``table`` and the ranking agreement of its statistics to the open
    text file ``fh``.
    """
    _check_format(format)
    agreement = ranking_agreement(table)
    if format == "json":
        _json_dump(
            {
                "config": dict(config),
                "rows": [
                    {
                        "metric": metric,
                        "scores": {
                            statistic.value: {
                                "value": _json_value(
                                    table.scores[metric][statistic].value
                                ),
                                "rank": table.ranks[metric][statistic],
                                "detail": table.scores[metric][statistic].detail,
                            }
                            for statistic in table.statistics
                        },
                    }
                    for metric in table.metrics
                ],
                "agreement": [
                    {"first": a.value, "second": b.value, "spearman": _json_value(r.value)}
                    for a, b, r in agreement
                ],
            },
            fh,
        )
        return
    fh.writelines(_config_lines(config))
    header = ["metric"]
    for statistic in table.statistics:
        header += [statistic.value, "{}_rank".format(statistic.value)]
    fh.write("\t".join(header) + "\n")
    for metric in table.metrics:
        row = [metric]
        for statistic in table.statistics:
            row += [
                format_value(table.scores[metric][statistic].value),
                str(table.ranks[metric][statistic]),
            ]
        fh.write("\t".join(row) + "\n")
    if agreement:
        fh.write("\nfirst\tsecond\tspearman\n")
        for a, b, result in agreement:
            fh.write("{}\t{}\t{}\n".format(a.value, b.value, format_value(result.value)))


def write_oracle_report(
    report: AlignmentReport, fh, config: Mapping[str, Any], format="tsv"
) -> None:
    """
    Write the category table of ``report`` followed by its Spearman block to
    the open text file ``fh``.
    """
    _check_format(format)
    statistics = report.statistics
    category_ranks = {name: report.target_ranks(name) for name in _CATEGORY_COLUMNS}
    if format == "json":
        _json_dump(
            {
                "config": dict(config),
                "categories": [
                    {
                        "category": stats.category,
                        "importance": _json_value(stats.importance),
                        "importance_rank": category_ranks["importance"][k],
                        "count": stats.count,
                        "count_rank": category_ranks["count"][k],
                        "avg_weight": _json_value(stats.avg_weight),
                        "avg_weight_rank": category_ranks["avg_weight"][k],
                        "scores": {
                            statistic.value: {
                                "value": _json_value(report.scores[statistic][k]),
                                "rank": report.ranks[statistic][k],
                            }
                            for statistic in statistics
                        },
                    }
                    for k, stats in enumerate(report.categories)
                ],
                "spearman": {
                    statistic.value: {
                        name: _json_value(report.alignment[statistic][name].value)
                        for name in ALIGNMENT_TARGETS
                    }
                    for statistic in statistics
                },
            },
            fh,
        )
        return
    fh.writelines(_config_lines(config))
    header = ["category"]
    for name in _CATEGORY_COLUMNS:
        header += [name, "{}_rank".format(name)]
    for statistic in statistics:
        header += [statistic.value, "{}_rank".format(statistic.value)]
    fh.write("\t".join(header) + "\n")
    for k, stats in enumerate(report.categories):
        row = [
            stats.category,
            format_value(stats.importance),
            str(category_ranks["importance"][k]),
            str(stats.count),
            str(category_ranks["count"][k]),
            format_value(stats.avg_weight),
            str(category_ranks["avg_weight"][k]),
        ]
        for statistic in statistics:
            row += [
                format_value(report.scores[statistic][k]),
                str(report.ranks[statistic][k]),
            ]
        fh.write("\t".join(row) + "\n")
    fh.write("\nstatistic\t{}\n".format("\t".join(ALIGNMENT_TARGETS)))
    for statistic in statistics:
        fh.write(
            "{}\t{}\n".format(
                statistic.value,
                "\t".join(
                    format_value(report.alignment[statistic][name].value)
                    for name in ALIGNMENT_TARGETS
                ),
            )
        )
