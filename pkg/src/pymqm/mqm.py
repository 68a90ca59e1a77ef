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
Read MQM error annotations and aggregate them per error category. Records are
loaded into an in-memory sqlite database which answers the per-category and
per-cell aggregation queries. Category strings are opaque labels.
"""

import dataclasses
import logging
import math
import sqlite3

# public objects
__all__ = [
    "MqmRecord",
    "MqmStore",
    "CategoryStats",
    "MqmFileError",
    "NegativeWeight",
    "MQM_HEADER",
    "load_mqm",
    "category_stats",
    "cell_penalties",
]

logger = logging.getLogger(__name__)

MQM_HEADER = ("segment_id", "system_id", "category", "weight")

_SCHEMA = """
CREATE TABLE records (
    segment_id TEXT NOT NULL,
    system_id TEXT NOT NULL,
    category TEXT NOT NULL,
    weight REAL NOT NULL
)
"""


class MqmFileError(Exception):
    """
    An MQM file could not be read or does not follow the MQM TSV format.
    """

    def __init__(self, path, message, line=None):
        self.path = str(path)
        self.line = line
        if line is None:
            super().__init__("{}: {}".format(self.path, message))
        else:
            super().__init__("{}:{}: {}".format(self.path, line, message))


class NegativeWeight(MqmFileError):
    """
    An MQM record carries a negative weight. Weights are penalty magnitudes.
    """


@dataclasses.dataclass(frozen=True)
class MqmRecord:
    segment_id: str
    system_id: str
    category: str
    weight: float

    def __post_init__(self):
        if not self.category:
            raise ValueError("MQM category must not be empty")
        if not self.weight >= 0:
            raise ValueError("MQM weight must be non-negative, got {}".format(self.weight))


@dataclasses.dataclass(frozen=True)
class CategoryStats:
    """
    :param importance: sum of the category's weights
    :param avg_weight: ``importance / count``
    """

    category: str
    count: int
    avg_weight: float
    importance: float


def load_mqm(path):
    """
    Read an MQM TSV file with the header
    ``segment_id<TAB>system_id<TAB>category<TAB>weight``. An empty file, or
    one with only a header, gives no records.

    :raises MqmFileError: unreadable file, bad header or malformed row
    :raises NegativeWeight: a weight below zero
    :rtype: list of :class:`MqmRecord` in file order
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as error:
        raise MqmFileError(path, error.strerror or str(error))
    records = []
    header_seen = False
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if not header_seen:
            if tuple(field.strip() for field in fields) != MQM_HEADER:
                raise MqmFileError(
                    path, "expected header {!r}".format("\t".join(MQM_HEADER)), number
                )
            header_seen = True
            continue
        if len(fields) != len(MQM_HEADER):
            raise MqmFileError(
                path, "expected 4 columns, got {}".format(len(fields)), number
            )
        segment, system, category, token = (field.strip() for field in fields)
        if not category:
            raise MqmFileError(path, "empty category", number)
        try:
            weight = float(token)
        except ValueError:
            raise MqmFileError(path, "weight {!r} is not a number".format(token), number)
        if not math.isfinite(weight):
            raise MqmFileError(path, "weight {!r} is not finite".format(token), number)
        if weight < 0:
            raise NegativeWeight(path, "negative weight {!r}".format(token), number)
        records.append(MqmRecord(segment, system, category, weight))
    logger.debug("loaded %d MQM records from %s", len(records), path)
    return records


class MqmStore(object):
    """
    In-memory sqlite database over a list of MQM records.
    """

    def __init__(self, records):
        self._database = sqlite3.connect(":memory:")
        self._database.execute(_SCHEMA)
        self._database.executemany(
            "INSERT INTO records VALUES (?, ?, ?, ?)",
            (
                (r.segment_id, r.system_id, r.category, float(r.weight))
                for r in records
            ),
        )

    def close(self):
        self._database.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    def categories(self):
        """Distinct categories sorted by name."""
        return [
            row[0]
            for row in self._database.execute(
                "SELECT DISTINCT category FROM records ORDER BY category"
            )
        ]

    def cells(self):
        """Distinct ``(segment_id, system_id)`` cells with a record."""
        return self._database.execute(
            "SELECT DISTINCT segment_id, system_id FROM records"
        ).fetchall()

    def weights(self, category):
        return [
            row[0]
            for row in self._database.execute(
                "SELECT weight FROM records WHERE category == ?", (category,)
            )
        ]

    def cell_weights(self, category=None):
        """
        Map every annotated cell to the list of its weights, optionally
        restricted to one category.
        """
        if category is None:
            rows = self._database.execute(
                "SELECT segment_id, system_id, weight FROM records"
            )
        else:
            rows = self._database.execute(
                "SELECT segment_id, system_id, weight FROM records "
                "WHERE category == ?",
                (category,),
            )
        cells = {}
        for segment, system, weight in rows:
            cells.setdefault((segment, system), []).append(weight)
        return cells

    def category_stats(self):
        rows = self._database.execute(
            "SELECT category, COUNT(*) FROM records GROUP BY category ORDER BY category"
        ).fetchall()
        stats = []
        for category, count in rows:
            # fsum keeps the importance independent of record order
            importance = math.fsum(self.weights(category))
            stats.append(CategoryStats(category, count, importance / count, importance))
        return stats

    def penalties(self, category=None):
        """
        Total penalty per annotated ``(segment_id, system_id)`` cell. Without
        a ``category`` the total sums the per-category totals in category
        order, so it equals the sum of the per-category results exactly
        whenever those are exact.
        """
        if category is not None:
            return {
                cell: math.fsum(weights)
                for cell, weights in self.cell_weights(category).items()
            }
        totals = {}
        for name in self.categories():
            for cell, weights in self.cell_weights(name).items():
                totals[cell] = totals.get(cell, 0.0) + math.fsum(weights)
        return totals


def category_stats(records):
    """
    Count, average weight and importance (sum of weights) per category,
    sorted by category name. Zero-weight records are counted.
    """
    with MqmStore(records) as store:
        return store.category_stats()


def cell_penalties(records, category=None):
    """Total penalty per annotated cell, see :meth:`MqmStore.penalties`."""
    with MqmStore(records) as store:
        return store.penalties(category)
