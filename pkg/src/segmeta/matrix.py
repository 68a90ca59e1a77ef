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
System x segment score matrices, pairing of metric and human scores and the
scores TSV format.

A scores file has one row per cell::

    segment_id<TAB>system_id<TAB>score

The header row is required, ``NA`` marks a missing score and lines starting
with ``#`` are ignored.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from segmeta.errors import DuplicateCell, EmptyIntersection, ScoreFileError

# public objects
__all__ = [
    "MISSING",
    "HEADER",
    "ScoreMatrix",
    "PairedData",
    "SegmentSlice",
    "load_scores",
    "write_scores",
    "pair",
    "segment_slices",
    "joint_segments",
]

# logger
logger = logging.getLogger(__name__)

MISSING = None
"""Value returned by :meth:`ScoreMatrix.get` for a missing cell."""

HEADER = ("segment_id", "system_id", "score")

_NA = "NA"
_COMMENT = "#"
_FORMATS = ("tsv",)


def _check_axis(name, identifiers):
    if not identifiers:
        raise ValueError("{} axis must not be empty".format(name))
    if len(set(identifiers)) != len(identifiers):
        raise ValueError("{} identifiers must be unique".format(name))


@dataclasses.dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """
    An N-system x M-segment matrix of scores. Missing entries are stored as
    NaN in :attr:`values`; every present entry is finite. The grid is made
    read-only on construction.

    :param systems: ordered system identifiers (rows)
    :param segments: ordered segment identifiers (columns)
    :param values: array of shape ``(len(systems), len(segments))``
    """

    systems: Tuple[str, ...]
    segments: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        systems = tuple(self.systems)
        segments = tuple(self.segments)
        _check_axis("system", systems)
        _check_axis("segment", segments)
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (len(systems), len(segments)):
            raise ValueError(
                "values have shape {}, expected {}".format(
                    values.shape, (len(systems), len(segments))
                )
            )
        if np.isinf(values).any():
            raise ValueError("scores must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "systems", systems)
        object.__setattr__(self, "segments", segments)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_cells(cls, cells, systems=None, segments=None):
        """
        Build a matrix from ``(system, segment, score)`` triples, ``score``
        being a float or :data:`MISSING`. Without explicit axes the systems
        and segments are taken in first-appearance order.
        """
        cells = list(cells)
        if systems is None:
            systems = list(dict.fromkeys(system for system, _, _ in cells))
        if segments is None:
            segments = list(dict.fromkeys(segment for _, segment, _ in cells))
        rows = {system: i for i, system in enumerate(systems)}
        columns = {segment: j for j, segment in enumerate(segments)}
        values = np.full((len(systems), len(segments)), np.nan)
        for system, segment, score in cells:
            if score is not MISSING:
                values[rows[system], columns[segment]] = score
        return cls(tuple(systems), tuple(segments), values)

    @property
    def shape(self):
        return self.values.shape

    @property
    def present(self):
        """Boolean mask of the present (non-missing) cells."""
        return ~np.isnan(self.values)

    def get(self, system, segment) -> Optional[float]:
        value = self.values[self.systems.index(system), self.segments.index(segment)]
        if math.isnan(value):
            return MISSING
        return float(value)

    def cells(self) -> Iterator[Tuple[str, str, Optional[float]]]:
        """Iterate over all cells in system-major order."""
        for i, system in enumerate(self.systems):
            for j, segment in enumerate(self.segments):
                value = self.values[i, j]
                yield system, segment, MISSING if math.isnan(value) else float(value)

    def with_values(self, values) -> "ScoreMatrix":
        """Return a matrix on the same axes holding ``values``."""
        return ScoreMatrix(self.systems, self.segments, values)

    def reindex(self, systems, segments) -> "ScoreMatrix":
        """Restrict and reorder the matrix to the given axes."""
        rows = [self.systems.index(system) for system in systems]
        columns = [self.segments.index(segment) for segment in segments]
        return ScoreMatrix(
            tuple(systems), tuple(segments), self.values[np.ix_(rows, columns)]
        )


@dataclasses.dataclass(frozen=True, eq=False)
class PairedData:
    """
    Metric scores ``x`` and human scores ``y`` on identical axes.

    :param dropped_systems: systems present on only one side before pairing
    :param dropped_segments: segments present on only one side before pairing
    """

    x: ScoreMatrix
    y: ScoreMatrix
    dropped_systems: Tuple[str, ...] = ()
    dropped_segments: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.x.systems != self.y.systems or self.x.segments != self.y.segments:
            raise ValueError("paired matrices must share system and segment axes")

    @property
    def systems(self):
        return self.y.systems

    @property
    def segments(self):
        return self.y.segments

    @property
    def joint(self):
        """Mask of the cells present on both sides."""
        return self.x.present & self.y.present


@dataclasses.dataclass(frozen=True)
class SegmentSlice:
    """
    The jointly present scores of one segment, in matrix system order.
    """

    segment_id: str
    x_scores: Tuple[Tuple[str, float], ...]
    y_scores: Tuple[Tuple[str, float], ...]

    @property
    def systems(self):
        return tuple(system for system, _ in self.y_scores)

    def __len__(self):
        return len(self.y_scores)


def load_scores(path, format="tsv") -> ScoreMatrix:
    """
    Read a scores file.

    :param path: path to the scores file
    :param format: file format, only ``"tsv"`` is supported
    :rtype: :class:`ScoreMatrix` with axes in first-appearance order
    :raises ScoreFileError: IO failure, missing header, malformed row,
        unreadable score or no rows at all
    :raises DuplicateCell: a (system, segment) cell appears twice
    """
    if format not in _FORMATS:
        raise ValueError("unsupported scores format {!r}".format(format))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as error:
        raise ScoreFileError(path, "cannot read file ({})".format(error))

    cells = {}
    header_seen = False
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith(_COMMENT):
            continue
        fields = line.split("\t")
        if not header_seen:
            if tuple(field.strip() for field in fields) != HEADER:
                raise ScoreFileError(
                    path, "expected header {!r}".format("\t".join(HEADER)), number
                )
            header_seen = True
            continue
        if len(fields) != 3:
            raise ScoreFileError(
                path, "expected 3 tab-separated columns, got {}".format(len(fields)),
                number,
            )
        segment, system, token = (field.strip() for field in fields)
        if (system, segment) in cells:
            raise DuplicateCell(
                path, "duplicate cell ({}, {})".format(segment, system), number
            )
        cells[(system, segment)] = _parse_score(path, token, number)

    if not cells:
        raise ScoreFileError(path, "no rows")
    logger.debug("read %d cells from %s", len(cells), path)
    return ScoreMatrix.from_cells(
        (system, segment, score) for (system, segment), score in cells.items()
    )


def _parse_score(path, token, number):
    if token == _NA:
        return MISSING
    try:
        score = float(token)
    except ValueError:
        raise ScoreFileError(path, "score {!r} is not a number".format(token), number)
    if not math.isfinite(score):
        raise ScoreFileError(path, "score {!r} is not finite".format(token), number)
    return score


def write_scores(matrix: ScoreMatrix, path, comments=()) -> None:
    """
    Write ``matrix`` as a scores file, segment by segment, with ``NA`` for
    missing cells. Scores keep their full precision.

    :param path: path or open text file
    :param comments: lines written as ``#`` comments before the header
    """
    if hasattr(path, "write"):
        _write_scores(matrix, path, comments)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        _write_scores(matrix, fh, comments)


def _write_scores(matrix, fh, comments):
    for comment in comments:
        fh.write("{} {}\n".format(_COMMENT, comment))
    fh.write("\t".join(HEADER) + "\n")
    for j, segment in enumerate(matrix.segments):
        for i, system in enumerate(matrix.systems):
            value = matrix.values[i, j]
            token = _NA if math.isnan(value) else repr(float(value))
            fh.write("{}\t{}\t{}\n".format(segment, system, token))


def _common(reference: Sequence[str], other: Sequence[str]) -> List[str]:
    others = set(other)
    return [identifier for identifier in reference if identifier in others]


def _dropped(a: Sequence[str], b: Sequence[str], common: Sequence[str]):
    kept = set(common)
    return tuple(dict.fromkeys(i for i in list(b) + list(a) if i not in kept))


def pair(x: ScoreMatrix, y: ScoreMatrix) -> PairedData:
    """
    Align metric scores ``x`` with human scores ``y``. Both axes are
    intersected and ordered like ``y``.

    :raises EmptyIntersection: no common system or no common segment
    """
    systems = _common(y.systems, x.systems)
    segments = _common(y.segments, x.segments)
    if not systems:
        raise EmptyIntersection("metric and human scores share no system")
    if not segments:
        raise EmptyIntersection("metric and human scores share no segment")
    dropped_systems = _dropped(x.systems, y.systems, systems)
    dropped_segments = _dropped(x.segments, y.segments, segments)
    if dropped_systems or dropped_segments:
        logger.warning(
            "pairing dropped {} system(s) and {} segment(s) present on one side "
            "only".format(len(dropped_systems), len(dropped_segments))
        )
    return PairedData(
        x.reindex(systems, segments),
        y.reindex(systems, segments),
        dropped_systems,
        dropped_segments,
    )


def joint_segments(d: PairedData):
    """
    Iterate over the segments of ``d`` in matrix order, yielding the segment
    index, the row indices of the jointly present systems and the metric and
    human scores of those systems as arrays.
    """
    joint = d.joint
    for j in range(len(d.segments)):
        rows = np.flatnonzero(joint[:, j])
        yield j, rows, d.x.values[rows, j], d.y.values[rows, j]


def segment_slices(d: PairedData) -> List[SegmentSlice]:
    """
    One :class:`SegmentSlice` per segment, including segments with fewer than
    two jointly present systems.
    """
    slices = []
    for j, rows, x, y in joint_segments(d):
        systems = [d.systems[i] for i in rows]
        slices.append(
            SegmentSlice(
                d.segments[j],
                tuple(zip(systems, x.tolist())),
                tuple(zip(systems, y.tolist())),
            )
        )
    return slices
