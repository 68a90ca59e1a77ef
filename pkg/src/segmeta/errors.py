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
Exceptions raised by segmeta. Everything derives from either
:class:`InputError` (bad or unusable input data) or
:class:`DegenerateStatistic` (the data is fine but a statistic cannot be
computed on it).
"""

# public objects
__all__ = [
    "InputError",
    "ScoreFileError",
    "DuplicateCell",
    "EmptyIntersection",
    "LengthMismatch",
    "InvalidNoiseSpec",
    "UnknownCell",
    "NoRecords",
    "EmptyMatrix",
    "TooFewCategories",
    "DegenerateStatistic",
    "TooFewCells",
    "NoUsableSegments",
    "NoPairs",
    "DegenerateDenominator",
]


class InputError(Exception):
    """
    Base class of all errors caused by the input data.
    """


class ScoreFileError(InputError):
    """
    A scores file could not be read or does not follow the scores TSV format.
    """

    def __init__(self, path, message, line=None):
        self.path = str(path)
        self.line = line
        if line is None:
            super().__init__("{}: {}".format(self.path, message))
        else:
            super().__init__("{}:{}: {}".format(self.path, line, message))


class DuplicateCell(ScoreFileError):
    """
    The same (system, segment) cell appears twice in a scores file.
    """


class EmptyIntersection(InputError):
    """
    Two score matrices share no system or no segment.
    """


class LengthMismatch(InputError):
    """
    Two vectors which should be paired element by element differ in length.
    """


class InvalidNoiseSpec(InputError):
    """
    A noise specification or a list of noise levels is not usable.
    """


class UnknownCell(InputError):
    """
    An MQM record refers to a (segment, system) cell outside the score axes.
    """


class NoRecords(InputError):
    """
    An MQM file contains no records at all.
    """


class EmptyMatrix(InputError):
    """
    A score matrix has no present cell to perturb or resample.
    """


class TooFewCategories(InputError):
    """
    Rank correlations over error categories need at least three categories.
    """


class DegenerateStatistic(Exception):
    """
    Base class of all errors raised when a statistic is not computable.
    """


class TooFewCells(DegenerateStatistic):
    """
    Fewer than two jointly present cells are available for Global Pearson.
    """


class NoUsableSegments(DegenerateStatistic):
    """
    No segment has at least two jointly present systems.
    """


class NoPairs(DegenerateStatistic):
    """
    There is not a single intra-segment system pair to compare.
    """


class DegenerateDenominator(DegenerateStatistic):
    """
    The score degradation proportion is undefined because the statistic scores
    the ground truth and the random baseline (almost) identically.
    """
