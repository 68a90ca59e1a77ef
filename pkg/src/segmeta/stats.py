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
Scalar statistics kernels. Moments are population moments (divide by n) and
all sums are compensated, see :func:`compensated_sum`.

A correlation on fewer than two values or on a constant vector is
*undefined*; :class:`CorrelationResult` reports that as ``value is None``
instead of a number. Turning undefined into 0 is a reporting decision left to
:mod:`segmeta.metametrics`.
"""

from __future__ import annotations

import dataclasses
import math
from typing import List, Optional

import numpy as np
from scipy.stats import rankdata

from segmeta.errors import LengthMismatch

# public objects
__all__ = [
    "UNDEFINED",
    "CorrelationResult",
    "compensated_sum",
    "mean",
    "variance",
    "covariance",
    "pearson",
    "spearman",
    "pairwise_differences",
    "dense_ranks",
    "RANK_PRECISION",
]

UNDEFINED = None

# decimals at which scores are printed and ranked
RANK_PRECISION = 3

_CHUNK = 1 << 16


@dataclasses.dataclass(frozen=True)
class CorrelationResult:
    """
    :param value: correlation in [-1, 1], or :data:`UNDEFINED`
    :param n: number of pairs the correlation was computed on
    """

    value: Optional[float]
    n: int

    @property
    def defined(self) -> bool:
        return self.value is not UNDEFINED

    def value_or(self, default: float) -> float:
        return default if self.value is UNDEFINED else self.value


def compensated_sum(values) -> float:
    """
    Sum with error-free accumulation (:func:`math.fsum`), chunked so that
    pairwise difference vectors with hundreds of millions of entries do not
    have to be converted to one Python list.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size <= _CHUNK:
        return math.fsum(values.tolist())
    return math.fsum(
        math.fsum(values[start : start + _CHUNK].tolist())
        for start in range(0, values.size, _CHUNK)
    )


def mean(values) -> float:
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("mean of an empty vector")
    return compensated_sum(values) / values.size


def variance(values) -> float:
    values = np.asarray(values, dtype=np.float64)
    centered = values - mean(values)
    return compensated_sum(centered * centered) / values.size


def covariance(u, v) -> float:
    u, v = _pair_vectors(u, v)
    if u.size == 0:
        raise ValueError("covariance of empty vectors")
    return compensated_sum((u - mean(u)) * (v - mean(v))) / u.size


def _pair_vectors(u, v):
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.size != v.size:
        raise LengthMismatch(
            "vectors have different lengths ({} and {})".format(u.size, v.size)
        )
    return u, v


def _constant(values):
    return values.min() == values.max()


def pearson(u, v) -> CorrelationResult:
    """
    Pearson's correlation coefficient of ``u`` and ``v``.

    :raises LengthMismatch: the vectors differ in length
    :rtype: :class:`CorrelationResult`, undefined for fewer than two pairs or
        a zero variance on either side
    """
    u, v = _pair_vectors(u, v)
    n = u.size
    if n < 2 or _constant(u) or _constant(v):
        return CorrelationResult(UNDEFINED, n)
    du = u - mean(u)
    dv = v - mean(v)
    suu = compensated_sum(du * du)
    svv = compensated_sum(dv * dv)
    suv = compensated_sum(du * dv)
    if suu == 0.0 or svv == 0.0:
        return CorrelationResult(UNDEFINED, n)
    r = suv / math.sqrt(suu * svv)
    # clamp rounding overshoot
    return CorrelationResult(min(1.0, max(-1.0, r)), n)


def spearman(u, v) -> CorrelationResult:
    """
    Spearman's rank correlation: Pearson's correlation of the fractional
    ranks, tied values sharing the mean of their rank span.
    """
    u, v = _pair_vectors(u, v)
    if u.size < 2:
        return CorrelationResult(UNDEFINED, u.size)
    return pearson(rankdata(u, method="average"), rankdata(v, method="average"))


def pairwise_differences(u, include_self=False) -> np.ndarray:
    """
    All ordered differences ``u[i] - u[j]`` in row-major ``(i, j)`` order.

    :param include_self: keep the ``i == j`` zeros, giving ``n**2`` entries
        instead of ``n * (n - 1)``
    """
    u = np.asarray(u, dtype=np.float64).ravel()
    if u.size == 0:
        raise ValueError("pairwise differences of an empty vector")
    differences = u[:, np.newaxis] - u[np.newaxis, :]
    if include_self:
        return differences.ravel()
    return differences[~np.eye(u.size, dtype=bool)]


def dense_ranks(values, decimals=RANK_PRECISION) -> List[int]:
    """
    Dense ranks, 1 for the highest value; equal values share a rank and the
    next value takes the next rank. Values are compared after rounding to
    ``decimals`` places, or exactly when ``decimals`` is ``None``.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        return []
    if decimals is not None:
        values = np.array([round(float(value), decimals) for value in values])
    return [int(rank) for rank in rankdata(-values, method="dense")]
