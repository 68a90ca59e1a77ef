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
Noise robustness harness. A statistic is robust when scoring a noisy copy of
the human scores against the human scores loses little compared to scoring a
random guess. The score degradation proportion (SDP) of a statistic theta is

    (theta(Y, Y) - theta(Y, X_noise)) / (theta(Y, Y) - theta(Y, X_rand))

where ``X_rand`` resamples the human scores with replacement. Four noise
processes are available:

``random``
    adds an independent N(0, level) draw to every present cell
``outlier``
    overwrites one uniformly chosen present cell with ``level``
``system``
    adds ``level`` to every present cell of one uniformly chosen system
``segment``
    adds one N(0, level) draw per segment to all cells of the segment

``level`` is a standard deviation for ``random`` and ``segment``.

Every replicate draws from its own generator seeded with
:func:`derive_seed`, so results only depend on the base seed.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from segmeta.errors import DegenerateDenominator, EmptyMatrix, InvalidNoiseSpec
from segmeta.matrix import PairedData, ScoreMatrix
from segmeta.metametrics import Statistic, score
from segmeta.stats import compensated_sum

# public objects
__all__ = [
    "NoiseKind",
    "NoiseSpec",
    "SdpCurve",
    "CURVE_HEADER",
    "DEFAULT_REPLICATES",
    "DENOMINATOR_TOLERANCE",
    "splitmix64",
    "derive_seed",
    "inject_noise",
    "sample_random_baseline",
    "score_degradation",
    "sdp",
    "sweep",
    "write_curves",
]

# logger
logger = logging.getLogger(__name__)

DEFAULT_REPLICATES = 30
DENOMINATOR_TOLERANCE = 1e-9
CURVE_HEADER = ("statistic", "kind", "level", "sdp", "replicates", "seed")

_MASK64 = (1 << 64) - 1
_BASELINE_CODE = 4


class NoiseKind(str, enum.Enum):
    RANDOM = "random"
    OUTLIER = "outlier"
    SYSTEM_BIAS = "system"
    SEGMENT_BIAS = "segment"

    @property
    def code(self):
        """Stable integer code used in seed derivation."""
        return _KIND_CODES[self]

    @property
    def is_spread(self):
        """Whether ``level`` is a standard deviation."""
        return self in (NoiseKind.RANDOM, NoiseKind.SEGMENT_BIAS)

    def __str__(self):
        return self.value


_KIND_CODES = {
    NoiseKind.RANDOM: 0,
    NoiseKind.OUTLIER: 1,
    NoiseKind.SYSTEM_BIAS: 2,
    NoiseKind.SEGMENT_BIAS: 3,
}


def splitmix64(value: int) -> int:
    """One step of the splitmix64 mixer on a 64-bit unsigned integer."""
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*fields: int) -> int:
    """
    Fold 64-bit fields into one seed: starting from 0, each field is xored
    into the state which is then mixed with :func:`splitmix64`.
    """
    state = 0
    for field in fields:
        state = splitmix64(state ^ (int(field) & _MASK64))
    return state


@dataclasses.dataclass(frozen=True)
class NoiseSpec:
    """
    :param kind: noise process
    :param level: standard deviation for ``random`` and ``segment`` (must be
        non-negative), the written value for ``outlier``, the shift for
        ``system``
    :param seed: 64-bit unsigned seed
    """

    kind: NoiseKind
    level: float
    seed: int = 0

    def __post_init__(self):
        try:
            kind = NoiseKind(self.kind)
        except ValueError:
            raise InvalidNoiseSpec("unknown noise kind {!r}".format(self.kind))
        object.__setattr__(self, "kind", kind)
        if not math.isfinite(self.level):
            raise InvalidNoiseSpec("noise level must be finite")
        if kind.is_spread and self.level < 0:
            raise InvalidNoiseSpec(
                "{} noise level is a standard deviation and must be "
                "non-negative, got {}".format(kind, self.level)
            )
        if not 0 <= self.seed <= _MASK64:
            raise InvalidNoiseSpec("seed must be a 64-bit unsigned integer")


@dataclasses.dataclass(frozen=True)
class SdpCurve:
    """SDP of one statistic under one noise process at increasing levels."""

    statistic: Statistic
    kind: NoiseKind
    points: Tuple[Tuple[float, float], ...]
    replicates: int
    seed: int

    @property
    def levels(self):
        return [level for level, _ in self.points]

    @property
    def values(self):
        return [value for _, value in self.points]


def _require_cells(y):
    present = y.present
    if not present.any():
        raise EmptyMatrix("score matrix has no present cell")
    return present


def inject_noise(y: ScoreMatrix, spec: NoiseSpec) -> ScoreMatrix:
    """
    Return a noisy copy of ``y``. Missing cells stay missing and the result
    only depends on ``y`` and ``spec``.

    :raises EmptyMatrix: ``y`` has no present cell
    """
    present = _require_cells(y)
    if spec.level == 0 and spec.kind is not NoiseKind.OUTLIER:
        return y
    rng = np.random.default_rng(spec.seed)
    values = y.values.copy()
    if spec.kind is NoiseKind.RANDOM:
        values[present] += rng.normal(0.0, spec.level, size=int(present.sum()))
    elif spec.kind is NoiseKind.OUTLIER:
        cells = np.flatnonzero(present)
        values.flat[cells[rng.integers(cells.size)]] = spec.level
    elif spec.kind is NoiseKind.SYSTEM_BIAS:
        rows = np.flatnonzero(present.any(axis=1))
        row = rows[rng.integers(rows.size)]
        values[row, present[row]] += spec.level
    else:
        values += rng.normal(0.0, spec.level, size=len(y.segments))[np.newaxis, :]
    return y.with_values(values)


def sample_random_baseline(y: ScoreMatrix, seed: int) -> ScoreMatrix:
    """
    The random guess ``X_rand``: every present cell gets a draw, with
    replacement, from the present values of ``y``.

    :raises EmptyMatrix: ``y`` has no present cell
    """
    present = _require_cells(y)
    rng = np.random.default_rng(seed)
    values = y.values.copy()
    pool = y.values[present]
    values[present] = rng.choice(pool, size=pool.size, replace=True)
    return y.with_values(values)


def score_degradation(best: float, noisy: Sequence[float], baseline: Sequence[float]):
    """
    Mean over ``noisy`` of ``(best - noisy) / (best - mean(baseline))``.

    :raises ZeroDivisionError: never, a degenerate denominator is reported as
        :class:`~segmeta.errors.DegenerateDenominator` by the callers
    """
    denominator = best - compensated_sum(baseline) / len(baseline)
    return compensated_sum([(best - value) / denominator for value in noisy]) / len(
        noisy
    )


def _theta(statistic, x, y):
    return score(statistic, PairedData(x, y)).value


class _Reference:
    """theta(Y, Y) and the random baseline scores of one statistic."""

    def __init__(self, y, statistic, replicates, seed):
        self.statistic = Statistic(statistic)
        self.best = _theta(self.statistic, y, y)
        self.baseline = [
            _theta(
                self.statistic,
                sample_random_baseline(y, derive_seed(seed, _BASELINE_CODE, 0, r)),
                y,
            )
            for r in range(replicates)
        ]
        denominator = self.best - compensated_sum(self.baseline) / replicates
        if abs(denominator) < DENOMINATOR_TOLERANCE:
            raise DegenerateDenominator(
                "SDP of {} is undefined: it scores the human scores and the random "
                "baseline alike ({!r} vs {!r})".format(
                    self.statistic.label, self.best, self.best - denominator
                )
            )
        logger.debug(
            "%s: theta(Y, Y) = %r, theta(Y, X_rand) = %r",
            self.statistic,
            self.best,
            self.best - denominator,
        )

    def degradation(self, noisy):
        return score_degradation(self.best, noisy, self.baseline)


def _check_replicates(replicates):
    if replicates < 1:
        raise InvalidNoiseSpec("need at least one replicate")


def _noisy_thetas(y, kind, level, level_index, replicates, seed, statistics):
    thetas = {statistic: [] for statistic in statistics}
    for r in range(replicates):
        spec = NoiseSpec(kind, level, derive_seed(seed, kind.code, level_index, r))
        d = PairedData(inject_noise(y, spec), y)
        for statistic in statistics:
            thetas[statistic].append(score(statistic, d).value)
    return thetas


def sdp(
    y: ScoreMatrix,
    statistic: Statistic,
    spec: NoiseSpec,
    replicates: int = DEFAULT_REPLICATES,
    level_index: int = 0,
) -> float:
    """
    Score degradation proportion of ``statistic`` under ``spec``, averaged
    over ``replicates`` noisy copies of ``y``. ``spec.seed`` is the base seed
    from which every replicate seed is derived.

    :raises DegenerateDenominator: the statistic cannot tell ``y`` from the
        random baseline
    """
    _check_replicates(replicates)
    statistic = Statistic(statistic)
    reference = _Reference(y, statistic, replicates, spec.seed)
    thetas = _noisy_thetas(
        y, spec.kind, spec.level, level_index, replicates, spec.seed, [statistic]
    )
    return reference.degradation(thetas[statistic])


def _check_levels(kind, levels):
    if not levels:
        raise InvalidNoiseSpec("need at least one noise level")
    magnitudes = [abs(level) for level in levels]
    if any(b <= a for a, b in zip(magnitudes, magnitudes[1:])):
        raise InvalidNoiseSpec("noise levels must be strictly increasing in magnitude")
    if kind.is_spread and any(level < 0 for level in levels):
        raise InvalidNoiseSpec("{} noise levels must be non-negative".format(kind))


def sweep(
    y: ScoreMatrix,
    statistics: Sequence[Statistic],
    kind: NoiseKind,
    levels: Sequence[float],
    replicates: int = DEFAULT_REPLICATES,
    seed: int = 0,
) -> List[SdpCurve]:
    """
    SDP curves of every statistic over ``levels`` of one noise process. Each
    noisy replicate is scored by all statistics, so the curves of one sweep
    share their noisy matrices.

    :param levels: strictly increasing in magnitude; non-negative for
        ``random`` and ``segment`` noise
    :rtype: one :class:`SdpCurve` per statistic, in the given order
    """
    kind = NoiseKind(kind)
    statistics = [Statistic(statistic) for statistic in statistics]
    levels = [float(level) for level in levels]
    _check_replicates(replicates)
    _check_levels(kind, levels)
    references = {
        statistic: _Reference(y, statistic, replicates, seed) for statistic in statistics
    }
    points = {statistic: [] for statistic in statistics}
    for level_index, level in enumerate(levels):
        logger.info("%s noise level %r (%d replicates)", kind, level, replicates)
        thetas = _noisy_thetas(y, kind, level, level_index, replicates, seed, statistics)
        for statistic in statistics:
            points[statistic].append(
                (level, references[statistic].degradation(thetas[statistic]))
            )
    return [
        SdpCurve(statistic, kind, tuple(points[statistic]), replicates, seed)
        for statistic in statistics
    ]


def write_curves(curves: Sequence[SdpCurve], fh) -> None:
    """
    Write ``curves`` as CSV to the open text file ``fh``, one row per
    statistic and level.
    """
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for curve in curves:
        for level, value in curve.points:
            writer.writerow(
                (
                    curve.statistic.value,
                    curve.kind.value,
                    repr(level),
                    repr(value),
                    curve.replicates,
                    curve.seed,
                )
            )
