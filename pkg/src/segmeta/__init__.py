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

__version__ = "1.0.0"
__project__ = "Segment-level meta-evaluation"
__short_name__ = "segmeta"
__authors__ = "The segmeta authors"
__emails__ = ""
__website__ = ""
__download_url__ = ""
__source__ = ""
__vcs__ = ""
__copyright__ = "2025, The segmeta authors"
__desc_short__ = """
Segment-level meta-evaluation statistics for machine translation metrics
"""
__desc_long__ = """
Compare machine translation metric scores with human scores at the segment
level with Global Pearson, Segment-Wise Pearson, tie calibrated pairwise
accuracy and Pairwise Difference Pearson. Measure how robust each statistic
is to noise in the human scores and whether it follows the error weighting
of MQM annotations.
"""
__metadata__ = {
    "__version__": __version__,
    "__project__": __project__,
    "__short_name__": __short_name__,
    "__authors__": __authors__,
    "__emails__": __emails__,
    "__website__": __website__,
    "__download_url__": __download_url__,
    "__source__": __source__,
    "__vcs__": __vcs__,
    "__copyright__": __copyright__,
    "__desc_short__": __desc_short__,
    "__desc_long__": __desc_long__,
}

from segmeta.errors import DegenerateStatistic, InputError  # noqa: E402
from segmeta.matrix import (  # noqa: E402
    MISSING,
    PairedData,
    ScoreMatrix,
    load_scores,
    pair,
    write_scores,
)
from segmeta.metametrics import (  # noqa: E402
    MetaScore,
    Statistic,
    acc_eq,
    calibrate_acc_eq,
    global_pearson,
    pdp,
    score,
    segmentwise_pearson,
)
from segmeta.noise import NoiseKind, NoiseSpec, inject_noise, sdp, sweep  # noqa: E402
from segmeta.oracle import (  # noqa: E402
    alignment_report,
    oracle_metric,
    total_human_scores,
)

__all__ = [
    "InputError",
    "DegenerateStatistic",
    "MISSING",
    "ScoreMatrix",
    "PairedData",
    "load_scores",
    "write_scores",
    "pair",
    "Statistic",
    "MetaScore",
    "global_pearson",
    "segmentwise_pearson",
    "pdp",
    "acc_eq",
    "calibrate_acc_eq",
    "score",
    "NoiseKind",
    "NoiseSpec",
    "inject_noise",
    "sdp",
    "sweep",
    "total_human_scores",
    "oracle_metric",
    "alignment_report",
]
