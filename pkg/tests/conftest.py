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

import os
import pathlib

import numpy as np
import pytest

from pymqm import MqmRecord
from segmeta.matrix import ScoreMatrix
from segmeta.synthetic import mqm_like_scores

DATA_DIR = pathlib.Path(__file__).parent / "data"

_COUNT_WEIGHTS = {"minor": 1.0, "major": 5.0, "non_translation": 25.0, "neutral": 0.0}


def make_matrix(rows, systems=None, segments=None):
    """Matrix from nested lists, ``None`` for a missing score."""
    values = np.array(
        [[np.nan if value is None else value for value in row] for row in rows],
        dtype=np.float64,
    )
    if systems is None:
        systems = ["sys{}".format(i) for i in range(values.shape[0])]
    if segments is None:
        segments = ["seg{}".format(j) for j in range(values.shape[1])]
    return ScoreMatrix(tuple(systems), tuple(segments), values)


@pytest.fixture
def matrix():
    return make_matrix


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def synthetic_human():
    """20 systems x 500 segments of MQM-like human scores."""
    return mqm_like_scores(20, 500, seed=11)


@pytest.fixture(scope="session")
def category_count_records():
    """
    MQM records reproducing rows of a published category table from their
    counts per severity; systems and segments are cycled.
    """
    records = []
    lines = (DATA_DIR / "category_counts.tsv").read_text(encoding="utf-8").splitlines()
    header = lines[0].split("\t")
    for line in lines[1:]:
        fields = dict(zip(header, line.split("\t")))
        for severity, weight in _COUNT_WEIGHTS.items():
            for k in range(int(fields[severity])):
                records.append(
                    MqmRecord(
                        "seg{}".format(k % 97),
                        "sys{}".format(k % 13),
                        fields["category"],
                        weight,
                    )
                )
    return records


@pytest.fixture(scope="session")
def wmt_dir():
    path = os.environ.get("SEGMETA_WMT_DIR")
    if not path:
        pytest.skip("SEGMETA_WMT_DIR not set")
    return pathlib.Path(path)
