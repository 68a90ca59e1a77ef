#!/usr/bin/env python
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
Convert mt-metrics-eval segment score files into segmeta scores files.

mt-metrics-eval stores one ``SYSTEM<TAB>SCORE`` line per translation, the
translations of every system in segment order and ``None`` for a missing
score. Segments are numbered from 1 per system.
"""

import argparse
import collections
import sys

from segmeta.matrix import MISSING, ScoreMatrix, write_scores


def read_mtme(path):
    counters = collections.Counter()
    cells = []
    with open(path, encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                system, token = line.split("\t")
            except ValueError:
                raise SystemExit(
                    "{}:{}: expected SYSTEM<TAB>SCORE".format(path, number)
                )
            counters[system] += 1
            segment = str(counters[system])
            score = MISSING if token == "None" else float(token)
            cells.append((system, segment, score))
    return ScoreMatrix.from_cells(cells)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("scores", help="mt-metrics-eval segment scores file")
    parser.add_argument("target", nargs="?", help="scores file, stdout if omitted")

    arguments = parser.parse_args()
    matrix = read_mtme(arguments.scores)
    write_scores(matrix, arguments.target or sys.stdout)
