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

__version__ = "1.0"
__project__ = "Python MQM"
__short_name__ = "pymqm"
__authors__ = "The segmeta authors"
__emails__ = ""
__website__ = ""
__source__ = ""
__vcs__ = ""
__copyright__ = "2025, The segmeta authors"
__desc_short__ = "read MQM error annotations and aggregate them per category."
__desc_long__ = (
    "Read MQM error annotations (segment, system, category, weight) and "
    "aggregate them per error category and per translation through an "
    "in-memory sqlite database."
)

__metadata__ = {
    "__version__": __version__,
    "__project__": __project__,
    "__short_name__": __short_name__,
    "__authors__": __authors__,
    "__emails__": __emails__,
    "__website__": __website__,
    "__source__": __source__,
    "__vcs__": __vcs__,
    "__copyright__": __copyright__,
    "__desc_short__": __desc_short__,
    "__desc_long__": __desc_long__,
}

from pymqm.mqm import (  # noqa: E402
    MQM_HEADER,
    CategoryStats,
    MqmFileError,
    MqmRecord,
    MqmStore,
    NegativeWeight,
    category_stats,
    cell_penalties,
    load_mqm,
)
