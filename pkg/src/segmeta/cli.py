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
Command line interface::

    segmeta evaluate --human mqm.tsv --metric comet=comet.tsv --metric bleu=bleu.tsv
    segmeta noise --human mqm.tsv --kind segment --levels 1,5,10,25 --seed 7
    segmeta oracle --mqm annotations.tsv --format json --out oracle.json
    segmeta synth --systems 20 --segments 500 --seed 7 --out mqm.tsv

Exit codes: 0 on success, 1 for unusable input, 2 when a statistic cannot
be computed on the data.
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import gettext
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

from pymqm import MqmFileError, load_mqm
from segmeta.errors import DegenerateStatistic, EmptyIntersection, InputError, NoRecords
from segmeta.matrix import load_scores, pair, write_scores
from segmeta.metametrics import ALL_STATISTICS, parse_statistics, score_all
from segmeta.noise import DEFAULT_REPLICATES, NoiseKind, sweep, write_curves
from segmeta.oracle import alignment_report, template_from_records
from segmeta.report import build_ranking, write_oracle_report, write_ranking
from segmeta.synthetic import SENTINEL_KINDS, mqm_like_scores, sentinel_scores

# public objects
__all__ = ["RunConfig", "main", "build_parser", "EXIT_OK", "EXIT_INPUT", "EXIT_DEGENERATE"]

# logger
logger = logging.getLogger(__name__)

# translation
_ = gettext.translation("segmeta", fallback=True).gettext

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2

DEFAULT_SEED = 0
DEFAULT_STATISTICS = ",".join(statistic.value for statistic in ALL_STATISTICS)

_SEED_LIMIT = 1 << 64


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    Everything a command depends on. The seed is always set, so it is echoed
    into every report even when the default was used.
    """

    command: str
    seed: int = DEFAULT_SEED
    human: Optional[str] = None
    metrics: Tuple[Tuple[str, str], ...] = ()
    mqm: Optional[str] = None
    statistics: Tuple[str, ...] = ()
    kind: Optional[str] = None
    levels: Tuple[float, ...] = ()
    replicates: Optional[int] = None
    systems: Optional[int] = None
    segments: Optional[int] = None
    sentinel: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None

    @classmethod
    def from_args(cls, args):
        fields = {field.name for field in dataclasses.fields(cls)}
        values = {
            name: value
            for name, value in vars(args).items()
            if name in fields and value is not None
        }
        for name in ("metrics", "statistics", "levels"):
            if name in values:
                values[name] = tuple(values[name])
        return cls(**values)

    def echo(self):
        """The fields set for this command, in declaration order."""
        echoed = {}
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if field.name == "seed" or value not in (None, ()):
                if field.name == "metrics":
                    value = ["{}={}".format(name, path) for name, path in value]
                echoed[field.name] = list(value) if isinstance(value, tuple) else value
        return echoed


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "{}: error: {}\n".format(self.prog, message))


def _statistics(text):
    try:
        return [statistic.value for statistic in parse_statistics(text)]
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _metric(text):
    name, separator, path = text.partition("=")
    if not separator or not name or not path:
        raise argparse.ArgumentTypeError(
            _("expected NAME=PATH, got {!r}").format(text)
        )
    return name, path


def _levels(text):
    try:
        return [float(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(_("levels must be numbers: {!r}").format(text))


def _seed(text):
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(_("seed must be an integer: {!r}").format(text))
    if not 0 <= seed < _SEED_LIMIT:
        raise argparse.ArgumentTypeError(_("seed must be a 64-bit unsigned integer"))
    return seed


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(_("expected an integer: {!r}").format(text))
    if value < 1:
        raise argparse.ArgumentTypeError(_("must be at least 1"))
    return value


def build_parser():
    parser = _Parser(
        prog="segmeta", description=_("Segment-level meta-evaluation of MT metrics.")
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help=_("log progress (-v) or diagnostics (-vv) to stderr"),
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def output(command, formats=True):
        command.add_argument("--out", help=_("output file, standard output if omitted"))
        if formats:
            command.add_argument("--format", choices=("tsv", "json"), default="tsv")

    def stats(command):
        command.add_argument(
            "--stats",
            dest="statistics",
            type=_statistics,
            default=_statistics(DEFAULT_STATISTICS),
            help=_("comma separated statistics (default: %(default)s)"),
        )

    evaluate = commands.add_parser("evaluate", help=_("score and rank metrics"))
    evaluate.add_argument("--human", required=True, help=_("human scores file"))
    evaluate.add_argument(
        "--metric",
        dest="metrics",
        action="append",
        type=_metric,
        required=True,
        metavar="NAME=PATH",
        help=_("metric scores file, repeatable"),
    )
    stats(evaluate)
    output(evaluate)

    noise = commands.add_parser("noise", help=_("score degradation under noise"))
    noise.add_argument("--human", required=True, help=_("human scores file"))
    noise.add_argument(
        "--kind", required=True, choices=[kind.value for kind in NoiseKind]
    )
    noise.add_argument(
        "--levels",
        required=True,
        type=_levels,
        help=_("comma separated levels, write --levels=-100,-1000 for negatives"),
    )
    noise.add_argument("--replicates", type=_count, default=DEFAULT_REPLICATES)
    noise.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    stats(noise)
    output(noise, formats=False)

    oracle = commands.add_parser("oracle", help=_("error category oracles"))
    oracle.add_argument("--mqm", required=True, help=_("MQM annotations file"))
    oracle.add_argument(
        "--human",
        help=_("scores file whose axes to use, the annotated cells if omitted"),
    )
    stats(oracle)
    output(oracle)

    synth = commands.add_parser("synth", help=_("write synthetic scores"))
    synth.add_argument("--systems", type=_count, default=20)
    synth.add_argument("--segments", type=_count, default=500)
    synth.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    synth.add_argument(
        "--sentinel",
        choices=SENTINEL_KINDS,
        help=_("write a sentinel metric for --human instead of human scores"),
    )
    synth.add_argument("--human", help=_("human scores file, for --sentinel"))
    output(synth, formats=False)
    return parser


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _score_metric(human, statistics, metric):
    name, path = metric
    try:
        d = pair(load_scores(path), human)
    except EmptyIntersection as error:
        raise EmptyIntersection("{}: {}".format(name, error))
    logger.info("scoring %s on %d systems x %d segments", name, *d.x.shape)
    try:
        return score_all(d, statistics)
    except DegenerateStatistic as error:
        raise type(error)("{}: {}".format(name, error))


def cmd_evaluate(config):
    names = [name for name, _path in config.metrics]
    if len(set(names)) != len(names):
        raise InputError(_("metric names must be unique"))
    human = load_scores(config.human)
    with ThreadPoolExecutor(thread_name_prefix="evaluate") as pool:
        results = list(
            pool.map(
                lambda metric: _score_metric(human, config.statistics, metric),
                config.metrics,
            )
        )
    table = build_ranking(dict(zip(names, results)), config.statistics)
    with _output(config.out) as fh:
        write_ranking(table, fh, config.echo(), config.format)


def cmd_noise(config):
    human = load_scores(config.human)
    curves = sweep(
        human,
        config.statistics,
        NoiseKind(config.kind),
        config.levels,
        config.replicates,
        config.seed,
    )
    with _output(config.out) as fh:
        write_curves(curves, fh)


def cmd_oracle(config):
    records = load_mqm(config.mqm)
    if not records:
        raise NoRecords(_("{}: no records").format(config.mqm))
    if config.human is None:
        axes = template_from_records(records)
    else:
        axes = load_scores(config.human)
    report = alignment_report(records, axes, config.statistics)
    with _output(config.out) as fh:
        write_oracle_report(report, fh, config.echo(), config.format)


def cmd_synth(config):
    if config.sentinel is None:
        scores = mqm_like_scores(config.systems, config.segments, config.seed)
    else:
        if config.human is None:
            raise InputError(_("--sentinel needs --human"))
        scores = sentinel_scores(load_scores(config.human), config.sentinel, config.seed)
    comments = ["{}={}".format(key, value) for key, value in config.echo().items()]
    with _output(config.out) as fh:
        write_scores(scores, fh, comments)


_COMMANDS = {
    "evaluate": cmd_evaluate,
    "noise": cmd_noise,
    "oracle": cmd_oracle,
    "synth": cmd_synth,
}


def _configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, format="%(levelname)s:%(name)s: %(message)s", stream=sys.stderr
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    config = RunConfig.from_args(args)
    logger.debug("running %r", config)
    try:
        _COMMANDS[config.command](config)
    except (InputError, MqmFileError) as error:
        logger.error("%s", error)
        return EXIT_INPUT
    except DegenerateStatistic as error:
        logger.error("%s", error)
        return EXIT_DEGENERATE
    except OSError as error:
        logger.error("%s", error)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
