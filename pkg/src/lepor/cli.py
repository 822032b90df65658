"""Command line entry point: ``lepor score | meta-eval | tune``.

Exit codes: 0 success, 1 input or format error, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import meta_eval
from .io import (
    InputError,
    RunConfig,
    emit_report,
    load_segments,
    parse_grid,
    parse_param_config,
    read_manifest,
    read_scores,
    tune_report,
)
from .metrics import METRICS, score_segment, system_score
from .text import DEFAULT_PARAMS, InvalidParams
from .tuner import OBJECTIVES, PRESETS, grid_search

log = logging.getLogger("lepor")

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2

LEVELS = {"sentence": None, "system-a": "A", "system-b": "B"}


class ConfigError(Exception):
    pass


def _write(data: bytes, path):
    if path:
        with open(path, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_score(args):
    params = parse_param_config(args.params) if args.params else DEFAULT_PARAMS
    config = RunConfig(command="score", hypothesis=args.hyp, references=args.ref,
                       pos_hypothesis=args.pos_hyp, pos_references=args.pos_ref or [],
                       params=params, metric=args.metric, level=args.level, output=args.out,
                       format=args.format, lowercase=not args.case_sensitive,
                       smoothing=args.smoothing)
    corpus = load_segments(config)
    if params.w_hp > 0 and config.pos_hypothesis is None:
        raise ConfigError("w_hp > 0 requires --pos-hyp and --pos-ref files")
    scores = [score_segment(seg, params, config.metric, index=i, smoothing=config.smoothing)
              for i, seg in enumerate(corpus)]
    system = None
    strategy = LEVELS[config.level]
    if strategy is not None:
        if not scores:
            raise InputError("cannot compute a system score for an empty corpus")
        system = system_score(scores, config.metric, strategy, params)
    _write(emit_report(scores, system, config.format, config.metric, params), config.output)


def cmd_meta_eval(args):
    x = read_scores(args.metric_scores)
    y = read_scores(args.human_scores)
    if len(x) != len(y):
        raise InputError(f"line count mismatch: {args.metric_scores} has {len(x)} lines, "
                         f"{args.human_scores} has {len(y)}")
    if args.stat == "deltaavg":
        value = meta_eval.delta_avg(x, y, args.quantiles)
    else:
        value = meta_eval.STATISTICS[args.stat](x, y)
    note = ""
    if args.stat in ("spearman", "kendall"):
        tied = meta_eval.has_ties(x) or meta_eval.has_ties(y)
        if not tied:
            note = "\tno-ties"
        elif args.stat == "spearman":
            note = "\tties:average-ranks"
        else:
            note = "\tties:neither-pair"
    _write(f"{args.stat}\t{value:.6f}{note}\n".encode("utf-8"), args.out)


def cmd_tune(args):
    if args.grid:
        grid = parse_grid(args.grid, args.objective, args.strategy)
    else:
        base = PRESETS[args.preset]
        grid = type(base)(base.factor_weights, base.alpha_beta, base.hw_hp, base.ngram_weights,
                          base.windows, args.objective or base.objective,
                          args.strategy or base.strategy)
    hyps = read_manifest(args.systems_manifest)
    human = read_scores(args.human_scores)
    if len(hyps) != len(human):
        raise InputError(f"{args.systems_manifest} lists {len(hyps)} systems but "
                         f"{args.human_scores} has {len(human)} scores")
    pos_hyps = read_manifest(args.pos_manifest) if args.pos_manifest else [None] * len(hyps)
    if len(pos_hyps) != len(hyps):
        raise InputError("POS manifest and systems manifest differ in length")
    systems = []
    for hyp, pos_hyp in zip(hyps, pos_hyps):
        config = RunConfig(command="tune", hypothesis=hyp, references=args.ref,
                           pos_hypothesis=pos_hyp,
                           pos_references=(args.pos_ref or []) if pos_hyp else [],
                           lowercase=not args.case_sensitive)
        systems.append(load_segments(config))
    if any(p.w_hp > 0 for p in grid.points()) and args.pos_manifest is None:
        raise ConfigError("the grid mixes in POS scores; pass --pos-manifest and --pos-ref")
    try:
        result = grid_search(systems, human, grid, args.metric, args.smoothing)
    except ValueError as e:
        raise InputError(str(e)) from None
    _write(tune_report(result, grid, args.metric), args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="lepor", description="LEPOR family MT evaluation")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("score", help="score a hypothesis file against references")
    sc.add_argument("--hyp", required=True)
    sc.add_argument("--ref", action="append", required=True)
    sc.add_argument("--pos-hyp")
    sc.add_argument("--pos-ref", action="append")
    sc.add_argument("--metric", choices=METRICS, default="lepor")
    sc.add_argument("--level", choices=tuple(LEVELS), default="sentence")
    sc.add_argument("--params")
    sc.add_argument("--out")
    sc.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sc.add_argument("--smoothing", action="store_true", help="add-one n-gram smoothing (nlepor)")
    sc.add_argument("--case-sensitive", action="store_true")
    sc.set_defaults(func=cmd_score)

    me = sub.add_parser("meta-eval", help="compare metric scores with human scores")
    me.add_argument("--metric-scores", required=True)
    me.add_argument("--human-scores", required=True)
    me.add_argument("--stat", required=True,
                    choices=("pearson", "spearman", "kendall", "mae", "rmse", "deltaavg"))
    me.add_argument("--quantiles", type=int, default=2)
    me.add_argument("--out")
    me.set_defaults(func=cmd_meta_eval)

    tu = sub.add_parser("tune", help="grid-search parameters against human judgments")
    tu.add_argument("--systems-manifest", required=True)
    tu.add_argument("--ref", action="append", required=True)
    tu.add_argument("--pos-manifest")
    tu.add_argument("--pos-ref", action="append")
    tu.add_argument("--human-scores", required=True)
    src = tu.add_mutually_exclusive_group(required=True)
    src.add_argument("--grid")
    src.add_argument("--preset", choices=sorted(PRESETS))
    tu.add_argument("--metric", choices=METRICS, default="hlepor")
    tu.add_argument("--objective", choices=sorted(OBJECTIVES))
    tu.add_argument("--strategy", choices=("A", "B"))
    tu.add_argument("--smoothing", action="store_true")
    tu.add_argument("--case-sensitive", action="store_true")
    tu.add_argument("--out")
    tu.set_defaults(func=cmd_tune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        args.func(args)
    except (InvalidParams, ConfigError) as e:
        log.error("invalid configuration: %s", e)
        return EXIT_CONFIG
    except (InputError, ValueError) as e:
        log.error("%s", e)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
