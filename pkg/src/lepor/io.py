"""Parallel text/tag files, parameter configs and score reports."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from .metrics import SegmentScore, SystemScore
from .text import (
    DEFAULT_PARAMS,
    Corpus,
    InvalidParams,
    ParamSet,
    Segment,
    Sentence,
    TaggedSentence,
    tokenize,
    validate_params,
)
from .tuner import GridSpec, TuneResult


class InputError(Exception):
    """Malformed or inconsistent input files."""


@dataclass
class RunConfig:
    command: str
    hypothesis: Optional[str] = None
    references: List[str] = field(default_factory=list)
    pos_hypothesis: Optional[str] = None
    pos_references: List[str] = field(default_factory=list)
    params: ParamSet = DEFAULT_PARAMS
    metric: str = "lepor"
    level: str = "sentence"
    output: Optional[str] = None
    format: str = "tsv"
    lowercase: bool = True
    smoothing: bool = False


def read_lines(path) -> List[str]:
    """Lines of a UTF-8 file split on ``\\n``; a final newline does not add a line."""
    try:
        with open(path, encoding="utf-8", newline="") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not valid UTF-8 ({e.reason})") from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return lines


def _check_parallel(base_path, base_lines, other_path, other_lines):
    if len(other_lines) != len(base_lines):
        raise InputError(f"line count mismatch: {base_path} has {len(base_lines)} lines, "
                         f"{other_path} has {len(other_lines)}")


def _tag(sentence: Sentence, tag_line: str, path, lineno) -> TaggedSentence:
    tags = tag_line.split()
    if len(tags) != sentence.length:
        raise InputError(f"{path}:{lineno}: {len(tags)} tags for {sentence.length} tokens")
    return TaggedSentence(sentence, tuple(tags))


def load_segments(config: RunConfig) -> Corpus:
    """Line i of every file forms segment i."""
    if not config.references:
        raise InputError("at least one reference file is required")
    hyp_lines = read_lines(config.hypothesis)
    ref_lines = [read_lines(p) for p in config.references]
    for p, lines in zip(config.references, ref_lines):
        _check_parallel(config.hypothesis, hyp_lines, p, lines)

    tagged = config.pos_hypothesis is not None or bool(config.pos_references)
    if tagged:
        if config.pos_hypothesis is None or len(config.pos_references) != len(config.references):
            raise InputError("POS input needs one hypothesis tag file and one tag file per reference")
        pos_hyp = read_lines(config.pos_hypothesis)
        _check_parallel(config.hypothesis, hyp_lines, config.pos_hypothesis, pos_hyp)
        pos_refs = [read_lines(p) for p in config.pos_references]
        for p, lines in zip(config.pos_references, pos_refs):
            _check_parallel(config.hypothesis, hyp_lines, p, lines)

    segments = []
    for i, line in enumerate(hyp_lines):
        hyp = tokenize(line, config.lowercase)
        refs = tuple(tokenize(lines[i], config.lowercase) for lines in ref_lines)
        if not tagged:
            segments.append(Segment(hyp, refs))
            continue
        htags = _tag(hyp, pos_hyp[i], config.pos_hypothesis, i + 1)
        rtags = tuple(_tag(r, lines[i], p, i + 1)
                      for r, lines, p in zip(refs, pos_refs, config.pos_references))
        segments.append(Segment(hyp, refs, htags, rtags))
    return Corpus(tuple(segments))


PARAM_KEYS = {
    "alpha": "alpha", "beta": "beta", "w_lp": "w_lp", "w_npos": "w_npos", "w_hpr": "w_hpr",
    "ngram_weights": "ngram_weights", "window": "context_window", "w_hw": "w_hw", "w_hp": "w_hp",
}


def params_from_dict(doc) -> ParamSet:
    if not isinstance(doc, dict):
        raise InvalidParams("parameter config must be a JSON object")
    unknown = sorted(set(doc) - set(PARAM_KEYS))
    if unknown:
        raise InvalidParams(f"unknown parameter keys: {', '.join(unknown)}")
    kwargs = {PARAM_KEYS[k]: v for k, v in doc.items()}
    if "ngram_weights" in kwargs:
        w = kwargs["ngram_weights"]
        if not isinstance(w, list):
            raise InvalidParams("ngram_weights must be a list")
        kwargs["ngram_weights"] = tuple(w)
    return validate_params(ParamSet(**kwargs))


def parse_param_config(path) -> ParamSet:
    """Read a flat JSON parameter file; missing keys keep their defaults."""
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidParams(f"{path}: invalid JSON ({e.msg})") from None
    except OSError as e:
        raise InvalidParams(f"{path}: {e.strerror}") from None
    return params_from_dict(doc)


def params_to_dict(p: ParamSet) -> dict:
    return {"alpha": p.alpha, "beta": p.beta, "w_lp": p.w_lp, "w_npos": p.w_npos,
            "w_hpr": p.w_hpr, "ngram_weights": list(p.ngram_weights),
            "window": p.context_window, "w_hw": p.w_hw, "w_hp": p.w_hp}


TSV_COLUMNS = ("index", "LP", "NPD", "NPosPenal", "P", "R", "HPR", "score", "degenerate")


def _row(s: SegmentScore):
    f = s.factors
    return (f.lp, f.npd, f.npos_penal, f.precision, f.recall, f.hpr, s.score)


def emit_report(scores: Sequence[SegmentScore], system: Optional[SystemScore] = None,
                format: str = "tsv", metric: str = "lepor", params: Optional[ParamSet] = None) -> bytes:
    """Render segment scores (and optionally a system score) as TSV or JSON.

    In TSV a system score becomes a final row indexed ``system`` holding the
    factor means; its last column counts degenerate segments.
    """
    if format == "tsv":
        out = ["\t".join(TSV_COLUMNS)]
        for s in scores:
            out.append("\t".join([str(s.index)] + [f"{v:.6f}" for v in _row(s)]
                                 + [str(int(s.degenerate))]))
        if system is not None:
            m = system.factor_means
            vals = (m["lp"], m["npd"], m["npos_penal"], m["precision"], m["recall"], m["hpr"],
                    system.score)
            out.append("\t".join(["system"] + [f"{v:.6f}" for v in vals]
                                 + [str(sum(s.degenerate for s in scores))]))
        return ("\n".join(out) + "\n").encode("utf-8")
    if format == "json":
        segs = []
        for s in scores:
            entry = {"index": s.index}
            entry.update(zip(TSV_COLUMNS[1:-1], _row(s)))
            entry["degenerate"] = s.degenerate
            if s.pos_score is not None:
                entry["word_score"] = s.word_score
                entry["pos_score"] = s.pos_score
            segs.append(entry)
        doc = {
            "metric": metric,
            "params": params_to_dict(params) if params is not None else None,
            "system": None if system is None else {
                "strategy": system.strategy,
                "metric": system.metric,
                "score": system.score,
                "factor_means": system.factor_means,
            },
            "segments": segs,
        }
        return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def read_scores(path) -> List[float]:
    vals = []
    for i, line in enumerate(read_lines(path), 1):
        try:
            vals.append(float(line))
        except ValueError:
            raise InputError(f"{path}:{i}: not a number: {line!r}") from None
    return vals


def parse_grid(path, objective=None, strategy=None) -> GridSpec:
    """Grid file: a JSON object of candidate lists.

    Keys: ``factor_weights`` ([w_lp, w_npos, w_hpr] ratios), ``alpha_beta``,
    ``hw_hp``, ``ngram_weights``, ``window`` (list of ints), and optionally
    ``objective`` and ``strategy``.
    """
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidParams(f"{path}: invalid JSON ({e.msg})") from None
    except OSError as e:
        raise InvalidParams(f"{path}: {e.strerror}") from None
    if not isinstance(doc, dict):
        raise InvalidParams("grid file must be a JSON object")
    keys = {"factor_weights", "alpha_beta", "hw_hp", "ngram_weights", "window", "objective", "strategy"}
    unknown = sorted(set(doc) - keys)
    if unknown:
        raise InvalidParams(f"unknown grid keys: {', '.join(unknown)}")
    kwargs = {}
    for key in ("factor_weights", "alpha_beta", "hw_hp", "ngram_weights"):
        if key in doc:
            val = doc[key]
            if not isinstance(val, list) or not all(isinstance(r, list) for r in val):
                raise InvalidParams(f"{key} must be a list of lists")
            kwargs[key] = val
    if "window" in doc:
        if not isinstance(doc["window"], list):
            raise InvalidParams("window must be a list of integers")
        kwargs["windows"] = doc["window"]
    kwargs["objective"] = objective or doc.get("objective", "spearman")
    kwargs["strategy"] = strategy or doc.get("strategy", "A")
    try:
        return GridSpec(**kwargs)
    except TypeError as e:
        raise InvalidParams(str(e)) from None


def tune_report(result: TuneResult, grid: GridSpec, metric: str) -> bytes:
    doc = {
        "metric": metric,
        "objective": grid.objective,
        "strategy": grid.strategy,
        "best": {"params": params_to_dict(result.best_params), "objective": result.best_objective},
        "grid": [{"params": params_to_dict(p), "objective": None if v != v else v}
                 for p, v in result.table],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def read_manifest(path) -> List[str]:
    base = os.path.dirname(os.path.abspath(path))
    return [os.path.join(base, line.strip()) for line in read_lines(path) if line.strip()]
