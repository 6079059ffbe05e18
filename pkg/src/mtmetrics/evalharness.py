"""Corpus evaluation harness.

Runs any subset of the metrics over line-aligned files (or a two-column
TSV), emits before/after comparison tables with improvement rates, and
computes per-task winner matrices with pairwise metric-agreement
statistics. All aggregation uses a fixed fold order and segment scoring is
side-effect free, so sequential and threaded runs produce byte-identical
reports.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from ._version import SIGNATURE_VERSION
from .bleu import BleuConfig, BleuReport, bleu_corpus
from .errors import InputError
from .hlepor import HleporParams, hlepor_sentence
from .lexmetrics import MeteorParams, meteor_exact, rouge_l_f1
from .textnorm import TokenizerConfig, tokenize

METRICS = ("bleu", "hlepor", "meteor", "rouge-l")

#: Marker used in winner matrices when two systems tie exactly.
TIE = "TIE"

_SCALES = {"bleu": "0-100", "hlepor": "0-100", "meteor": "0-1", "rouge-l": "0-1"}


def _env_threads() -> int:
    raw = os.environ.get("MTMETRICS_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"MTMETRICS_THREADS must be an integer, got {raw!r}") from None
    return max(value, 0)


def _fmt_num(x: float) -> str:
    return format(x, "g")


@dataclass(frozen=True)
class EvalConfig:
    """Everything that can change a score, bundled so it can be disclosed."""

    tokenizer: TokenizerConfig = TokenizerConfig()
    hlepor_params: HleporParams = HleporParams()
    meteor_params: MeteorParams = MeteorParams()
    max_n: int = 4
    smoothing: str = "none"
    smooth_k: float = 1.0
    segment_bleu: bool = False

    def bleu_config(self) -> BleuConfig:
        return BleuConfig(self.max_n, self.smoothing, self.smooth_k, self.tokenizer)

    def segment_bleu_config(self) -> BleuConfig:
        # Per-segment BLEU forces exponential smoothing; raw per-order
        # precisions collapse to zero on almost every single sentence.
        return BleuConfig(self.max_n, "exp", 1.0, self.tokenizer)

    def to_dict(self) -> dict:
        return {
            "tokenize": self.tokenizer.scheme,
            "lowercase": self.tokenizer.lowercase,
            "max_n": self.max_n,
            "smoothing": self.smoothing,
            "smooth_k": self.smooth_k,
            "hlepor_params": {
                "alpha": self.hlepor_params.alpha,
                "beta": self.hlepor_params.beta,
                "n": self.hlepor_params.n,
                "w_lp": self.hlepor_params.w_lp,
                "w_npp": self.hlepor_params.w_npp,
                "w_hpr": self.hlepor_params.w_hpr,
            },
            "meteor_params": {
                "alpha": self.meteor_params.alpha,
                "beta": self.meteor_params.beta,
                "gamma": self.meteor_params.gamma,
            },
            "segment_bleu": self.segment_bleu,
        }


def run_signature(metrics: Sequence[str], config: EvalConfig) -> str:
    """Settings summary sufficient to re-run an evaluation."""
    hp = config.hlepor_params
    mp = config.meteor_params
    parts = [
        f"mteval:v{SIGNATURE_VERSION}",
        f"case:{config.tokenizer.case_label}",
        f"tok:{config.tokenizer.scheme_label}",
        "metrics:" + "+".join(metrics),
    ]
    if "bleu" in metrics:
        smooth = config.smoothing
        if smooth == "add-k":
            smooth += f"({_fmt_num(config.smooth_k)})"
        parts.append(f"smooth:{smooth}")
        parts.append(f"n:{config.max_n}")
        if config.segment_bleu:
            parts.append("seg-bleu:exp")
    if "hlepor" in metrics:
        parts.append(
            "hlepor:" + ",".join(
                _fmt_num(v) for v in (hp.alpha, hp.beta, hp.n, hp.w_lp, hp.w_npp, hp.w_hpr)
            )
        )
    if "meteor" in metrics:
        parts.append("meteor:" + ",".join(_fmt_num(v) for v in (mp.alpha, mp.beta, mp.gamma)))
    return "|".join(parts)


def read_lines(path) -> list[str]:
    """Read a UTF-8 text file, one segment per line.

    Undecodable bytes are reported with their line number instead of a bare
    UnicodeDecodeError.
    """
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    chunks = data.split(b"\n")
    if chunks and chunks[-1] == b"":
        chunks.pop()
    lines = []
    for number, chunk in enumerate(chunks, start=1):
        try:
            text = chunk.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"{path}: line {number}: undecodable bytes ({exc.reason})") from None
        lines.append(text.rstrip("\r"))
    return lines


def read_tsv(path) -> tuple[list[str], list[str]]:
    """Read a two-column hypothesis<TAB>reference file."""
    hyps = []
    refs = []
    for number, line in enumerate(read_lines(path), start=1):
        columns = line.split("\t")
        if len(columns) != 2:
            raise InputError(
                f"{path}: line {number}: expected 2 tab-separated columns, got {len(columns)}"
            )
        hyps.append(columns[0])
        refs.append(columns[1])
    return hyps, refs


@dataclass(frozen=True)
class MetricResult:
    corpus: float
    segments: tuple[float, ...] | None = None


@dataclass(frozen=True)
class EvaluationReport:
    """One corpus value per metric plus ordered per-segment score streams."""

    signature: str
    metrics: dict[str, MetricResult]
    config: EvalConfig
    counts: dict[str, int]
    bleu_report: BleuReport | None = None

    def to_dict(self) -> dict:
        metric_block = {}
        for metric_id, result in self.metrics.items():
            entry: dict = {"corpus": result.corpus}
            if result.segments is not None:
                entry["segments"] = list(result.segments)
            metric_block[metric_id] = entry
        return {
            "signature": self.signature,
            "metrics": metric_block,
            "config": self.config.to_dict(),
            "counts": dict(self.counts),
        }


def _validated_metrics(metrics: Iterable[str]) -> tuple[str, ...]:
    chosen = tuple(metrics)
    if not chosen:
        raise InputError("no metrics requested")
    unknown = [m for m in chosen if m not in METRICS]
    if unknown:
        raise InputError(
            f"unknown metric(s) {', '.join(unknown)}; available: {', '.join(METRICS)}"
        )
    if len(set(chosen)) != len(chosen):
        raise InputError("duplicate metrics requested")
    return chosen


def evaluate_pairs(hyps: Sequence[str], refs: Sequence[str],
                   metrics: Iterable[str] = METRICS,
                   config: EvalConfig | None = None,
                   threads: int | None = None) -> EvaluationReport:
    """Score in-memory segment pairs. See ``evaluate_corpus`` for files."""
    if config is None:
        config = EvalConfig()
    metric_ids = _validated_metrics(metrics)
    hyp_list = list(hyps)
    ref_list = list(refs)
    if len(hyp_list) != len(ref_list):
        raise InputError(
            f"segment count mismatch: {len(hyp_list)} hypotheses vs {len(ref_list)} references"
        )
    if not hyp_list:
        raise InputError("empty corpus")
    if threads is None:
        threads = _env_threads()

    hyp_seqs = [tokenize(text, config.tokenizer) for text in hyp_list]
    ref_seqs = [tokenize(text, config.tokenizer) for text in ref_list]

    want_hlepor = "hlepor" in metric_ids
    want_meteor = "meteor" in metric_ids
    want_rouge = "rouge-l" in metric_ids
    want_seg_bleu = "bleu" in metric_ids and config.segment_bleu
    seg_bleu_config = config.segment_bleu_config() if want_seg_bleu else None

    def score_segment(index: int) -> dict[str, float]:
        row: dict[str, float] = {}
        try:
            if want_hlepor:
                row["hlepor"] = hlepor_sentence(
                    hyp_seqs[index], ref_seqs[index], config.hlepor_params
                ).score
            if want_meteor:
                row["meteor"] = meteor_exact(
                    hyp_seqs[index], ref_seqs[index], config.meteor_params
                )
            if want_rouge:
                row["rouge-l"] = rouge_l_f1(hyp_seqs[index], ref_seqs[index]).f1
        except ValueError as exc:
            raise InputError(f"segment {index + 1}: {exc}") from exc
        if want_seg_bleu:
            if len(hyp_seqs[index]) == 0:
                row["bleu"] = 0.0
            else:
                row["bleu"] = bleu_corpus(
                    [hyp_list[index]], [ref_list[index]], seg_bleu_config
                ).score
        return row

    indices = range(len(hyp_list))
    if threads >= 2:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(score_segment, indices))
    else:
        rows = [score_segment(i) for i in indices]

    results: dict[str, MetricResult] = {}
    bleu_report = None
    for metric_id in metric_ids:
        if metric_id == "bleu":
            bleu_report = bleu_corpus(hyp_list, ref_list, config.bleu_config())
            segments = tuple(row["bleu"] for row in rows) if want_seg_bleu else None
            results["bleu"] = MetricResult(bleu_report.score, segments)
        elif metric_id == "hlepor":
            raw = [row["hlepor"] for row in rows]
            results["hlepor"] = MetricResult(
                100.0 * math.fsum(raw) / len(raw),
                tuple(100.0 * s for s in raw),
            )
        else:
            values = [row[metric_id] for row in rows]
            results[metric_id] = MetricResult(
                math.fsum(values) / len(values), tuple(values)
            )

    counts = {
        "segments": len(hyp_list),
        "hyp_tokens": sum(len(seq) for seq in hyp_seqs),
        "ref_tokens": sum(len(seq) for seq in ref_seqs),
    }
    return EvaluationReport(
        signature=run_signature(metric_ids, config),
        metrics=results,
        config=config,
        counts=counts,
        bleu_report=bleu_report,
    )


def evaluate_corpus(hyp_file, ref_file,
                    metrics: Iterable[str] = METRICS,
                    config: EvalConfig | None = None,
                    threads: int | None = None) -> EvaluationReport:
    """Score two line-aligned UTF-8 files against each other."""
    hyps = read_lines(hyp_file)
    refs = read_lines(ref_file)
    if len(hyps) != len(refs):
        raise InputError(
            f"line count mismatch: {hyp_file} has {len(hyps)} lines, "
            f"{ref_file} has {len(refs)} lines"
        )
    return evaluate_pairs(hyps, refs, metrics, config, threads)


def round_half_up(value: float, decimals: int) -> float:
    """Decimal rounding with halves away from zero (not banker's)."""
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def improvement_rate(before: float, after: float) -> float:
    """Percentage change from before to after, half-up rounded to 2 decimals.

    Negative results are drops. The base must be positive.
    """
    if before <= 0:
        raise InputError(f"improvement rate needs a positive base score, got {before}")
    return round_half_up(100.0 * (after - before) / before, 2)


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    before: float
    after: float
    rate_percent: float | None


@dataclass(frozen=True)
class ComparisonReport:
    signature: str
    rows: tuple[ComparisonRow, ...]

    def to_dict(self) -> dict:
        return {
            "signature": self.signature,
            "rows": [
                {
                    "metric": row.metric,
                    "before": row.before,
                    "after": row.after,
                    "rate_percent": row.rate_percent,
                }
                for row in self.rows
            ],
        }


def compare_files(before_file, after_file, ref_file,
                  metrics: Iterable[str] = METRICS,
                  config: EvalConfig | None = None,
                  threads: int | None = None) -> ComparisonReport:
    """Score two systems against one reference and rate the change."""
    metric_ids = _validated_metrics(metrics)
    before_report = evaluate_corpus(before_file, ref_file, metric_ids, config, threads)
    after_report = evaluate_corpus(after_file, ref_file, metric_ids, config, threads)
    rows = []
    for metric_id in metric_ids:
        before = before_report.metrics[metric_id].corpus
        after = after_report.metrics[metric_id].corpus
        rate = improvement_rate(before, after) if before > 0 else None
        rows.append(ComparisonRow(metric_id, before, after, rate))
    return ComparisonReport(before_report.signature, tuple(rows))


@dataclass
class ScoreTable:
    """(system, task, metric) -> value rows; triples must be unique."""

    rows: list[tuple[str, str, str, float]] = field(default_factory=list)
    scales: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen = set()
        for system, task, metric, _ in self.rows:
            key = (system, task, metric)
            if key in seen:
                raise InputError(f"duplicate score table entry {key}")
            seen.add(key)

    def add(self, system: str, task: str, metric: str, value: float) -> None:
        if any((s, t, m) == (system, task, metric) for s, t, m, _ in self.rows):
            raise InputError(f"duplicate score table entry {(system, task, metric)}")
        self.rows.append((system, task, metric, float(value)))

    def systems(self) -> list[str]:
        return sorted({row[0] for row in self.rows})

    def tasks(self) -> list[str]:
        return sorted({row[1] for row in self.rows})

    def metric_ids(self) -> list[str]:
        return sorted({row[2] for row in self.rows})

    def to_dict(self) -> dict:
        body: dict = {
            "rows": [
                {"system": s, "task": t, "metric": m, "value": v}
                for s, t, m, v in self.rows
            ]
        }
        if self.scales:
            body["scales"] = dict(sorted(self.scales.items()))
        return body

    @classmethod
    def from_dict(cls, data: dict) -> "ScoreTable":
        if not isinstance(data, dict) or "rows" not in data:
            raise InputError("score table JSON must be an object with a 'rows' array")
        rows = []
        for index, row in enumerate(data["rows"], start=1):
            try:
                rows.append(
                    (str(row["system"]), str(row["task"]), str(row["metric"]),
                     float(row["value"]))
                )
            except (TypeError, KeyError) as exc:
                raise InputError(
                    f"score table row {index} needs system/task/metric/value: {exc}"
                ) from None
        return cls(rows, dict(data.get("scales", {})))


@dataclass(frozen=True)
class WinnerMatrix:
    """Per-(task, metric) winner plus pairwise metric agreement over tasks."""

    winners: dict[tuple[str, str], str]
    agreement: dict[tuple[str, str], float]
    compared_tasks: dict[tuple[str, str], int]
    skipped: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "winners": [
                {"task": task, "metric": metric, "winner": winner}
                for (task, metric), winner in sorted(self.winners.items())
            ],
            "agreement": [
                {
                    "metrics": [a, b],
                    "fraction": fraction,
                    "tasks": self.compared_tasks[(a, b)],
                }
                for (a, b), fraction in sorted(self.agreement.items())
            ],
            "skipped": [
                {"task": task, "metric": metric} for task, metric in self.skipped
            ],
        }


def winner_matrix(table: ScoreTable, decimals: int | None = None) -> WinnerMatrix:
    """Who wins each (task, metric) cell, and how often metric pairs agree.

    A cell is decided only when every system in the table has a value for
    it; incomplete cells are reported as skipped. Exact equality (after the
    optional half-up rounding to ``decimals``) yields the tie marker.
    """
    if not table.rows:
        raise InputError("empty score table")
    systems = table.systems()
    values: dict[tuple[str, str], dict[str, float]] = {}
    for system, task, metric, value in table.rows:
        if decimals is not None:
            value = round_half_up(value, decimals)
        values.setdefault((task, metric), {})[system] = value

    winners: dict[tuple[str, str], str] = {}
    skipped = []
    for cell in sorted(values):
        cell_values = values[cell]
        if len(cell_values) != len(systems):
            skipped.append(cell)
            continue
        best = max(cell_values.values())
        leaders = sorted(s for s, v in cell_values.items() if v == best)
        winners[cell] = leaders[0] if len(leaders) == 1 else TIE

    metrics = table.metric_ids()
    agreement: dict[tuple[str, str], float] = {}
    compared: dict[tuple[str, str], int] = {}
    for i, metric_a in enumerate(metrics):
        for metric_b in metrics[i + 1:]:
            shared = [
                task for task in table.tasks()
                if (task, metric_a) in winners and (task, metric_b) in winners
            ]
            if not shared:
                continue
            agree = sum(
                1 for task in shared
                if winners[(task, metric_a)] == winners[(task, metric_b)]
            )
            agreement[(metric_a, metric_b)] = agree / len(shared)
            compared[(metric_a, metric_b)] = len(shared)
    return WinnerMatrix(winners, agreement, compared, tuple(skipped))


def _table_text(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def _ngram_header(order: int) -> str:
    names = {1: "uni-gram", 2: "bi-gram", 3: "tri-gram"}
    return names.get(order, f"{order}-gram")


def _render_bleu_table(report: BleuReport) -> str:
    headers = [_ngram_header(n) for n in range(1, len(report.precisions) + 1)]
    headers += ["BP", "Overall"]
    row = [f"{p:.2f}" for p in report.precisions]
    row += [f"{report.bp:.3f}", f"{report.score:.2f}"]
    return _table_text(headers, [row]) + f"\nsignature: {report.signature}"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def render_report(data, fmt: str = "table") -> str:
    """Render a report object as an aligned text table or JSON.

    Accepts BleuReport, EvaluationReport, ComparisonReport, WinnerMatrix,
    and ScoreTable. Output is byte-deterministic for identical inputs.
    """
    if fmt not in ("table", "json"):
        raise ValueError(f"unknown format {fmt!r}")

    if isinstance(data, BleuReport):
        if fmt == "json":
            return _json_text({
                "signature": data.signature,
                "precisions": list(data.precisions),
                "bp": data.bp,
                "score": data.score,
                "hyp_tokens": data.hyp_tokens,
                "ref_tokens": data.ref_tokens,
            })
        return _render_bleu_table(data)

    if isinstance(data, EvaluationReport):
        if fmt == "json":
            return _json_text(data.to_dict())
        rows = [
            [metric_id, f"{result.corpus:.4f}", _SCALES[metric_id]]
            for metric_id, result in data.metrics.items()
        ]
        text = _table_text(["metric", "corpus", "scale"], rows)
        if data.bleu_report is not None:
            text += "\n\n" + _render_bleu_table(data.bleu_report)
            text += f"\nsignature: {data.signature}"
        else:
            text += f"\nsignature: {data.signature}"
        return text

    if isinstance(data, ComparisonReport):
        if fmt == "json":
            return _json_text(data.to_dict())
        rows = []
        for row in data.rows:
            rate = "n/a" if row.rate_percent is None else f"{row.rate_percent:+.2f}%"
            rows.append([row.metric, f"{row.before:.4f}", f"{row.after:.4f}", rate])
        text = _table_text(["metric", "before", "after", "rate"], rows)
        return text + f"\nsignature: {data.signature}"

    if isinstance(data, WinnerMatrix):
        if fmt == "json":
            return _json_text(data.to_dict())
        rows = [
            [task, metric, winner]
            for (task, metric), winner in sorted(data.winners.items())
        ]
        text = _table_text(["task", "metric", "winner"], rows)
        if data.agreement:
            agree_rows = [
                [f"{a} vs {b}", f"{fraction:.4f}", str(data.compared_tasks[(a, b)])]
                for (a, b), fraction in sorted(data.agreement.items())
            ]
            text += "\n\n" + _table_text(["metric pair", "agreement", "tasks"], agree_rows)
        if data.skipped:
            text += "\n\nskipped cells: " + ", ".join(
                f"{task}/{metric}" for task, metric in data.skipped
            )
        return text

    if isinstance(data, ScoreTable):
        if fmt == "json":
            return _json_text(data.to_dict())
        rows = [
            [system, task, metric, f"{value:g}"]
            for system, task, metric, value in sorted(data.rows)
        ]
        return _table_text(["system", "task", "metric", "value"], rows)

    raise TypeError(f"cannot render {type(data).__name__}")
