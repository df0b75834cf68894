"""Scoring of prediction files against gold pair instances.

Accuracy counts every gold instance in the denominator: unparseable
outputs are recorded as ``invalid`` and score as incorrect, and a gold
instance with no prediction is a hard error, because silently skipping
either would fabricate accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .prompts import FormatSpec, format_by_kind, parse_output
from .records import DataError, Harder, PairInstance

#: ``format`` prefix marking predictions that carry a literal
#: text1/text2/invalid verdict instead of generated model text.
BASELINE_PREFIX = "baseline:"


@dataclass(frozen=True)
class PredictionRecord:
    """One model (or baseline) output for one pair instance."""

    instance_id: str
    raw_output: str
    format_kind: str
    epoch: int | None = None


@dataclass
class DistanceCell:
    """Accuracy within one level-distance stratum."""

    total: int = 0
    correct: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass
class EvalReport:
    """Pairwise accuracy totals plus the per-label-distance breakdown."""

    total: int
    correct: int
    invalid: int
    by_distance: dict[int, DistanceCell] = field(default_factory=dict)
    system: str = ""
    train_corpus: str = ""
    test_corpus: str = ""
    epoch: int | None = None

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def row_label(self) -> str:
        system = self.system or "model"
        train = self.train_corpus or "None"
        return f"{system} / {train}"

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "train_corpus": self.train_corpus,
            "test_corpus": self.test_corpus,
            "epoch": self.epoch,
            "total": self.total,
            "correct": self.correct,
            "invalid": self.invalid,
            "accuracy": self.accuracy,
            "by_distance": {
                str(d): {"total": c.total, "correct": c.correct, "accuracy": c.accuracy}
                for d, c in sorted(self.by_distance.items())
            },
        }


def parse_prediction(record: PredictionRecord, specs: dict[str, FormatSpec]) -> Harder | None:
    """Interpret one raw output according to its format."""
    if record.format_kind.startswith(BASELINE_PREFIX):
        verdict = record.raw_output.strip().casefold()
        if verdict == Harder.TEXT1.value:
            return Harder.TEXT1
        if verdict == Harder.TEXT2.value:
            return Harder.TEXT2
        return None
    spec = specs.get(record.format_kind)
    if spec is None:
        try:
            spec = format_by_kind(record.format_kind)
        except ValueError:
            raise DataError(
                f"prediction {record.instance_id}: unknown format {record.format_kind!r}"
            ) from None
    return parse_output(record.raw_output, spec)


def _preview(ids: list[str], limit: int = 10) -> str:
    shown = ", ".join(sorted(ids)[:limit])
    extra = len(ids) - limit
    return shown + (f", ... ({extra} more)" if extra > 0 else "")


def score(
    predictions: list[PredictionRecord],
    gold: list[PairInstance],
    specs: dict[str, FormatSpec] | None = None,
    system: str = "",
    train_corpus: str = "",
    test_corpus: str = "",
) -> EvalReport:
    """Score one prediction per gold instance into an ``EvalReport``.

    Hard errors: a prediction whose id is not in gold, two predictions
    for one id, a gold instance with no prediction, or predictions from
    mixed epochs (group per epoch before scoring).
    """
    specs = specs or {}
    gold_by_id: dict[str, PairInstance] = {}
    for inst in gold:
        if inst.instance_id in gold_by_id:
            raise DataError(f"duplicate gold instance id {inst.instance_id}")
        gold_by_id[inst.instance_id] = inst

    epochs = {p.epoch for p in predictions}
    if len(epochs) > 1:
        raise DataError(f"predictions mix epochs {sorted(epochs, key=str)}; group before scoring")

    seen: set[str] = set()
    unmatched = [p.instance_id for p in predictions if p.instance_id not in gold_by_id]
    if unmatched:
        raise DataError(f"predictions with no gold instance: {_preview(unmatched)}")

    total = correct = invalid = 0
    by_distance: dict[int, DistanceCell] = {}
    for pred in predictions:
        if pred.instance_id in seen:
            raise DataError(f"duplicate prediction for instance {pred.instance_id}")
        seen.add(pred.instance_id)
        inst = gold_by_id[pred.instance_id]
        verdict = parse_prediction(pred, specs)
        cell = by_distance.setdefault(inst.level_distance, DistanceCell())
        total += 1
        cell.total += 1
        if verdict is None:
            invalid += 1
        elif verdict is inst.gold:
            correct += 1
            cell.correct += 1

    missing = [i for i in gold_by_id if i not in seen]
    if missing:
        raise DataError(f"gold instances with no prediction: {_preview(missing)}")

    return EvalReport(
        total=total,
        correct=correct,
        invalid=invalid,
        by_distance=by_distance,
        system=system,
        train_corpus=train_corpus,
        test_corpus=test_corpus,
        epoch=next(iter(epochs)) if predictions else None,
    )


def merge_reports(reports: list[EvalReport]) -> EvalReport:
    """Combine reports over disjoint prediction shards by summing counts.

    Associative and commutative, so scoring shards separately and
    merging equals scoring everything at once.
    """
    if not reports:
        raise ValueError("cannot merge zero reports")
    head = reports[0]
    for r in reports[1:]:
        if (r.system, r.train_corpus, r.test_corpus, r.epoch) != (
            head.system,
            head.train_corpus,
            head.test_corpus,
            head.epoch,
        ):
            raise DataError("cannot merge reports from different runs")
    by_distance: dict[int, DistanceCell] = {}
    for r in reports:
        for d, cell in r.by_distance.items():
            agg = by_distance.setdefault(d, DistanceCell())
            agg.total += cell.total
            agg.correct += cell.correct
    return EvalReport(
        total=sum(r.total for r in reports),
        correct=sum(r.correct for r in reports),
        invalid=sum(r.invalid for r in reports),
        by_distance=by_distance,
        system=head.system,
        train_corpus=head.train_corpus,
        test_corpus=head.test_corpus,
        epoch=head.epoch,
    )


def best_epoch(reports: list[EvalReport]) -> tuple[int, EvalReport]:
    """Report with maximum accuracy; ties break toward the smaller epoch."""
    if not reports:
        raise ValueError("no reports to select a best epoch from")
    if any(r.epoch is None for r in reports):
        raise DataError("best-epoch selection requires an epoch on every report")
    pairs = {(r.train_corpus, r.test_corpus) for r in reports}
    if len(pairs) > 1:
        raise DataError(f"reports span multiple train/test pairs: {sorted(pairs)}")
    epochs = [r.epoch for r in reports]
    if len(set(epochs)) != len(epochs):
        raise DataError("duplicate epochs in best-epoch selection")
    chosen = min(reports, key=lambda r: (-r.accuracy, r.epoch))
    return chosen.epoch, chosen  # type: ignore[return-value]


def format_accuracy(accuracy: float, epoch: int | None = None) -> str:
    """Render accuracy, with the chosen epoch bracketed when known."""
    text = f"{accuracy:.3f}"
    return f"{text}({epoch})" if epoch is not None else text


def is_in_domain(train_corpus: str, test_corpus: str) -> bool:
    """Whether the test corpus was part of (joint) training data."""
    parts = {p.strip().casefold() for p in train_corpus.split("+") if p.strip()}
    return test_corpus.strip().casefold() in parts


@dataclass
class ResultMatrix:
    """Accuracy grid: rows are system/train-data, columns test corpora.

    In-domain cells (test corpus seen in training) are wrapped in
    brackets in the text rendering to keep them visually distinct from
    cross-domain cells.
    """

    rows: list[str]
    columns: list[str]
    cells: dict[tuple[str, str], EvalReport]

    def to_text(self) -> str:
        header = ["system / train data"] + list(self.columns)
        lines = [header]
        for row in self.rows:
            line = [row]
            for col in self.columns:
                report = self.cells.get((row, col))
                if report is None:
                    line.append("-")
                    continue
                text = format_accuracy(report.accuracy, report.epoch)
                if is_in_domain(report.train_corpus, report.test_corpus):
                    text = f"[{text}]"
                line.append(text)
            lines.append(line)
        widths = [max(len(r[i]) for r in lines) for i in range(len(header))]
        rendered = [
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip()
            for line in lines
        ]
        rendered.append("[...] = in-domain (test corpus seen in training)")
        return "\n".join(rendered)

    def to_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [
                {
                    "label": row,
                    "cells": {
                        col: {
                            "accuracy": self.cells[(row, col)].accuracy,
                            "epoch": self.cells[(row, col)].epoch,
                            "total": self.cells[(row, col)].total,
                            "in_domain": is_in_domain(
                                self.cells[(row, col)].train_corpus,
                                self.cells[(row, col)].test_corpus,
                            ),
                        }
                        for col in self.columns
                        if (row, col) in self.cells
                    },
                }
                for row in self.rows
            ],
        }


def matrix(reports: list[EvalReport]) -> ResultMatrix:
    """Arrange reports into the accuracy grid.

    Rows and columns appear in first-appearance order.  When several
    reports land in one cell (per-epoch runs), the cell keeps the
    best-accuracy report, ties toward the smaller epoch.
    """
    rows: list[str] = []
    columns: list[str] = []
    cells: dict[tuple[str, str], EvalReport] = {}
    for report in reports:
        row, col = report.row_label(), report.test_corpus or "unknown"
        if row not in rows:
            rows.append(row)
        if col not in columns:
            columns.append(col)
        current = cells.get((row, col))
        if current is None:
            cells[(row, col)] = report
        else:
            ranked = sorted(
                [current, report],
                key=lambda r: (-r.accuracy, r.epoch if r.epoch is not None else -1),
            )
            cells[(row, col)] = ranked[0]
    return ResultMatrix(rows=rows, columns=columns, cells=cells)
