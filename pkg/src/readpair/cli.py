"""Command-line pipeline: prepare, baseline, evaluate, formats.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(malformed corpora, join failures, empty inputs).
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, asdict
from pathlib import Path

import click

from . import __version__
from .adapters import ADAPTERS, BUILTIN_LEVEL_MAPS, CORPUS_KINDS, PARALLEL, ingest
from .evaluation import (
    BASELINE_PREFIX,
    EvalReport,
    PredictionRecord,
    best_epoch,
    format_accuracy,
    matrix,
    score,
)
from .fileio import (
    config_hash,
    read_gold_file,
    read_manifest,
    read_prediction_file,
    write_gold_file,
    write_jsonl,
    write_manifest,
    write_prediction_file,
    write_rendered_file,
)
from .formulas import FleschKincaidRanker
from .permute import permute
from .prompts import (
    DEFAULT_TOKEN_BUDGET,
    DISPLAY_NAMES,
    FormatKind,
    builtin_formats,
    format_by_kind,
    render,
)
from .records import DataError, Harder, PairInstance
from .splitting import INSTANCE_LEVEL, SPLIT_MODES, check_ratios, train_dev_test_split

BUCKETS = ("train", "dev", "test")

#: Reference fine-tuning defaults recorded in every manifest so a
#: downstream trainer can reproduce runs from the same file.
TRAINER_DEFAULTS = {
    "batch_size": 8,
    "learning_rate": 1e-5,
    "epochs": {"osen": 30, "news": 3},
    "max_sequence_length": 512,
    "decode": "greedy",
}


@dataclass
class PipelineConfig:
    corpus_path: str
    adapter: str
    corpus_kind: str
    corpus_name: str
    level_map: str | None
    formats: tuple[str, ...]
    ratios: tuple[float, float, float]
    seed: int
    split_mode: str
    token_budget: int

    def hash(self) -> str:
        return config_hash(asdict(self))


def _parse_ratios(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise click.UsageError(f"ratios must be three comma-separated numbers, got {text!r}")
    try:
        return check_ratios(parts)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.version_option(version=__version__, prog_name="readpair")
def cli() -> None:
    """Pairwise readability pipeline."""


@cli.command("formats")
def cmd_formats() -> None:
    """Print the nine built-in input-output formats."""
    for spec in builtin_formats():
        click.echo(DISPLAY_NAMES[spec.kind])
        click.echo(f"  input:  {spec.table_input()}")
        click.echo(f"  target: {spec.table_targets()}")
        click.echo()


@cli.command("prepare")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--adapter", type=click.Choice(ADAPTERS), default="generic_rows", show_default=True)
@click.option("--kind", "corpus_kind", type=click.Choice(CORPUS_KINDS), default=None,
              help="Defaults to parallel for osen_dirs/newsela_meta; required for generic_rows.")
@click.option("--name", "corpus_name", default=None, help="Corpus tag; defaults to the path stem.")
@click.option("--levels", "level_map", default=None,
              help=f"Builtin map ({', '.join(BUILTIN_LEVEL_MAPS)}) or a label<TAB>rank file.")
@click.option("--format", "format_names", multiple=True, default=("all",), show_default=True,
              help="Format kind(s) to render, or 'all'.")
@click.option("--ratios", default="0.6,0.2,0.2", show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--split-mode", type=click.Choice(SPLIT_MODES), default=INSTANCE_LEVEL,
              show_default=True)
@click.option("--budget", "token_budget", type=int, default=DEFAULT_TOKEN_BUDGET,
              show_default=True, help="Whitespace-token budget per text.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def cmd_prepare(
    corpus_path: str,
    adapter: str,
    corpus_kind: str | None,
    corpus_name: str | None,
    level_map: str | None,
    format_names: tuple[str, ...],
    ratios: str,
    seed: int,
    split_mode: str,
    token_budget: int,
    out_dir: str,
) -> None:
    """Ingest a corpus, permute, split, and export rendered + gold files."""
    if corpus_kind is None:
        if adapter == "generic_rows":
            raise click.UsageError("--kind is required with the generic_rows adapter")
        corpus_kind = PARALLEL
    if corpus_name is None:
        corpus_name = Path(corpus_path).stem.lower() or "corpus"
    if level_map is None and adapter == "osen_dirs":
        level_map = "osen"
    kinds = _resolve_format_names(format_names)
    if token_budget < 1:
        raise click.UsageError("--budget must be >= 1")

    config = PipelineConfig(
        corpus_path=str(corpus_path),
        adapter=adapter,
        corpus_kind=corpus_kind,
        corpus_name=corpus_name,
        level_map=level_map,
        formats=tuple(k.value for k in kinds),
        ratios=_parse_ratios(ratios),
        seed=seed,
        split_mode=split_mode,
        token_budget=token_budget,
    )

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest_path = out / "manifest.json"
    if manifest_path.exists():
        existing = read_manifest(manifest_path)
        if existing.get("config_hash") == config.hash():
            click.echo(f"already prepared (config hash {config.hash()}); nothing to do")
            return
        raise click.UsageError(
            f"{out} already holds artifacts for config hash "
            f"{existing.get('config_hash')}; outputs are write-once per config, "
            "use a fresh --out directory"
        )

    corpus = ingest(corpus_path, corpus_kind, adapter, corpus_name, level_map)
    instances = permute(corpus)
    buckets = train_dev_test_split(instances, config.ratios, seed=seed, mode=split_mode)

    written: list[Path] = []
    try:
        counts: dict[str, int] = {}
        files: dict[str, str] = {}
        for bucket_name, bucket in zip(BUCKETS, buckets):
            gold_path = out / f"{corpus_name}.{bucket_name}.gold"
            write_gold_file(gold_path, bucket)
            written.append(gold_path)
            counts[bucket_name] = len(bucket)
            files[gold_path.name] = f"gold/{bucket_name}"
            for kind in kinds:
                spec = format_by_kind(kind)
                rendered_path = out / f"{corpus_name}.{kind.value}.{bucket_name}.txtpairs"
                write_rendered_file(
                    rendered_path,
                    (render(inst, spec, token_budget) for inst in bucket),
                )
                written.append(rendered_path)
                files[rendered_path.name] = f"rendered/{kind.value}/{bucket_name}"

        manifest = {
            "config": asdict(config),
            "config_hash": config.hash(),
            "counts": {"instances": len(instances), **counts},
            "files": files,
            "shuffle_rng": "python-random-mersenne-twister",
            "trainer_defaults": TRAINER_DEFAULTS,
            "version": __version__,
        }
        write_manifest(manifest_path, manifest)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise

    click.echo(
        f"prepared {len(instances)} instances from corpus {corpus_name!r} "
        f"(train/dev/test = {counts['train']}/{counts['dev']}/{counts['test']}, "
        f"seed {seed}, config hash {config.hash()})"
    )


def _resolve_format_names(names: tuple[str, ...]) -> list[FormatKind]:
    if any(n == "all" for n in names):
        return [spec.kind for spec in builtin_formats()]
    kinds = []
    for name in names:
        try:
            kinds.append(FormatKind(name))
        except ValueError:
            valid = ", ".join(k.value for k in FormatKind)
            raise click.UsageError(f"unknown format {name!r}; expected one of: {valid}, all")
    return kinds


def _single_corpus_name(instances: list[PairInstance]) -> str:
    names = sorted({inst.corpus_name for inst in instances})
    return "+".join(names)


def _echo_report(report: EvalReport, heading: str) -> None:
    click.echo(heading)
    click.echo(
        f"  accuracy {report.accuracy:.3f}  "
        f"({report.correct}/{report.total} correct, {report.invalid} invalid)"
    )
    for distance in sorted(report.by_distance):
        cell = report.by_distance[distance]
        click.echo(
            f"  distance {distance}: accuracy {cell.accuracy:.3f} "
            f"({cell.correct}/{cell.total})"
        )


@cli.command("baseline")
@click.option("--gold", "gold_paths", required=True, multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--budget", "token_budget", type=int, default=None,
              help="Score truncated texts with this whitespace-token budget instead of full texts.")
@click.option("--report-file", type=click.Path(dir_okay=False), default=None,
              help="Append machine-readable reports (one JSON object per line).")
def cmd_baseline(
    gold_paths: tuple[str, ...],
    out_dir: str,
    token_budget: int | None,
    report_file: str | None,
) -> None:
    """Emit and score grade-level-formula predictions for gold files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ranker = FleschKincaidRanker(token_budget_per_text=token_budget)
    reports = []
    for gold_path in gold_paths:
        instances = read_gold_file(gold_path)
        if not instances:
            raise DataError(f"{gold_path}: empty gold file, nothing to score")
        verdicts = ranker.predict(instances)
        records = [
            PredictionRecord(
                instance_id=inst.instance_id,
                raw_output=v.value if v is not None else "invalid",
                format_kind=f"{BASELINE_PREFIX}fkgl",
            )
            for inst, v in zip(instances, verdicts)
        ]
        stem = Path(gold_path).name.removesuffix(".gold")
        pred_path = out / f"{stem}.baseline-fkgl.preds"
        write_prediction_file(pred_path, records)
        report = score(
            records,
            instances,
            system="Flesch-Kincaid",
            train_corpus="None",
            test_corpus=_single_corpus_name(instances),
        )
        reports.append(report)
        _echo_report(report, f"{pred_path.name} [{report.test_corpus}]")
    if report_file:
        _append_reports(report_file, reports)
    if len(reports) > 1:
        click.echo()
        click.echo(matrix(reports).to_text())


def _append_reports(report_file: str, reports: list[EvalReport]) -> None:
    path = Path(report_file)
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    with path.open("a", encoding="utf-8", newline="\n") as fh:
        if existing and not existing.endswith("\n"):
            fh.write("\n")
        import json

        for report in reports:
            fh.write(json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


@cli.command("evaluate")
@click.option("--gold", "gold_paths", required=True, multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--pred", "pred_paths", required=True, multiple=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--system", default="model", show_default=True,
              help="Row label for non-baseline prediction files.")
@click.option("--train-corpus", default="None", show_default=True,
              help="Training data tag for non-baseline prediction files.")
@click.option("--report-file", type=click.Path(dir_okay=False), default=None)
def cmd_evaluate(
    gold_paths: tuple[str, ...],
    pred_paths: tuple[str, ...],
    system: str,
    train_corpus: str,
    report_file: str | None,
) -> None:
    """Score prediction files against gold files and print the matrix.

    Every prediction file (or per-epoch group within one) must cover one
    gold file completely; ids pair each prediction file to its gold file
    automatically.
    """
    gold_sets = []
    for gold_path in gold_paths:
        instances = read_gold_file(gold_path)
        if not instances:
            raise DataError(f"{gold_path}: empty gold file")
        gold_sets.append((gold_path, {i.instance_id: i for i in instances}))

    all_reports: list[EvalReport] = []
    for pred_path in pred_paths:
        records = read_prediction_file(pred_path)
        if not records:
            raise DataError(f"{pred_path}: empty prediction file")
        groups: dict[int | None, list[PredictionRecord]] = {}
        for record in records:
            groups.setdefault(record.epoch, []).append(record)

        per_epoch: list[EvalReport] = []
        for epoch in sorted(groups, key=lambda e: (e is not None, e)):
            group = groups[epoch]
            gold_map = _gold_for(group[0].instance_id, gold_sets, pred_path)
            is_baseline = group[0].format_kind.startswith(BASELINE_PREFIX)
            report = score(
                group,
                list(gold_map.values()),
                system="Flesch-Kincaid" if is_baseline else system,
                train_corpus="None" if is_baseline else train_corpus,
                test_corpus=_single_corpus_name(list(gold_map.values())),
            )
            per_epoch.append(report)
            suffix = f" epoch {epoch}" if epoch is not None else ""
            _echo_report(report, f"{Path(pred_path).name}{suffix} [{report.test_corpus}]")
        if len(per_epoch) > 1:
            chosen_epoch, chosen = best_epoch(per_epoch)
            click.echo(
                f"  best epoch: {format_accuracy(chosen.accuracy, chosen_epoch)}"
            )
            all_reports.append(chosen)
        else:
            all_reports.extend(per_epoch)

    if report_file:
        _append_reports(report_file, all_reports)
    click.echo()
    click.echo(matrix(all_reports).to_text())


def _gold_for(instance_id: str, gold_sets, pred_path: str) -> dict[str, PairInstance]:
    for _, gold_map in gold_sets:
        if instance_id in gold_map:
            return gold_map
    raise DataError(
        f"{pred_path}: instance {instance_id} not found in any gold file"
    )


def main(argv: list[str] | None = None) -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        sys.exit(2)
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
