"""File formats: one JSON object per line, UTF-8, LF line endings.

Three record shapes flow between processes:

* gold files: self-contained pair instances (ids, bodies, levels), so a
  baseline or a report can be computed from the file alone;
* rendered files: ``instance_id``, ``input``, ``target``, ``format``,
  ``truncated`` -- the contract consumed by a trainer;
* prediction files: ``instance_id``, ``raw_output``, ``format`` and an
  optional ``epoch``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Iterator

from .evaluation import PredictionRecord
from .prompts import FormatKind, RenderedInstance
from .records import DataError, Harder, PairInstance, ReadingLevel, TextRecord


def write_jsonl(path: Path | str, rows: Iterable[dict]) -> int:
    path = Path(path)
    n = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True))
            fh.write("\n")
            n += 1
    return n


def read_jsonl(path: Path | str) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, object) pairs, skipping blank lines."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: not valid JSON: {exc}") from None
            if not isinstance(obj, dict):
                raise DataError(f"{path}:{lineno}: expected an object per line")
            yield lineno, obj


def _require(obj: dict, keys: tuple[str, ...], where: str) -> None:
    missing = [k for k in keys if k not in obj]
    if missing:
        raise DataError(f"{where}: missing keys {missing}")


# -- gold files ---------------------------------------------------------

def _text_to_dict(record: TextRecord) -> dict:
    return {
        "id": record.id,
        "body": record.body,
        "label": record.level.label,
        "rank": record.level.rank,
    }


def _text_from_dict(obj: dict, corpus: str, slug_id: str | None, where: str) -> TextRecord:
    _require(obj, ("id", "body", "label", "rank"), where)
    return TextRecord(
        id=obj["id"],
        body=obj["body"],
        level=ReadingLevel(rank=int(obj["rank"]), label=str(obj["label"])),
        corpus_name=corpus,
        slug_id=slug_id,
    )


def instance_to_dict(instance: PairInstance) -> dict:
    return {
        "instance_id": instance.instance_id,
        "corpus": instance.corpus_name,
        "slug_id": instance.slug_id,
        "gold": instance.gold.value,
        "level_distance": instance.level_distance,
        "text1": _text_to_dict(instance.text1),
        "text2": _text_to_dict(instance.text2),
    }


def instance_from_dict(obj: dict, where: str = "gold record") -> PairInstance:
    _require(obj, ("instance_id", "corpus", "gold", "level_distance", "text1", "text2"), where)
    corpus = obj["corpus"]
    slug_id = obj.get("slug_id")
    return PairInstance(
        instance_id=obj["instance_id"],
        text1=_text_from_dict(obj["text1"], corpus, slug_id, where),
        text2=_text_from_dict(obj["text2"], corpus, slug_id, where),
        gold=Harder(obj["gold"]),
        level_distance=int(obj["level_distance"]),
        slug_id=slug_id,
    )


def write_gold_file(path: Path | str, instances: Iterable[PairInstance]) -> int:
    return write_jsonl(path, (instance_to_dict(i) for i in instances))


def read_gold_file(path: Path | str) -> list[PairInstance]:
    return [instance_from_dict(obj, f"{path}:{lineno}") for lineno, obj in read_jsonl(path)]


# -- rendered instance files --------------------------------------------

def rendered_to_dict(rendered: RenderedInstance) -> dict:
    return {
        "instance_id": rendered.instance_id,
        "input": rendered.input,
        "target": rendered.target,
        "format": rendered.format_kind.value,
        "truncated": rendered.truncated,
    }


def rendered_from_dict(obj: dict, where: str = "rendered record") -> RenderedInstance:
    _require(obj, ("instance_id", "input", "target", "format", "truncated"), where)
    return RenderedInstance(
        instance_id=obj["instance_id"],
        input=obj["input"],
        target=obj["target"],
        format_kind=FormatKind(obj["format"]),
        truncated=bool(obj["truncated"]),
    )


def write_rendered_file(path: Path | str, rendered: Iterable[RenderedInstance]) -> int:
    return write_jsonl(path, (rendered_to_dict(r) for r in rendered))


def read_rendered_file(path: Path | str) -> list[RenderedInstance]:
    return [rendered_from_dict(obj, f"{path}:{lineno}") for lineno, obj in read_jsonl(path)]


# -- prediction files ----------------------------------------------------

def prediction_to_dict(record: PredictionRecord) -> dict:
    obj = {
        "instance_id": record.instance_id,
        "raw_output": record.raw_output,
        "format": record.format_kind,
    }
    if record.epoch is not None:
        obj["epoch"] = record.epoch
    return obj


def prediction_from_dict(obj: dict, where: str = "prediction record") -> PredictionRecord:
    _require(obj, ("instance_id", "raw_output", "format"), where)
    epoch = obj.get("epoch")
    return PredictionRecord(
        instance_id=obj["instance_id"],
        raw_output=obj["raw_output"],
        format_kind=obj["format"],
        epoch=int(epoch) if epoch is not None else None,
    )


def write_prediction_file(path: Path | str, records: Iterable[PredictionRecord]) -> int:
    return write_jsonl(path, (prediction_to_dict(r) for r in records))


def read_prediction_file(path: Path | str) -> list[PredictionRecord]:
    return [prediction_from_dict(obj, f"{path}:{lineno}") for lineno, obj in read_jsonl(path)]


# -- level maps and manifests --------------------------------------------

def read_level_map(path: Path | str) -> dict[str, int]:
    """Parse a two-column ``label<TAB>rank`` file."""
    path = Path(path)
    mapping: dict[str, int] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DataError(f"{path}:{lineno}: expected 'label<TAB>rank'")
        label, rank = parts
        if label in mapping:
            raise DataError(f"{path}:{lineno}: duplicate label {label!r}")
        try:
            mapping[label] = int(rank)
        except ValueError:
            raise DataError(f"{path}:{lineno}: rank {rank!r} is not an integer") from None
    if len(set(mapping.values())) != len(mapping):
        raise DataError(f"{path}: ranks must be distinct (label-rank mapping is a bijection)")
    return mapping


def write_level_map(path: Path | str, mapping: dict[str, int]) -> None:
    lines = [f"{label}\t{rank}" for label, rank in sorted(mapping.items(), key=lambda kv: kv[1])]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def config_hash(config: dict) -> str:
    """Stable hash of a configuration mapping."""
    canonical = json.dumps(config, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def write_manifest(path: Path | str, manifest: dict) -> None:
    Path(path).write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )


def read_manifest(path: Path | str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
