"""Corpus ingestion: on-disk layouts to normalized corpora.

Three adapters cover the supported layouts:

* ``generic_rows`` -- one JSON object per line with ``id``, ``body``,
  ``level`` and, for parallel corpora, ``slug_id``.  The interchange
  format for anything user-prepared (Cambridge exams export, a Common
  Core scrape, ...).
* ``osen_dirs`` -- the OneStopEnglish layout: three sibling directories
  whose names contain ``Ele`` / ``Int`` / ``Adv``; files sharing a stem
  across the directories form a slug.
* ``newsela_meta`` -- a Newsela release: ``articles_metadata.csv``
  describing per-slug rewrites, article text files alongside.  Nothing
  here downloads Newsela; the licensed data must already be on disk.

Levels are mapped to integer ranks through a per-corpus mapping table;
built-in maps cover OneStopEnglish, CEFR, and plain numeric grades.
"""

from __future__ import annotations

import csv
import logging
import re
from pathlib import Path

from .fileio import read_jsonl, read_level_map
from .records import (
    DataError,
    DistinctCorpus,
    ParallelCorpus,
    ReadingLevel,
    Slug,
    TextRecord,
    normalize_text,
)

logger = logging.getLogger(__name__)

PARALLEL = "parallel"
DISTINCT = "distinct"
CORPUS_KINDS = (PARALLEL, DISTINCT)

ADAPTERS = ("generic_rows", "osen_dirs", "newsela_meta")

OSEN_LEVEL_MAP = {"ELE": 0, "INT": 1, "ADV": 2}
CEFR_LEVEL_MAP = {"A2": 0, "B1": 1, "B2": 2, "C1": 3, "C2": 4}
#: name -> builtin map; "numeric" means labels already are integer ranks.
BUILTIN_LEVEL_MAPS = {"osen": OSEN_LEVEL_MAP, "cefr": CEFR_LEVEL_MAP, "numeric": None}

_OSEN_DIR_HINTS = ("ele", "int", "adv")
_OSEN_STEM_SUFFIX = re.compile(r"[-_ ](ele|int|adv)$", re.IGNORECASE)


def resolve_level_map(spec: str | Path | dict[str, int] | None) -> dict[str, int] | None:
    """Accept a builtin map name, a ``label<TAB>rank`` file path, or a dict."""
    if spec is None or isinstance(spec, dict):
        return spec
    name = str(spec)
    if name in BUILTIN_LEVEL_MAPS:
        return BUILTIN_LEVEL_MAPS[name]
    path = Path(name)
    if not path.exists():
        raise DataError(
            f"unknown level map {name!r}: not a builtin "
            f"({', '.join(BUILTIN_LEVEL_MAPS)}) and no such file"
        )
    return read_level_map(path)


def make_level(label: str, level_map: dict[str, int] | None, record_id: str) -> ReadingLevel:
    """Map a label to its rank; unknown labels are hard errors."""
    label = str(label).strip()
    if level_map is None:
        try:
            return ReadingLevel(rank=int(float(label)), label=label)
        except ValueError:
            raise DataError(
                f"record {record_id!r}: level {label!r} is not numeric and no "
                "level map was given"
            ) from None
    if label in level_map:
        return ReadingLevel(rank=level_map[label], label=label)
    folded = {k.casefold(): v for k, v in level_map.items()}
    if label.casefold() in folded:
        return ReadingLevel(rank=folded[label.casefold()], label=label)
    raise DataError(
        f"record {record_id!r}: unknown level label {label!r} "
        f"(mapping knows {sorted(level_map)})"
    )


def _warn_skipped(skipped: list[str], corpus_name: str) -> None:
    if skipped:
        logger.warning(
            "corpus %s: skipped %d empty-body record(s): %s",
            corpus_name,
            len(skipped),
            ", ".join(skipped[:5]) + ("..." if len(skipped) > 5 else ""),
        )


def ingest_generic_rows(
    source: Path | str,
    corpus_kind: str,
    corpus_name: str,
    level_map: dict[str, int] | None = None,
) -> ParallelCorpus | DistinctCorpus:
    records: list[TextRecord] = []
    skipped: list[str] = []
    for lineno, obj in read_jsonl(source):
        where = f"{source}:{lineno}"
        for key in ("id", "body", "level"):
            if key not in obj:
                raise DataError(f"{where}: missing key {key!r}")
        slug_id = obj.get("slug_id")
        if corpus_kind == PARALLEL and not slug_id:
            raise DataError(f"{where}: parallel corpus rows require a slug_id")
        if corpus_kind == DISTINCT and slug_id:
            raise DataError(f"{where}: distinct corpus rows must not carry a slug_id")
        body = normalize_text(obj["body"])
        if not body:
            skipped.append(str(obj["id"]))
            continue
        records.append(
            TextRecord(
                id=str(obj["id"]),
                body=body,
                level=make_level(obj["level"], level_map, str(obj["id"])),
                corpus_name=corpus_name,
                slug_id=str(slug_id) if slug_id else None,
            )
        )
    _warn_skipped(skipped, corpus_name)
    if corpus_kind == DISTINCT:
        return DistinctCorpus(name=corpus_name, records=tuple(records))
    return ParallelCorpus(name=corpus_name, slugs=_group_slugs(records))


def _group_slugs(records: list[TextRecord]) -> tuple[Slug, ...]:
    order: list[str] = []
    members: dict[str, list[TextRecord]] = {}
    for record in records:
        assert record.slug_id is not None
        if record.slug_id not in members:
            order.append(record.slug_id)
            members[record.slug_id] = []
        members[record.slug_id].append(record)
    return tuple(Slug(slug_id=s, members=tuple(members[s])) for s in order)


def _find_osen_level_dirs(root: Path) -> dict[str, Path]:
    """Locate the Ele/Int/Adv directories under (or at) ``root``."""
    candidates = [p for p in sorted(root.iterdir()) if p.is_dir()] if root.is_dir() else []
    found: dict[str, Path] = {}
    for hint in _OSEN_DIR_HINTS:
        matches = [p for p in candidates if hint in p.name.lower()]
        if len(matches) == 1:
            found[hint] = matches[0]
    if len(found) != 3:
        raise DataError(
            f"{root}: expected three sibling directories with 'Ele', 'Int', 'Adv' "
            f"in their names, found {sorted(p.name for p in candidates)}"
        )
    return found


def _read_text_file(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8-sig")
    except UnicodeDecodeError:
        # a handful of corpus files in the wild carry stray cp1252 bytes
        return path.read_text(encoding="cp1252")


def ingest_osen_dirs(
    source: Path | str,
    corpus_name: str = "osen",
    level_map: dict[str, int] | None = None,
) -> ParallelCorpus:
    """Ingest a OneStopEnglish-style directory triple as a parallel corpus.

    Each ``*.txt`` directly inside a level directory is one text; its
    slug is the filename stem with any trailing ``-ele/-int/-adv``
    marker removed.  Slug members are ordered easiest-first.
    """
    level_map = OSEN_LEVEL_MAP if level_map is None else level_map
    root = Path(source)
    if not root.exists():
        raise DataError(f"no such corpus directory: {root}")
    level_dirs = _find_osen_level_dirs(root)

    label_for_hint = {h: h.upper() for h in _OSEN_DIR_HINTS}
    slugs_members: dict[str, list[TextRecord]] = {}
    order: list[str] = []
    skipped: list[str] = []
    for hint in _OSEN_DIR_HINTS:  # easiest-first file walk
        directory = level_dirs[hint]
        for path in sorted(directory.glob("*.txt")):
            stem = _OSEN_STEM_SUFFIX.sub("", path.stem)
            body = normalize_text(_read_text_file(path))
            record_id = path.stem
            if not body:
                skipped.append(record_id)
                continue
            record = TextRecord(
                id=record_id,
                body=body,
                level=make_level(label_for_hint[hint], level_map, record_id),
                corpus_name=corpus_name,
                slug_id=stem,
            )
            if stem not in slugs_members:
                order.append(stem)
                slugs_members[stem] = []
            slugs_members[stem].append(record)
    _warn_skipped(skipped, corpus_name)

    slugs = tuple(
        Slug(
            slug_id=stem,
            members=tuple(sorted(slugs_members[stem], key=lambda r: r.level.rank)),
        )
        for stem in sorted(order)
    )
    return ParallelCorpus(name=corpus_name, slugs=slugs)


def ingest_newsela_meta(
    source: Path | str,
    corpus_name: str = "news",
    level_map: dict[str, int] | None = None,
    language: str = "en",
) -> ParallelCorpus:
    """Ingest a Newsela release via its ``articles_metadata.csv``.

    ``source`` is the metadata CSV (or a directory containing it); the
    article files named in its ``filename`` column are read from an
    ``articles/`` directory alongside.  Grade levels act as ranks
    directly unless a level map says otherwise.
    """
    source = Path(source)
    meta_path = source / "articles_metadata.csv" if source.is_dir() else source
    if not meta_path.exists():
        raise DataError(f"no metadata file at {meta_path}")
    articles_dir = meta_path.parent / "articles"

    slugs_members: dict[str, list[TextRecord]] = {}
    order: list[str] = []
    skipped: list[str] = []
    with meta_path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"slug", "language", "grade_level", "filename"}
        missing = required - set(reader.fieldnames or ())
        if missing:
            raise DataError(f"{meta_path}: metadata lacks columns {sorted(missing)}")
        for row in reader:
            if row["language"] != language:
                continue
            filename = row["filename"]
            article = articles_dir / filename
            if not article.exists():
                raise DataError(f"article file missing: {article}")
            body = normalize_text(_read_text_file(article))
            if not body:
                skipped.append(filename)
                continue
            slug_id = row["slug"]
            record = TextRecord(
                id=filename,
                body=body,
                level=make_level(row["grade_level"], level_map, filename),
                corpus_name=corpus_name,
                slug_id=slug_id,
            )
            if slug_id not in slugs_members:
                order.append(slug_id)
                slugs_members[slug_id] = []
            slugs_members[slug_id].append(record)
    _warn_skipped(skipped, corpus_name)

    slugs = tuple(
        Slug(
            slug_id=s,
            members=tuple(sorted(slugs_members[s], key=lambda r: (r.level.rank, r.id))),
        )
        for s in order
    )
    return ParallelCorpus(name=corpus_name, slugs=slugs)


def ingest(
    source: Path | str,
    corpus_kind: str,
    adapter: str,
    corpus_name: str,
    level_map: str | Path | dict[str, int] | None = None,
) -> ParallelCorpus | DistinctCorpus:
    """Dispatch to an adapter and return the normalized corpus."""
    if corpus_kind not in CORPUS_KINDS:
        raise ValueError(f"unknown corpus kind {corpus_kind!r}; expected one of {CORPUS_KINDS}")
    if adapter not in ADAPTERS:
        raise ValueError(f"unknown adapter {adapter!r}; expected one of {ADAPTERS}")
    if not Path(source).exists():
        raise DataError(f"no such corpus source: {source}")
    mapping = resolve_level_map(level_map)

    if adapter == "generic_rows":
        return ingest_generic_rows(source, corpus_kind, corpus_name, mapping)
    if corpus_kind != PARALLEL:
        raise ValueError(f"adapter {adapter!r} produces a parallel corpus; got kind {corpus_kind!r}")
    if adapter == "osen_dirs":
        return ingest_osen_dirs(source, corpus_name, mapping)
    return ingest_newsela_meta(source, corpus_name, mapping)
