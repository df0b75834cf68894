"""Shared fixtures: synthetic corpora and optional real-data discovery.

Real corpora live under ``data/`` at the repo root (override with the
``READPAIR_DATA`` environment variable); tests that need them skip with
an explicit message when the files are absent.
"""

from __future__ import annotations

import os
import random
from pathlib import Path

import pytest

from readpair import (
    DistinctCorpus,
    ParallelCorpus,
    ReadingLevel,
    Slug,
    TextRecord,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = Path(os.environ.get("READPAIR_DATA", REPO_ROOT / "data"))

WORDS = (
    "river market garden window mountain teacher letter journey bridge "
    "morning doctor harvest shadow village engine bottle memory signal "
    "planet understanding approximately infrastructure nevertheless "
    "communication extraordinary responsibility"
).split()


def make_body(rng: random.Random, length: int = 12) -> str:
    words = [rng.choice(WORDS) for _ in range(max(3, length))]
    return " ".join(words).capitalize() + "."


def make_record(
    record_id: str,
    rank: int,
    corpus: str = "syn",
    slug: str | None = None,
    body: str | None = None,
    label: str | None = None,
) -> TextRecord:
    return TextRecord(
        id=record_id,
        body=body or f"Synthetic text {record_id} at level {rank}.",
        level=ReadingLevel(rank=rank, label=label if label is not None else str(rank)),
        corpus_name=corpus,
        slug_id=slug,
    )


def make_parallel(slug_rank_lists: list[list[int]], corpus: str = "syn") -> ParallelCorpus:
    """Build a parallel corpus from per-slug rank lists."""
    slugs = []
    for s, ranks in enumerate(slug_rank_lists):
        slug_id = f"slug{s}"
        members = tuple(
            make_record(f"{slug_id}-m{m}", rank, corpus=corpus, slug=slug_id)
            for m, rank in enumerate(ranks)
        )
        slugs.append(Slug(slug_id=slug_id, members=members))
    return ParallelCorpus(name=corpus, slugs=tuple(slugs))


def make_distinct(ranks: list[int], corpus: str = "syn") -> DistinctCorpus:
    records = tuple(make_record(f"r{i}", rank, corpus=corpus) for i, rank in enumerate(ranks))
    return DistinctCorpus(name=corpus, records=records)


def random_parallel(rng: random.Random, max_slugs: int = 6, max_size: int = 5) -> ParallelCorpus:
    slugs = []
    for _ in range(rng.randint(1, max_slugs)):
        size = rng.randint(1, max_size)
        slugs.append([rng.randint(0, 4) for _ in range(size)])
    return make_parallel(slugs)


def random_distinct(rng: random.Random, max_records: int = 30) -> DistinctCorpus:
    n = rng.randint(0, max_records)
    return make_distinct([rng.randint(0, 5) for _ in range(n)])


def require_data(relative: str, hint: str) -> Path:
    path = DATA_DIR / relative
    if not path.exists():
        pytest.skip(f"SKIP: {relative} not found under {DATA_DIR} ({hint})")
    return path


@pytest.fixture(scope="session")
def osen_dir() -> Path:
    return require_data(
        "onestopenglish",
        "fetch with scripts/fetch_data.py (OneStopEnglish is freely available)",
    )


@pytest.fixture(scope="session")
def camb_rows() -> Path:
    return require_data(
        "camb/cambridge_exams.jsonl",
        "fetch with scripts/fetch_data.py (Cambridge exams readability texts)",
    )
