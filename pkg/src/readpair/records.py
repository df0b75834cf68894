"""Core record types for pairwise readability corpora.

A *parallel* corpus groups rewrites of the same content at different
reading levels into slugs; a *distinct* corpus is a flat collection of
independently-levelled texts.  Both reduce to ordered ``PairInstance``
objects carrying a gold "which text is harder?" answer.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum


class DataError(ValueError):
    """Raised when corpus or prediction data violates a hard contract."""


class Harder(Enum):
    """Answer space for "which of the two texts is harder?"."""

    TEXT1 = "text1"
    TEXT2 = "text2"

    def flipped(self) -> "Harder":
        return Harder.TEXT2 if self is Harder.TEXT1 else Harder.TEXT1


def normalize_text(raw: str) -> str:
    """Normalize raw corpus text to a single-line form.

    Strips any leading BOM, normalizes line endings, and collapses every
    run of whitespace to a single space.  Raw corpora mix formats, and
    prompt templates embed texts inline, so bodies must be one-liners.
    """
    text = raw.lstrip("﻿")
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return " ".join(text.split())


@dataclass(frozen=True, order=True)
class ReadingLevel:
    """A readability level: comparable rank plus the original label."""

    rank: int
    label: str = ""


@dataclass(frozen=True)
class TextRecord:
    """One text with its reading level.

    ``slug_id`` is set iff the record came from a parallel corpus.
    """

    id: str
    body: str
    level: ReadingLevel
    corpus_name: str
    slug_id: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DataError("text record requires a non-empty id")
        if not self.body.strip():
            raise DataError(f"text record {self.id!r} has an empty body")


@dataclass(frozen=True)
class Slug:
    """Ordered rewrites of one content item at different levels."""

    slug_id: str
    members: tuple[TextRecord, ...]

    def __post_init__(self) -> None:
        for m in self.members:
            if m.slug_id != self.slug_id:
                raise DataError(
                    f"record {m.id!r} carries slug_id {m.slug_id!r}, "
                    f"expected {self.slug_id!r}"
                )


@dataclass(frozen=True)
class ParallelCorpus:
    name: str
    slugs: tuple[Slug, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for slug in self.slugs:
            if slug.slug_id in seen:
                raise DataError(f"duplicate slug_id {slug.slug_id!r} in corpus {self.name!r}")
            seen.add(slug.slug_id)
        _check_unique_ids(self.records, self.name)

    @property
    def records(self) -> tuple[TextRecord, ...]:
        return tuple(m for slug in self.slugs for m in slug.members)


@dataclass(frozen=True)
class DistinctCorpus:
    name: str
    records: tuple[TextRecord, ...]

    def __post_init__(self) -> None:
        _check_unique_ids(self.records, self.name)


def _check_unique_ids(records: tuple[TextRecord, ...], corpus_name: str) -> None:
    seen: set[str] = set()
    for r in records:
        if r.id in seen:
            raise DataError(f"duplicate record id {r.id!r} in corpus {corpus_name!r}")
        seen.add(r.id)


def pair_instance_id(corpus_name: str, text1_id: str, text2_id: str) -> str:
    """Stable id for an ordered pair, reproducible across processes.

    Prediction files must join back to gold, so this must not depend on
    process state (no salted ``hash()``).
    """
    key = "\x1f".join((corpus_name, text1_id, text2_id)).encode("utf-8")
    return hashlib.sha256(key).hexdigest()[:16]


@dataclass(frozen=True)
class PairInstance:
    """Ordered pair of texts with the gold "which is harder" answer.

    ``slug_id`` is the originating slug for parallel-corpus pairs and
    ``None`` for distinct-corpus pairs.
    """

    instance_id: str
    text1: TextRecord
    text2: TextRecord
    gold: Harder
    level_distance: int
    slug_id: str | None = None

    def __post_init__(self) -> None:
        r1, r2 = self.text1.level.rank, self.text2.level.rank
        if r1 == r2:
            raise DataError(
                f"pair {self.instance_id}: texts share rank {r1}; no gold answer exists"
            )
        expected = Harder.TEXT1 if r1 > r2 else Harder.TEXT2
        if self.gold is not expected:
            raise DataError(f"pair {self.instance_id}: gold contradicts the level ranks")
        if self.level_distance != abs(r1 - r2):
            raise DataError(f"pair {self.instance_id}: level_distance must be |rank1 - rank2|")
        if self.text1.corpus_name != self.text2.corpus_name:
            raise DataError(f"pair {self.instance_id}: texts come from different corpora")

    @classmethod
    def from_records(
        cls, text1: TextRecord, text2: TextRecord, slug_id: str | None = None
    ) -> "PairInstance":
        """Build a pair, deriving gold, distance, and the stable id."""
        r1, r2 = text1.level.rank, text2.level.rank
        return cls(
            instance_id=pair_instance_id(text1.corpus_name, text1.id, text2.id),
            text1=text1,
            text2=text2,
            gold=Harder.TEXT1 if r1 > r2 else Harder.TEXT2,
            level_distance=abs(r1 - r2),
            slug_id=slug_id,
        )

    @property
    def corpus_name(self) -> str:
        return self.text1.corpus_name

    @property
    def is_parallel(self) -> bool:
        return self.slug_id is not None
